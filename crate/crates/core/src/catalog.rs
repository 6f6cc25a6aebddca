//! Named worked examples with machine-checked expected facts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GraphJson, Mult, MultiGraph, DEFAULT_VERTEX_CAP};
use crate::poset::{order_iso, FinitePoset, PosetJson};
use crate::property::Property;
use crate::ray::{
    structural_iso, NodeKind, RayPoset, RayPosetJson, RelationKind, DEFAULT_GUARD_DEPTH,
};
use crate::spectrum::{build_ep, SpecPoset};

pub const EXAMPLE_NAMES: [&str; 6] = [
    "EPExample",
    "APExample",
    "RPExample",
    "SpecGrid",
    "DCvsDCplus",
    "UnionEgTrunc",
];

#[derive(Clone, Debug)]
pub enum ExampleObject {
    Poset(FinitePoset),
    Graph(MultiGraph),
    Ray(RayPoset),
}

impl ExampleObject {
    pub fn to_dot(&self) -> String {
        match self {
            ExampleObject::Poset(p) => p.to_dot(),
            ExampleObject::Graph(g) => g.to_dot(),
            ExampleObject::Ray(r) => r.to_dot(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            ExampleObject::Poset(_) => "poset",
            ExampleObject::Graph(_) => "graph",
            ExampleObject::Ray(_) => "rayposet",
        }
    }

    fn json_value(&self) -> serde_json::Value {
        let v = match self {
            ExampleObject::Poset(p) => serde_json::to_value(PosetJson::from(p)),
            ExampleObject::Graph(g) => serde_json::to_value(GraphJson::from(g)),
            ExampleObject::Ray(r) => serde_json::to_value(RayPosetJson::from(r)),
        };
        v.expect("example object serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct PinnedExample {
    pub name: &'static str,
    pub object: ExampleObject,
    pub assertions: Vec<Assertion>,
}

impl PinnedExample {
    pub fn all_hold(&self) -> bool {
        self.assertions.iter().all(|a| a.holds)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            name: &'a str,
            kind: &'a str,
            object: serde_json::Value,
            assertions: &'a [Assertion],
        }
        serde_json::to_string_pretty(&Out {
            name: self.name,
            kind: self.object.kind(),
            object: self.object.json_value(),
            assertions: &self.assertions,
        })
        .expect("example serializes")
    }
}

fn check(statement: &str, holds: bool) -> Assertion {
    Assertion {
        statement: statement.to_string(),
        holds,
    }
}

/// Diamond `s < q < p`, `s < r < p`.
pub fn diamond() -> FinitePoset {
    FinitePoset::new(
        &["p", "q", "r", "s"],
        &[("s", "q"), ("s", "r"), ("q", "p"), ("r", "p")],
    )
    .expect("diamond is a poset")
}

/// `{0} ∪ {1/n}`: point `0` below ray `S`.
pub fn zero_and_ray() -> RayPoset {
    RayPoset::new(
        &[("0", NodeKind::Point), ("S", NodeKind::Ray)],
        &[("0", "S", RelationKind::PointBelowRay)],
    )
    .expect("valid presentation")
}

/// Spectrum shape of the infinite grid graph: two incomparable descending
/// chains over a common bottom.
pub fn spec_grid() -> RayPoset {
    RayPoset::new(
        &[
            ("0", NodeKind::Point),
            ("M", NodeKind::Ray),
            ("N", NodeKind::Ray),
        ],
        &[
            ("0", "M", RelationKind::PointBelowRay),
            ("0", "N", RelationKind::PointBelowRay),
        ],
    )
    .expect("valid presentation")
}

/// Chains `r_i < q_i` with glbs `r < q`; `R` and `Q` hold the chains.
pub fn dc_vs_strong_dc() -> RayPoset {
    RayPoset::new(
        &[
            ("r", NodeKind::Point),
            ("q", NodeKind::Point),
            ("R", NodeKind::Ray),
            ("Q", NodeKind::Ray),
        ],
        &[
            ("r", "R", RelationKind::PointBelowRay),
            ("q", "Q", RelationKind::PointBelowRay),
            ("R", "Q", RelationKind::Sync),
            ("r", "q", RelationKind::Lt),
        ],
    )
    .expect("valid presentation")
}

/// Finite truncation of the chain-of-primes graph: `u1, u2` feed the chain
/// `v3 -> v2 -> v1`, with an infinite edge to `v3` keeping them non-regular.
pub fn union_eg_trunc() -> MultiGraph {
    MultiGraph::new(
        &["u1", "u2", "v1", "v2", "v3"],
        &[
            ("u1", "v1", Mult::Finite(1)),
            ("u1", "v2", Mult::Finite(1)),
            ("u1", "v3", Mult::Inf),
            ("u2", "v1", Mult::Finite(1)),
            ("u2", "v2", Mult::Finite(1)),
            ("u2", "v3", Mult::Inf),
            ("v3", "v2", Mult::Inf),
            ("v2", "v1", Mult::Inf),
        ],
    )
    .expect("valid graph")
}

pub fn example(name: &str) -> Result<PinnedExample> {
    let (name, object, assertions) = match name {
        "EPExample" => ep_example(),
        "APExample" => ap_example(),
        "RPExample" => rp_example(),
        "SpecGrid" => spec_grid_example(),
        "DCvsDCplus" => dc_example(),
        "UnionEgTrunc" => union_example()?,
        other => return Err(Error::UnknownExample(other.to_string())),
    };
    Ok(PinnedExample {
        name,
        object,
        assertions,
    })
}

type Parts = (&'static str, ExampleObject, Vec<Assertion>);

fn ep_example() -> Parts {
    let p = diamond();
    let g = build_ep(&p);
    let edges: Vec<(&str, &str, Mult)> = g
        .edges()
        .map(|(s, d, m)| (g.label(s), g.label(d), m))
        .collect();
    let expected = [
        ("v_p", "v_q"),
        ("v_p", "v_r"),
        ("v_p", "v_s"),
        ("v_q", "v_s"),
        ("v_r", "v_s"),
    ];
    let exact = edges.len() == expected.len()
        && expected
            .iter()
            .all(|&(a, b)| edges.contains(&(a, b, Mult::Inf)));
    let spec_iso = SpecPoset::new(&g, DEFAULT_VERTEX_CAP)
        .map(|sp| order_iso(sp.as_finite(), &p).is_some())
        .unwrap_or(false);
    (
        "EPExample",
        ExampleObject::Graph(g),
        vec![
            check(
                "E_P has exactly the five infinite edges p>q, p>r, p>s, q>s, r>s",
                exact,
            ),
            check(
                "spectrum of E_P is order-isomorphic to the diamond",
                spec_iso,
            ),
        ],
    )
}

fn ap_example() -> Parts {
    let p = zero_and_ray();
    let (a, details) = p.apply_a();
    let one_point = details.added.len() == 1 && a.len() == p.len() + 1;
    let x = details.added.first().map(|&(_, x)| x);
    let between = x.is_some_and(|x| {
        a.relation(0, x) == Some(RelationKind::Lt)
            && a.relation(x, 1) == Some(RelationKind::PointBelowRay)
    });
    (
        "APExample",
        ExampleObject::Ray(p),
        vec![
            check("A(P) adds exactly one point", one_point),
            check("0 < x < every ray element in A(P)", between),
        ],
    )
}

fn rp_example() -> Parts {
    let p = zero_and_ray();
    let r = p.apply_r();
    let removes_zero = r
        .as_ref()
        .is_ok_and(|(_, removed)| removed == &["0".to_string()]);
    let round_trip = r.as_ref().is_ok_and(|(s, _)| {
        structural_iso(&s.apply_a().0, &p, DEFAULT_GUARD_DEPTH).is_some_and(|i| i.guard_ok)
    });
    let s_fixed = r.as_ref().is_ok_and(|(s, _)| {
        s.apply_r()
            .is_ok_and(|(t, removed)| removed.is_empty() && &t == s)
    });
    (
        "RPExample",
        ExampleObject::Ray(p),
        vec![
            check("R(P) removes exactly {0}", removes_zero),
            check("A(R(P)) is isomorphic to P", round_trip),
            check("R(S) = S", s_fixed),
        ],
    )
}

fn spec_grid_example() -> Parts {
    let p = spec_grid();
    let dc = p.check_property(Property::Dc);
    let witness_ok = matches!(
        &dc.witness,
        Some(crate::ray::Witness::Detached { ray, element }) if ray == "M" && element == "N[0]"
    );
    let not_realized = p
        .apply_r()
        .map(|(r, _)| structural_iso(&r.apply_a().0, &p, DEFAULT_GUARD_DEPTH).is_none())
        .unwrap_or(false);
    (
        "SpecGrid",
        ExampleObject::Ray(p.clone()),
        vec![
            check("GLB holds", p.check_property(Property::Glb).holds),
            check("DC fails", !dc.holds),
            check("DC witness is (M, N[0])", witness_ok),
            check("A(R(P)) is not isomorphic to P", not_realized),
        ],
    )
}

fn dc_example() -> Parts {
    let p = dc_vs_strong_dc();
    let strong = p.check_property(Property::StrongDc);
    let witness_ok = matches!(
        &strong.witness,
        Some(crate::ray::Witness::Detached { ray, element }) if ray == "R" && element == "q"
    );
    let removed = p.removed_elements();
    let r_is_chains =
        removed.len() == 2 && removed.iter().all(|e| p.kind(e.node) == NodeKind::Point);
    (
        "DCvsDCplus",
        ExampleObject::Ray(p.clone()),
        vec![
            check("DC holds", p.check_property(Property::Dc).holds),
            check("StrongDC fails", !strong.holds),
            check("StrongDC witness is (R, q)", witness_ok),
            check("R(P) is the union of the two chains", r_is_chains),
        ],
    )
}

fn union_example() -> Result<Parts> {
    let g = union_eg_trunc();
    let tails = g.maximal_tails(DEFAULT_VERTEX_CAP)?;
    let expected = [
        vec!["u1"],
        vec!["u2"],
        vec!["u1", "u2", "v3"],
        vec!["u1", "u2", "v2", "v3"],
        vec!["u1", "u2", "v1", "v2", "v3"],
    ];
    let mut want = Vec::new();
    for e in &expected {
        want.push(g.vertex_set(e)?);
    }
    want.sort();
    let five = tails == want;
    let sp = SpecPoset::new(&g, DEFAULT_VERTEX_CAP)?;
    let m1 = sp.index_of(g.vertex_set(&["u1"])?.complement(g.len()));
    let m2 = sp.index_of(g.vertex_set(&["u2"])?.complement(g.len()));
    let not_prime = match (m1, m2) {
        (Some(a), Some(b)) => {
            let r = sp.intersect(&[a, b])?;
            let pair = r.mt3_witness.map(|(x, y)| (g.label(x), g.label(y)));
            !r.is_prime && pair == Some(("u1", "u2")) && r.h == g.vertex_set(&["v1", "v2", "v3"])?
        }
        _ => false,
    };
    let chain = ["", "v1", "v1,v2"].iter().all(|s| {
        let labels: Vec<&str> = s.split(',').filter(|x| !x.is_empty()).collect();
        g.vertex_set(&labels)
            .ok()
            .and_then(|h| sp.index_of(h))
            .is_some()
    });
    Ok((
        "UnionEgTrunc",
        ExampleObject::Graph(g),
        vec![
            check("exactly five maximal tails", five),
            check(
                "primes include the chain 0 < <v1> < <v1,v2>",
                chain && sp.len() == 5,
            ),
            check(
                "intersection of the two maximal primes is not prime, MT3 witness (u1, u2)",
                not_prime,
            ),
        ],
    ))
}
