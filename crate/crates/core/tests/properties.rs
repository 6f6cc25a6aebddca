use proptest::prelude::*;

use spectra::graph::{Mult, MultiGraph, VertexSet, DEFAULT_VERTEX_CAP};
use spectra::poset::{apply_a_finite, check_property_finite, order_iso, FinitePoset, DEFAULT_CAP};
use spectra::ray::{is_structural_iso, NodeKind, RelationKind};
use spectra::spectrum::{build_ep, ep_postconditions, SpecPoset};
use spectra::{Error, Property, RayPoset, RealizedElement};

/// Upper-triangular relation on a random permutation.
fn poset_input() -> impl Strategy<Value = (Vec<usize>, Vec<(usize, usize)>)> {
    (1usize..=7).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let k = pairs.len();
        (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), k),
            Just(pairs),
        )
            .prop_map(|(perm, keep, pairs)| {
                let le = pairs
                    .into_iter()
                    .zip(keep)
                    .filter(|&(_, k)| k)
                    .map(|((a, b), _)| (perm[a], perm[b]))
                    .collect();
                (perm, le)
            })
    })
}

fn build_poset(n: usize, le: &[(usize, usize)]) -> FinitePoset {
    FinitePoset::from_indices((0..n).map(|i| format!("x{i}")).collect(), le).unwrap()
}

/// Reflexive transitive closure of `le` by brute force.
fn closure(n: usize, le: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in le {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn mult_strategy() -> impl Strategy<Value = Mult> {
    prop_oneof![
        6 => Just(Mult::Zero),
        2 => Just(Mult::Finite(1)),
        1 => Just(Mult::Finite(2)),
        1 => Just(Mult::Inf),
    ]
}

fn graph_input() -> impl Strategy<Value = Vec<Vec<Mult>>> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(mult_strategy(), n), n)
    })
}

fn build_graph(m: &[Vec<Mult>]) -> MultiGraph {
    let labels: Vec<String> = (0..m.len()).map(|i| format!("w{i}")).collect();
    let mut edges = Vec::new();
    for (s, row) in m.iter().enumerate() {
        for (d, &x) in row.iter().enumerate() {
            if !x.is_zero() {
                edges.push((labels[s].as_str(), labels[d].as_str(), x));
            }
        }
    }
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    MultiGraph::new(&labels, &edges).unwrap()
}

/// Brute-force maximal tails from the raw adjacency matrix.
fn oracle_tails(m: &[Vec<Mult>]) -> Vec<u64> {
    let n = m.len();
    let adj: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).map(move |d| (s, d)))
        .filter(|&(s, d)| !m[s][d].is_zero())
        .collect();
    // reach[u][v]: a path u -> ... -> v, length zero allowed
    let reach = closure(n, &adj);
    let regular = |v: usize| {
        let mut finite = true;
        let mut any = false;
        for x in &m[v] {
            match x {
                Mult::Inf => finite = false,
                Mult::Finite(_) => any = true,
                Mult::Zero => {}
            }
        }
        finite && any
    };
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        let inm = |v: usize| mask >> v & 1 == 1;
        let mt1 = (0..n).all(|v| !inm(v) || (0..n).all(|w| !reach[w][v] || inm(w)));
        let mt2 =
            (0..n).all(|v| !inm(v) || !regular(v) || (0..n).any(|d| !m[v][d].is_zero() && inm(d)));
        let mt3 = (0..n).all(|a| {
            (0..n)
                .all(|b| !inm(a) || !inm(b) || (0..n).any(|y| inm(y) && reach[a][y] && reach[b][y]))
        });
        if mt1 && mt2 && mt3 {
            out.push(mask);
        }
    }
    out
}

/// Ray poset presentations along a random topological order.
fn ray_input() -> impl Strategy<Value = (Vec<bool>, Vec<usize>, Vec<u8>)> {
    (1usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(0u8..4, n * (n - 1) / 2),
        )
    })
}

fn build_ray((is_ray, topo, picks): &(Vec<bool>, Vec<usize>, Vec<u8>)) -> Option<RayPoset> {
    let n = is_ray.len();
    let label = |i: usize| {
        if is_ray[i] {
            format!("R{i}")
        } else {
            format!("p{i}")
        }
    };
    let nodes: Vec<(String, NodeKind)> = (0..n)
        .map(|i| {
            (
                label(i),
                if is_ray[i] {
                    NodeKind::Ray
                } else {
                    NodeKind::Point
                },
            )
        })
        .collect();
    let mut rels = Vec::new();
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            let pick = picks[k];
            k += 1;
            if pick < 2 {
                continue;
            }
            let (lo, hi) = (topo[a], topo[b]);
            let kind = match (is_ray[lo], is_ray[hi]) {
                (false, false) => RelationKind::Lt,
                (false, true) => RelationKind::PointBelowRay,
                (true, false) => RelationKind::RayBelowPoint,
                (true, true) if pick == 2 => RelationKind::Sync,
                (true, true) => RelationKind::All,
            };
            rels.push((label(lo), label(hi), kind));
        }
    }
    match RayPoset::new(&nodes, &rels) {
        Ok(p) => Some(p),
        Err(Error::ClosureConflict { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn finite_poset_order_is_the_closure((perm, le) in poset_input()) {
        let n = perm.len();
        let p = build_poset(n, &le);
        let r = closure(n, &le);
        for (a, row) in r.iter().enumerate() {
            for (b, &x) in row.iter().enumerate() {
                prop_assert_eq!(p.leq(a, b), x);
            }
        }
    }

    #[test]
    fn covers_generate_the_order((perm, le) in poset_input()) {
        let n = perm.len();
        let p = build_poset(n, &le);
        let r = closure(n, p.covers());
        for (a, row) in r.iter().enumerate() {
            for (b, &x) in row.iter().enumerate() {
                prop_assert_eq!(p.leq(a, b), x);
            }
        }
    }

    #[test]
    fn finite_poset_json_round_trip((perm, le) in poset_input()) {
        let p = build_poset(perm.len(), &le);
        prop_assert_eq!(FinitePoset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn finite_posets_are_fixed_by_a((perm, le) in poset_input()) {
        let p = build_poset(perm.len(), &le);
        prop_assert!(check_property_finite(&p, Property::Dcc, DEFAULT_CAP).unwrap());
        prop_assert_eq!(apply_a_finite(&p, DEFAULT_CAP).unwrap(), p);
    }

    #[test]
    fn relabelled_posets_are_isomorphic((perm, le) in poset_input()) {
        let n = perm.len();
        let p = build_poset(n, &le);
        let moved: Vec<(usize, usize)> = le.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let q = build_poset(n, &moved);
        let m = order_iso(&p, &q);
        prop_assert!(m.is_some());
        prop_assert!(m.unwrap().is_order_isomorphism());
    }

    #[test]
    fn ep_postconditions_and_spectrum((perm, le) in poset_input()) {
        let p = build_poset(perm.len(), &le);
        let g = build_ep(&p);
        prop_assert_eq!(ep_postconditions(&p, &g, DEFAULT_VERTEX_CAP).unwrap(), None);
        let sp = SpecPoset::new(&g, DEFAULT_VERTEX_CAP).unwrap();
        prop_assert!(order_iso(sp.as_finite(), &p).is_some());
    }

    #[test]
    fn maximal_tails_match_brute_force(m in graph_input()) {
        let g = build_graph(&m);
        let tails: Vec<u64> = g.maximal_tails(DEFAULT_VERTEX_CAP).unwrap().into_iter().map(|t| t.0).collect();
        prop_assert_eq!(tails, oracle_tails(&m));
    }

    #[test]
    fn closures_are_idempotent(m in graph_input(), seed in any::<u64>()) {
        let g = build_graph(&m);
        let s = VertexSet(seed & VertexSet::full(g.len()).0);
        let h = g.hereditary_saturated_closure(s);
        prop_assert!(s.is_subset(h));
        prop_assert!(g.is_hereditary_saturated(h));
        prop_assert_eq!(g.hereditary_saturated_closure(h), h);
        for t in g.hereditary_saturated_sets(DEFAULT_VERTEX_CAP).unwrap() {
            if s.is_subset(t) {
                prop_assert!(h.is_subset(t));
            }
        }
    }

    #[test]
    fn graph_json_round_trip(m in graph_input()) {
        let g = build_graph(&m);
        prop_assert_eq!(MultiGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn mult_arithmetic(a in mult_strategy(), b in mult_strategy(), c in mult_strategy()) {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * (b * c), (a * b) * c);
        prop_assert_eq!(a + Mult::Zero, a);
        prop_assert_eq!(a + Mult::Inf, Mult::Inf);
    }

    #[test]
    fn realized_order_is_a_partial_order(input in ray_input()) {
        let Some(p) = build_ray(&input) else { return Ok(()) };
        let e: Vec<RealizedElement> = p.elements_upto(3);
        for &x in &e {
            prop_assert!(p.leq_realized(x, x));
            for &y in &e {
                if x != y {
                    prop_assert!(!(p.leq_realized(x, y) && p.leq_realized(y, x)));
                }
                for &z in &e {
                    if p.leq_realized(x, y) && p.leq_realized(y, z) {
                        prop_assert!(p.leq_realized(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn truncation_agrees_with_realized_order(input in ray_input(), d in 1usize..=5) {
        let Some(p) = build_ray(&input) else { return Ok(()) };
        let t = p.truncate(d);
        let e = p.elements_upto(d - 1);
        prop_assert_eq!(t.len(), e.len());
        for (a, &x) in e.iter().enumerate() {
            prop_assert_eq!(t.label(a), p.element_name(x));
            for (b, &y) in e.iter().enumerate() {
                prop_assert_eq!(t.leq(a, b), p.leq_realized(x, y));
            }
        }
    }

    #[test]
    fn ray_poset_json_round_trip(input in ray_input()) {
        let Some(p) = build_ray(&input) else { return Ok(()) };
        prop_assert_eq!(RayPoset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn a_output_satisfies_glb_dc_dd(input in ray_input()) {
        let Some(p) = build_ray(&input) else { return Ok(()) };
        let (a, _) = p.apply_a();
        for prop in [Property::Glb, Property::Dc, Property::Dd] {
            prop_assert!(a.check_property(prop).holds, "{}", prop);
        }
        prop_assert_eq!(p.apply_ac(), a);
    }

    #[test]
    fn r_undoes_a(input in ray_input()) {
        let Some(p) = build_ray(&input) else { return Ok(()) };
        let (a, _) = p.apply_a();
        let (ra, _) = a.apply_r().unwrap();
        let mapping: Vec<usize> = (0..ra.len()).map(|i| p.index_of(ra.label(i)).unwrap()).collect();
        prop_assert!(is_structural_iso(&ra, &p, &mapping));
    }

    #[test]
    fn glb_and_glbc_agree(input in ray_input()) {
        let Some(p) = build_ray(&input) else { return Ok(()) };
        prop_assert_eq!(
            p.check_property(Property::Glb).holds,
            p.check_property(Property::Glbc).holds
        );
    }

    #[test]
    fn kap_holds_everywhere(input in ray_input()) {
        let Some(p) = build_ray(&input) else { return Ok(()) };
        prop_assert!(p.check_property(Property::Kap).holds);
    }
}
