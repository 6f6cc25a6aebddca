//! Named verification suites over seeded corpora plus the pinned examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog;
use crate::corpus;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexSet, DEFAULT_VERTEX_CAP};
use crate::poset::{
    apply_a_finite, apply_r_finite, check_property_finite, mask_members, order_iso, FinitePoset,
    OrderMap, DEFAULT_CAP,
};
use crate::property::Property;
use crate::ray::{is_structural_iso, structural_iso, RayPoset, DEFAULT_DEPTH, DEFAULT_GUARD_DEPTH};
use crate::spectrum::{build_ep, enumerate_primes, ep_postconditions, PrimeDescriptor, SpecPoset};

pub const SUITE_NAMES: [&str; 13] = [
    "dccthrm",
    "EPspec_finite",
    "PembedsinSpec",
    "R_A_identity",
    "APprop",
    "APcor",
    "bergman",
    "taillemma",
    "primeintersect",
    "KAPiffDD",
    "dcciffA",
    "truncation",
    "graded_primes",
];

pub const DEFAULT_SEED: u64 = 7;

/// Corpus parameters; unset fields take the suite's defaults.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    pub count: Option<usize>,
    pub max_size: Option<usize>,
    pub depth: usize,
    pub cap: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            seed: DEFAULT_SEED,
            count: None,
            max_size: None,
            depth: DEFAULT_DEPTH,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusInfo {
    pub kind: &'static str,
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    pub pinned: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub corpus: CorpusInfo,
    pub passes: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Tally {
    passes: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            passes: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, instance: impl FnOnce() -> String, witness: Option<String>) {
        match witness {
            None => self.passes += 1,
            Some(w) => self.failures.push(Failure {
                instance: instance(),
                witness: w,
            }),
        }
    }

    fn finish(self, suite: &str, corpus: CorpusInfo) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            corpus,
            passes: self.passes,
            failures: self.failures,
        }
    }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let report = match name {
        "dccthrm" => dccthrm(params),
        "EPspec_finite" => ep_spec_finite(params),
        "PembedsinSpec" => p_embeds_in_spec(params),
        "R_A_identity" => r_a_identity(params),
        "APprop" => ap_prop(params),
        "APcor" => ap_cor(params),
        "bergman" => bergman(params),
        "taillemma" => tail_lemma(params),
        "primeintersect" => prime_intersect(params),
        "KAPiffDD" => kap_iff_dd(params),
        "dcciffA" => dcc_iff_a(params),
        "truncation" => truncation(params),
        "graded_primes" => graded_primes(params),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(report)
}

fn poset_name(i: usize, p: &FinitePoset) -> String {
    format!("poset#{i} {}", compact(&p.to_json()))
}

fn ray_name(i: usize, p: &RayPoset) -> String {
    format!("rayposet#{i} {}", compact(&p.to_json()))
}

fn graph_name(i: usize, g: &MultiGraph) -> String {
    format!("graph#{i} {}", compact(&g.to_json()))
}

fn compact(pretty: &str) -> String {
    let v: serde_json::Value = serde_json::from_str(pretty).expect("valid json");
    v.to_string()
}

fn poset_corpus(p: &SuiteParams, count: usize, size: usize) -> (Vec<FinitePoset>, CorpusInfo) {
    let count = p.count.unwrap_or(count);
    let size = p.max_size.unwrap_or(size);
    (
        corpus::random_posets(p.seed, count, size),
        CorpusInfo {
            kind: "poset",
            seed: p.seed,
            count,
            max_size: size,
            pinned: vec!["EPExample"],
        },
    )
}

const RAY_PINNED: [&str; 4] = ["APExample", "RPExample", "SpecGrid", "DCvsDCplus"];

fn pinned_rays() -> Vec<RayPoset> {
    vec![
        catalog::zero_and_ray(),
        catalog::zero_and_ray().apply_r().expect("presentable").0,
        catalog::spec_grid(),
        catalog::dc_vs_strong_dc(),
    ]
}

/// Corpus members first, then the pinned examples.
fn ray_corpus(p: &SuiteParams, allow_ray_top: bool) -> (Vec<RayPoset>, CorpusInfo) {
    let count = p.count.unwrap_or(300);
    let size = p.max_size.unwrap_or(6);
    let mut v = corpus::random_ray_posets(p.seed, count, size, allow_ray_top);
    v.extend(pinned_rays());
    (
        v,
        CorpusInfo {
            kind: if allow_ray_top {
                "rayposet"
            } else {
                "rayposet-presentable"
            },
            seed: p.seed,
            count,
            max_size: size,
            pinned: RAY_PINNED.to_vec(),
        },
    )
}

fn dccthrm(p: &SuiteParams) -> SuiteReport {
    let (mut posets, info) = poset_corpus(p, 500, 7);
    posets.push(catalog::diamond());
    let mut t = Tally::new();
    for (i, q) in posets.iter().enumerate() {
        let g = build_ep(q);
        let witness = match ep_postconditions(q, &g, DEFAULT_VERTEX_CAP) {
            Err(e) => Some(e.to_string()),
            Ok(Some(w)) => Some(w),
            Ok(None) => match SpecPoset::new(&g, DEFAULT_VERTEX_CAP) {
                Err(e) => Some(e.to_string()),
                Ok(sp) if order_iso(sp.as_finite(), q).is_none() => {
                    Some("spectrum of E_P is not order-isomorphic to P".into())
                }
                Ok(_) => None,
            },
        };
        t.record(|| poset_name(i, q), witness);
    }
    t.finish("dccthrm", info)
}

fn ep_spec_finite(p: &SuiteParams) -> SuiteReport {
    let (mut posets, info) = poset_corpus(p, 500, 7);
    posets.push(catalog::diamond());
    let mut t = Tally::new();
    for (i, q) in posets.iter().enumerate() {
        let witness = (|| -> Result<Option<String>> {
            if !check_property_finite(q, Property::Dcc, p.cap)? {
                return Ok(Some("finite poset fails DCC".into()));
            }
            let a = apply_a_finite(q, p.cap)?;
            if &a != q {
                return Ok(Some("A(P) differs from P".into()));
            }
            let sp = SpecPoset::new(&build_ep(q), DEFAULT_VERTEX_CAP)?;
            Ok(order_iso(sp.as_finite(), &a)
                .is_none()
                .then(|| "spectrum of E_P is not isomorphic to A(P)".into()))
        })()
        .unwrap_or_else(|e| Some(e.to_string()));
        t.record(|| poset_name(i, q), witness);
    }
    t.finish("EPspec_finite", info)
}

fn p_embeds_in_spec(p: &SuiteParams) -> SuiteReport {
    let (mut posets, info) = poset_corpus(p, 500, 7);
    posets.push(catalog::diamond());
    let mut t = Tally::new();
    for (i, q) in posets.iter().enumerate() {
        let g = build_ep(q);
        let witness = match SpecPoset::new(&g, DEFAULT_VERTEX_CAP) {
            Err(e) => Some(e.to_string()),
            Ok(sp) => {
                let assignment: Option<Vec<usize>> = (0..q.len())
                    .map(|v| sp.index_of(g.big_m(v).complement(g.len())))
                    .collect();
                match assignment {
                    None => Some("some complement of M(v_p) is not a prime".into()),
                    Some(a) => {
                        let m = OrderMap::new(q, sp.as_finite(), a);
                        (!m.is_order_embedding())
                            .then(|| "p -> <E0 \\ M(v_p)> is not an order-embedding".into())
                    }
                }
            }
        };
        t.record(|| poset_name(i, q), witness);
    }
    t.finish("PembedsinSpec", info)
}

fn r_a_identity(p: &SuiteParams) -> SuiteReport {
    let (rays, info) = ray_corpus(p, false);
    let mut t = Tally::new();
    for (i, q) in rays.iter().enumerate() {
        let (a, _) = q.apply_a();
        let witness = match a.apply_r() {
            Err(e) => Some(e.to_string()),
            Ok((ra, _)) => {
                let canonical: Option<Vec<usize>> =
                    (0..ra.len()).map(|n| q.index_of(ra.label(n))).collect();
                match canonical {
                    None => Some("R(A(P)) has a node absent from P".into()),
                    Some(m) if !is_structural_iso(&ra, q, &m) => {
                        Some("canonical mapping is not a structural isomorphism".into())
                    }
                    Some(_) => match structural_iso(&ra, q, DEFAULT_GUARD_DEPTH) {
                        Some(iso) if iso.guard_ok => None,
                        Some(_) => Some("truncation guard failed".into()),
                        None => Some("no structural isomorphism found".into()),
                    },
                }
            }
        };
        t.record(|| ray_name(i, q), witness);
    }
    t.finish("R_A_identity", info)
}

/// `P ≅ A(R(P))` by structural isomorphism.
pub fn realizable_as_a(p: &RayPoset) -> bool {
    match p.apply_r() {
        Ok((r, _)) => {
            structural_iso(p, &r.apply_a().0, DEFAULT_GUARD_DEPTH).is_some_and(|i| i.guard_ok)
        }
        Err(_) => false,
    }
}

fn glb_dc_dd(p: &RayPoset) -> bool {
    [Property::Glb, Property::Dc, Property::Dd]
        .iter()
        .all(|&x| p.check_property(x).holds)
}

fn ap_prop(p: &SuiteParams) -> SuiteReport {
    let (rays, info) = ray_corpus(p, false);
    let mut t = Tally::new();
    for (i, q) in rays.iter().enumerate() {
        let lhs = realizable_as_a(q);
        let rhs = glb_dc_dd(q);
        let witness = (lhs != rhs).then(|| {
            let failing: Vec<String> = q
                .check_all()
                .into_iter()
                .filter(|c| !c.holds)
                .map(|c| c.property.to_string())
                .collect();
            format!(
                "P = A(R(P)): {lhs}, GLB & DC & DD: {rhs}; failing: [{}]",
                failing.join(", ")
            )
        });
        t.record(|| ray_name(i, q), witness);
    }
    t.finish("APprop", info)
}

fn ap_cor(p: &SuiteParams) -> SuiteReport {
    let (rays, info) = ray_corpus(p, false);
    let mut t = Tally::new();
    for (i, q) in rays.iter().enumerate() {
        let (a, _) = q.apply_a();
        let mut witness = [Property::Glb, Property::Dc, Property::Dd]
            .iter()
            .map(|&x| a.check_property(x))
            .find(|c| !c.holds)
            .map(|c| format!("A(P) fails {}: {:?}", c.property, c.witness));
        if witness.is_none() && q.apply_ac() != a {
            witness = Some("chain construction differs from A(P)".into());
        }
        t.record(|| ray_name(i, q), witness);
    }
    t.finish("APcor", info)
}

fn bergman(p: &SuiteParams) -> SuiteReport {
    let (rays, info) = ray_corpus(p, true);
    let mut t = Tally::new();
    for (i, q) in rays.iter().enumerate() {
        let glb = q.check_property(Property::Glb).holds;
        let glbc = q.check_property(Property::Glbc).holds;
        t.record(
            || ray_name(i, q),
            (glb != glbc).then(|| format!("GLB = {glb}, GLBC = {glbc}")),
        );
    }
    t.finish("bergman", info)
}

/// Nonempty subfamilies of `k` tails: all of them when `k <= 12`,
/// otherwise 4096 seeded samples.
fn subfamilies(k: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if k <= 12 {
        (1..1u64 << k).collect()
    } else {
        (0..4096)
            .map(|_| loop {
                let m = rng.gen::<u64>() & ((1u64 << k) - 1);
                if m != 0 {
                    break m;
                }
            })
            .collect()
    }
}

fn tail_lemma(p: &SuiteParams) -> SuiteReport {
    let count = p.count.unwrap_or(500);
    let size = p.max_size.unwrap_or(7);
    let mut graphs = corpus::random_graphs(p.seed, count, size);
    graphs.push(catalog::union_eg_trunc());
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x7a11);
    let mut t = Tally::new();
    for (i, g) in graphs.iter().enumerate() {
        let witness = (|| -> Result<Option<String>> {
            let tails = g.maximal_tails(DEFAULT_VERTEX_CAP)?;
            for fam in subfamilies(tails.len(), &mut rng) {
                let chosen: Vec<VertexSet> =
                    mask_members(fam).into_iter().map(|j| tails[j]).collect();
                let r = g.tail_union_check(&chosen)?;
                if !(r.mt1 && r.mt2) || r.mt3 != r.co_inhabited {
                    return Ok(Some(format!(
                        "union {:?}: MT1 {} MT2 {} MT3 {} co-inhabited {}",
                        r.union, r.mt1, r.mt2, r.mt3, r.co_inhabited
                    )));
                }
            }
            Ok(None)
        })()
        .unwrap_or_else(|e| Some(e.to_string()));
        t.record(|| graph_name(i, g), witness);
    }
    t.finish(
        "taillemma",
        CorpusInfo {
            kind: "graph",
            seed: p.seed,
            count,
            max_size: size,
            pinned: vec!["UnionEgTrunc"],
        },
    )
}

const GRADED_MAX_PRIMES: usize = 12;

fn graded_corpus(p: &SuiteParams) -> (Vec<(MultiGraph, SpecPoset)>, CorpusInfo) {
    let count = p.count.unwrap_or(100);
    let size = p.max_size.unwrap_or(7);
    let mut v = corpus::random_graded_graphs(p.seed, count, size, GRADED_MAX_PRIMES);
    for g in [catalog::union_eg_trunc(), build_ep(&catalog::diamond())] {
        let sp = SpecPoset::new(&g, DEFAULT_VERTEX_CAP).expect("pinned graphs are graded");
        v.push((g, sp));
    }
    (
        v,
        CorpusInfo {
            kind: "graded-graph",
            seed: p.seed,
            count,
            max_size: size,
            pinned: vec!["UnionEgTrunc", "EPExample"],
        },
    )
}

fn prime_intersect(p: &SuiteParams) -> SuiteReport {
    let (graphs, info) = graded_corpus(p);
    let mut t = Tally::new();
    for (i, (g, sp)) in graphs.iter().enumerate() {
        let witness = (|| -> Result<Option<String>> {
            let fp = sp.as_finite();
            for class in fp.downward_directed_subsets(GRADED_MAX_PRIMES.max(p.cap))? {
                let members = class.members();
                let r = sp.intersect(&members)?;
                let labels: Vec<&str> = members.iter().map(|&m| fp.label(m)).collect();
                if !r.is_prime {
                    return Ok(Some(format!("intersection of {labels:?} is not prime")));
                }
                if r.glb.is_none() || r.equals != r.glb {
                    return Ok(Some(format!("intersection of {labels:?} is not the glb")));
                }
            }
            Ok(None)
        })()
        .unwrap_or_else(|e| Some(e.to_string()));
        t.record(|| graph_name(i, g), witness);
    }
    t.finish("primeintersect", info)
}

fn graded_primes(p: &SuiteParams) -> SuiteReport {
    let (graphs, info) = graded_corpus(p);
    let mut t = Tally::new();
    for (i, (g, sp)) in graphs.iter().enumerate() {
        let witness = (|| -> Result<Option<String>> {
            let primes = enumerate_primes(g, DEFAULT_VERTEX_CAP)?;
            let mut hs = Vec::new();
            for d in &primes {
                match d {
                    PrimeDescriptor::Graded { h } => hs.push(*h),
                    other => return Ok(Some(format!("non-graded prime {:?}", other.to_json(g)))),
                }
            }
            hs.sort();
            if hs != sp.primes() {
                return Ok(Some(
                    "prime enumeration differs from the spectrum poset".into(),
                ));
            }
            let mu = sp.check_mu_prop()?;
            if let Some(v) = mu.violations.first() {
                return Ok(Some(format!("regular acyclic source {v}")));
            }
            let r = apply_r_finite(sp.as_finite(), p.cap.max(sp.len()))?;
            for j in 0..sp.len() {
                if r.index_of(sp.as_finite().label(j)).is_none() && !sp.not_locally_closed(j)? {
                    return Ok(Some("prime outside R(Spec) is locally closed".into()));
                }
            }
            Ok(None)
        })()
        .unwrap_or_else(|e| Some(e.to_string()));
        t.record(|| graph_name(i, g), witness);
    }
    t.finish("graded_primes", info)
}

fn kap_iff_dd(p: &SuiteParams) -> SuiteReport {
    let (rays, info) = ray_corpus(p, true);
    let mut t = Tally::new();
    for (i, q) in rays.iter().enumerate() {
        let kap = q.check_property(Property::Kap);
        let mut witness = (!kap.holds).then(|| format!("KAP fails: {:?}", kap.witness));
        if witness.is_none()
            && q.check_property(Property::Glb).holds
            && q.check_property(Property::StrongDc).holds
            && !q.check_property(Property::Dd).holds
        {
            witness = Some("GLB and StrongDC hold, KAP holds but DD fails".into());
        }
        if witness.is_none() {
            witness = cover_mismatch(q, p.depth);
        }
        t.record(|| ray_name(i, q), witness);
    }
    t.finish("KAPiffDD", info)
}

/// Compares truncation covers with realized covers for elements at levels
/// at most `d - 2`, where truncation cannot create spurious covers.
pub fn cover_mismatch(q: &RayPoset, depth: usize) -> Option<String> {
    for d in 2..=depth {
        let tr = q.truncate(d);
        let elems = q.elements_upto(d - 1);
        for (a, &x) in elems.iter().enumerate() {
            for (b, &y) in elems.iter().enumerate() {
                if x.level + 2 > d || y.level + 2 > d {
                    continue;
                }
                if tr.is_cover(a, b) != q.is_cover_realized(x, y) {
                    return Some(format!(
                        "depth {d}: cover ({}, {}) truncation {} realized {}",
                        q.element_name(x),
                        q.element_name(y),
                        tr.is_cover(a, b),
                        q.is_cover_realized(x, y)
                    ));
                }
            }
        }
    }
    None
}

fn dcc_iff_a(p: &SuiteParams) -> SuiteReport {
    let (posets, _) = poset_corpus(p, 200, 7);
    let (rays, mut info) = ray_corpus(p, true);
    info.kind = "poset+rayposet";
    let mut t = Tally::new();
    for (i, q) in posets.iter().enumerate() {
        let witness = (|| -> Result<Option<String>> {
            let dcc = check_property_finite(q, Property::Dcc, p.cap)?;
            let fixed = &apply_a_finite(q, p.cap)? == q;
            Ok((dcc != fixed).then(|| format!("DCC = {dcc}, A(P) = P: {fixed}")))
        })()
        .unwrap_or_else(|e| Some(e.to_string()));
        t.record(|| poset_name(i, q), witness);
    }
    for (i, q) in rays.iter().enumerate() {
        let dcc = q.check_property(Property::Dcc).holds;
        let fixed = &q.apply_a().0 == q;
        t.record(
            || ray_name(i, q),
            (dcc != fixed).then(|| format!("DCC = {dcc}, A(P) = P: {fixed}")),
        );
    }
    t.finish("dcciffA", info)
}

/// First pair where the realized order and `truncate(d)` disagree.
pub fn truncation_mismatch(q: &RayPoset, depth: usize) -> Option<String> {
    for d in 1..=depth {
        let tr = q.truncate(d);
        let elems = q.elements_upto(d - 1);
        for (a, &x) in elems.iter().enumerate() {
            for (b, &y) in elems.iter().enumerate() {
                if tr.leq(a, b) != q.leq_realized(x, y) {
                    return Some(format!(
                        "depth {d}: {} <= {} truncation {} realized {}",
                        q.element_name(x),
                        q.element_name(y),
                        tr.leq(a, b),
                        q.leq_realized(x, y)
                    ));
                }
            }
        }
    }
    None
}

fn truncation(p: &SuiteParams) -> SuiteReport {
    let (rays, info) = ray_corpus(p, true);
    let mut t = Tally::new();
    for (i, q) in rays.iter().enumerate() {
        t.record(|| ray_name(i, q), truncation_mismatch(q, p.depth));
    }
    t.finish("truncation", info)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteParams {
        SuiteParams {
            count: Some(25),
            ..SuiteParams::default()
        }
    }

    #[test]
    fn every_suite_is_green_on_a_small_corpus() {
        for name in SUITE_NAMES {
            let r = run_suite(name, &small()).unwrap();
            assert!(r.ok(), "{name}: {:?}", r.failures.first());
            assert!(r.passes > 0);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &small()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn spec_grid_is_not_realizable() {
        let g = catalog::spec_grid();
        assert!(!realizable_as_a(&g));
        assert!(!glb_dc_dd(&g));
        assert!(realizable_as_a(&catalog::zero_and_ray()));
    }
}
