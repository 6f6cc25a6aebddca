//! Seeded random instances for the verification suites.
//!
//! Every generator is a pure function of its seed, so reports built from a
//! corpus are reproducible byte for byte.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Mult, MultiGraph};
use crate::poset::FinitePoset;
use crate::ray::{NodeKind, RayPoset, RelationKind};
use crate::spectrum::SpecPoset;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Random DAG on `1..=max_size` elements, closed and listed in shuffled order.
pub fn random_posets(seed: u64, count: usize, max_size: usize) -> Vec<FinitePoset> {
    let mut r = rng(seed, 1);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_size.max(1));
            let density: f64 = r.gen_range(0.1..0.7);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut r);
            let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let mut pairs = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if r.gen_bool(density) {
                        pairs.push((order[a], order[b]));
                    }
                }
            }
            FinitePoset::from_indices(labels, &pairs).expect("edges follow a topological order")
        })
        .collect()
}

/// Random ray posets with at most `max_nodes` nodes.
///
/// Relations are declared along a random topological order, so only
/// closure conflicts can make a draw invalid; those draws are rejected. With
/// `allow_ray_top_glb` false, draws where a tail glb is a ray element are
/// rejected as well, since `R` is not presentable on them.
pub fn random_ray_posets(
    seed: u64,
    count: usize,
    max_nodes: usize,
    allow_ray_top_glb: bool,
) -> Vec<RayPoset> {
    let mut r = rng(seed, 2);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let Some(p) = draw_ray_poset(&mut r, max_nodes.max(1)) else {
            continue;
        };
        if !allow_ray_top_glb && p.apply_r().is_err() {
            continue;
        }
        out.push(p);
    }
    out
}

fn draw_ray_poset(r: &mut ChaCha8Rng, max_nodes: usize) -> Option<RayPoset> {
    let n = r.gen_range(1..=max_nodes);
    let kinds: Vec<NodeKind> = (0..n)
        .map(|_| {
            if r.gen_bool(0.45) {
                NodeKind::Ray
            } else {
                NodeKind::Point
            }
        })
        .collect();
    let labels: Vec<String> = kinds
        .iter()
        .enumerate()
        .map(|(i, k)| match k {
            NodeKind::Point => format!("p{i}"),
            NodeKind::Ray => format!("R{i}"),
        })
        .collect();
    let mut topo: Vec<usize> = (0..n).collect();
    topo.shuffle(r);
    let density: f64 = r.gen_range(0.15..0.6);
    let mut rels = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !r.gen_bool(density) {
                continue;
            }
            let (lo, hi) = (topo[a], topo[b]);
            let kind = match (kinds[lo], kinds[hi]) {
                (NodeKind::Point, NodeKind::Point) => RelationKind::Lt,
                (NodeKind::Point, NodeKind::Ray) => RelationKind::PointBelowRay,
                (NodeKind::Ray, NodeKind::Point) => RelationKind::RayBelowPoint,
                (NodeKind::Ray, NodeKind::Ray) if r.gen_bool(0.5) => RelationKind::Sync,
                (NodeKind::Ray, NodeKind::Ray) => RelationKind::All,
            };
            rels.push((labels[lo].as_str(), labels[hi].as_str(), kind));
        }
    }
    let nodes: Vec<(&str, NodeKind)> = labels.iter().map(|l| l.as_str()).zip(kinds).collect();
    match RayPoset::new(&nodes, &rels) {
        Ok(p) => Some(p),
        Err(Error::ClosureConflict { .. }) => None,
        Err(e) => panic!("generator produced an invalid presentation: {e}"),
    }
}

/// Sparser finite edges; infinite emitters keep hereditary saturated sets
/// plentiful.
fn graded_mult(r: &mut ChaCha8Rng) -> Mult {
    match r.gen_range(0..10) {
        0..=4 => Mult::Zero,
        5 => Mult::Finite(1),
        _ => Mult::Inf,
    }
}

fn random_mult(r: &mut ChaCha8Rng) -> Mult {
    match r.gen_range(0..10) {
        0..=5 => Mult::Zero,
        6 | 7 => Mult::Finite(1),
        8 => Mult::Finite(2),
        _ => Mult::Inf,
    }
}

/// Random graphs on `1..=max_vertices` vertices, loops allowed, with
/// multiplicities drawn from `{0, 1, 2, ∞}`.
pub fn random_graphs(seed: u64, count: usize, max_vertices: usize) -> Vec<MultiGraph> {
    let mut r = rng(seed, 3);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_vertices.max(1));
            let labels: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
            let mut edges = Vec::new();
            for s in 0..n {
                for d in 0..n {
                    let m = random_mult(&mut r);
                    if !m.is_zero() {
                        edges.push((s, d, m));
                    }
                }
            }
            MultiGraph::from_parts(labels, &edges).expect("distinct labels")
        })
        .collect()
}

/// Random acyclic graphs without breaking vertices and with at most
/// `max_primes` primes.
pub fn random_graded_graphs(
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_primes: usize,
) -> Vec<(MultiGraph, SpecPoset)> {
    let mut r = rng(seed, 4);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.gen_range(1..=max_vertices.max(1));
        let labels: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let m = graded_mult(&mut r);
                if !m.is_zero() {
                    edges.push((order[b], order[a], m));
                }
            }
        }
        let g = MultiGraph::from_parts(labels, &edges).expect("distinct labels");
        if let Ok(sp) = SpecPoset::new(&g, n) {
            if sp.len() <= max_primes {
                out.push((g, sp));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_posets(3, 20, 7), random_posets(3, 20, 7));
        assert_eq!(
            random_ray_posets(3, 20, 6, false),
            random_ray_posets(3, 20, 6, false)
        );
        assert_eq!(random_graphs(3, 20, 7), random_graphs(3, 20, 7));
        let a: Vec<MultiGraph> = random_graded_graphs(3, 5, 6, 12)
            .into_iter()
            .map(|x| x.0)
            .collect();
        let b: Vec<MultiGraph> = random_graded_graphs(3, 5, 6, 12)
            .into_iter()
            .map(|x| x.0)
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn sizes_respect_bounds() {
        assert!(random_posets(1, 50, 7)
            .iter()
            .all(|p| (1..=7).contains(&p.len())));
        assert!(random_ray_posets(1, 50, 6, true)
            .iter()
            .all(|p| (1..=6).contains(&p.len())));
        assert!(random_graphs(1, 50, 7)
            .iter()
            .all(|g| (1..=7).contains(&g.len())));
    }

    #[test]
    fn ray_corpus_is_varied() {
        let c = random_ray_posets(9, 200, 6, false);
        assert!(c.iter().any(|p| p.ray_count() >= 2));
        assert!(c.iter().any(|p| p.ray_count() == 0));
        assert!(c
            .iter()
            .any(|p| p.relations().any(|(_, _, k)| k == RelationKind::Sync)));
        assert!(c
            .iter()
            .any(|p| p.relations().any(|(_, _, k)| k == RelationKind::All)));
        assert!(c.iter().all(|p| p.apply_r().is_ok()));
    }
}
