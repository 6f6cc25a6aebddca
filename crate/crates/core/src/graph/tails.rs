//! Hereditary and saturated sets, maximal tails and breaking vertices.

use serde::Serialize;

use super::{Mult, MultiGraph, VertexSet};
use crate::error::{Error, Result};

impl MultiGraph {
    /// Closed under following edges.
    pub fn is_hereditary(&self, h: VertexSet) -> bool {
        h.iter().all(|u| self.descendants(u).is_subset(h))
    }

    /// Every regular vertex whose children all lie in `h` lies in `h`.
    /// Sinks and infinite emitters are never forced in.
    pub fn is_saturated(&self, h: VertexSet) -> bool {
        (0..self.len())
            .all(|v| h.contains(v) || !self.is_regular(v) || !self.children(v).is_subset(h))
    }

    pub fn is_hereditary_saturated(&self, h: VertexSet) -> bool {
        self.is_hereditary(h) && self.is_saturated(h)
    }

    pub fn hereditary_closure(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(VertexSet::EMPTY, |acc, u| acc.union(self.descendants(u)))
    }

    pub fn saturated_closure(&self, s: VertexSet) -> VertexSet {
        let mut h = s;
        loop {
            let next = VertexSet::from_indices(
                (0..self.len()).filter(|&v| self.is_regular(v) && self.children(v).is_subset(h)),
            )
            .union(h);
            if next == h {
                return h;
            }
            h = next;
        }
    }

    /// Smallest hereditary saturated superset.
    pub fn hereditary_saturated_closure(&self, s: VertexSet) -> VertexSet {
        let mut h = s;
        loop {
            let next = self.saturated_closure(self.hereditary_closure(h));
            if next == h {
                return h;
            }
            h = next;
        }
    }

    /// All hereditary saturated sets in increasing bitmask order.
    pub fn hereditary_saturated_sets(&self, cap: usize) -> Result<Vec<VertexSet>> {
        self.check_cap(cap)?;
        Ok(self
            .subsets()
            .filter(|&h| self.is_hereditary_saturated(h))
            .collect())
    }

    fn subsets(&self) -> impl Iterator<Item = VertexSet> {
        (0..1u64 << self.len()).map(VertexSet)
    }

    /// MT1: closed upward under `>=`.
    pub fn satisfies_mt1(&self, m: VertexSet) -> bool {
        m.iter().all(|v| self.big_m(v).is_subset(m))
    }

    /// MT2: every regular vertex of `m` has a child in `m`.
    pub fn satisfies_mt2(&self, m: VertexSet) -> bool {
        m.iter()
            .all(|v| !self.is_regular(v) || !self.children(v).intersection(m).is_empty())
    }

    /// MT3 failure witness: a pair in `m` without common lower bound in `m`.
    pub fn mt3_witness(&self, m: VertexSet) -> Option<(usize, usize)> {
        for v in m.iter() {
            for w in m.iter().filter(|&w| w > v) {
                if self
                    .descendants(v)
                    .intersection(self.descendants(w))
                    .intersection(m)
                    .is_empty()
                {
                    return Some((v, w));
                }
            }
        }
        None
    }

    /// MT3: nonempty and downward directed under `>=`.
    pub fn satisfies_mt3(&self, m: VertexSet) -> bool {
        !m.is_empty() && self.mt3_witness(m).is_none()
    }

    pub fn is_maximal_tail(&self, m: VertexSet) -> bool {
        self.satisfies_mt1(m) && self.satisfies_mt2(m) && self.satisfies_mt3(m)
    }

    /// All maximal tails in increasing bitmask order.
    ///
    /// The complement duality (MT1 with hereditary, MT2 with saturated) is
    /// checked on every subset visited.
    pub fn maximal_tails(&self, cap: usize) -> Result<Vec<VertexSet>> {
        self.check_cap(cap)?;
        let n = self.len();
        let mut out = Vec::new();
        for m in self.subsets() {
            let c = m.complement(n);
            let mt1 = self.satisfies_mt1(m);
            let mt2 = self.satisfies_mt2(m);
            assert_eq!(mt1, self.is_hereditary(c), "MT1 duality fails at {m:?}");
            assert_eq!(mt2, self.is_saturated(c), "MT2 duality fails at {m:?}");
            if mt1 && mt2 && self.satisfies_mt3(m) {
                out.push(m);
            }
        }
        Ok(out)
    }

    /// Infinite emitters outside `h` with finitely many, but at least one,
    /// edges into the complement of `h`.
    pub fn breaking_vertices(&self, h: VertexSet) -> Result<VertexSet> {
        if !self.is_hereditary_saturated(h) {
            return Err(Error::NotHereditarySaturated);
        }
        let outside = h.complement(self.len());
        Ok(VertexSet::from_indices(outside.iter().filter(|&v| {
            self.is_infinite_emitter(v)
                && matches!(
                    outside.iter().fold(Mult::Zero, |a, d| a + self.mult(v, d)),
                    Mult::Finite(_)
                )
        })))
    }

    /// Checks the union of maximal tails against MT1–MT3 and against
    /// pairwise co-inhabitation of some input tail.
    pub fn tail_union_check(&self, tails: &[VertexSet]) -> Result<TailUnionReport> {
        if tails.iter().any(|&t| !self.is_maximal_tail(t)) {
            return Err(Error::NotATail);
        }
        let union = tails.iter().fold(VertexSet::EMPTY, |a, &t| a.union(t));
        let mt3_witness = self.mt3_witness(union);
        let mut pair_witness = None;
        'outer: for v in union.iter() {
            for w in union.iter().filter(|&w| w > v) {
                if !tails.iter().any(|t| t.contains(v) && t.contains(w)) {
                    pair_witness = Some((v, w));
                    break 'outer;
                }
            }
        }
        let name = |p: Option<(usize, usize)>| {
            p.map(|(a, b)| (self.label(a).to_string(), self.label(b).to_string()))
        };
        Ok(TailUnionReport {
            union: self.set_labels(union),
            mt1: self.satisfies_mt1(union),
            mt2: self.satisfies_mt2(union),
            mt3: !union.is_empty() && mt3_witness.is_none(),
            co_inhabited: pair_witness.is_none(),
            mt3_witness: name(mt3_witness),
            pair_witness: name(pair_witness),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailUnionReport {
    pub union: Vec<String>,
    pub mt1: bool,
    pub mt2: bool,
    pub mt3: bool,
    /// Every pair of union members lies in a common input tail.
    pub co_inhabited: bool,
    pub mt3_witness: Option<(String, String)>,
    pub pair_witness: Option<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn single_vertex_sets() {
        let g = single();
        let hs = g.hereditary_saturated_sets(20).unwrap();
        assert_eq!(hs, vec![VertexSet(0), VertexSet(1)]);
        assert_eq!(g.maximal_tails(20).unwrap(), vec![VertexSet(1)]);
    }

    #[test]
    fn chain_hereditary_saturated_by_brute_force() {
        // a -> b with a regular: b in H forces a in H.
        let g = chain2();
        let oracle: Vec<VertexSet> = (0..4u64)
            .map(VertexSet)
            .filter(|h| {
                let (a, b) = (h.contains(0), h.contains(1));
                let hereditary = !a || b;
                let saturated = !b || a;
                hereditary && saturated
            })
            .collect();
        assert_eq!(g.hereditary_saturated_sets(20).unwrap(), oracle);
        assert_eq!(oracle, vec![VertexSet(0), VertexSet(3)]);
        assert!(!g.is_hereditary(VertexSet(1)));
        assert!(!g.is_saturated(VertexSet(2)));
    }

    #[test]
    fn saturation_pulls_in_regular_parent() {
        let g = MultiGraph::new(
            &["v", "a", "b"],
            &[("v", "a", Mult::Finite(1)), ("v", "b", Mult::Finite(2))],
        )
        .unwrap();
        let h = g.saturated_closure(VertexSet::from_indices([1, 2]));
        assert!(h.contains(0));
        let g2 = MultiGraph::new(&["v", "a"], &[("v", "a", Mult::Inf)]).unwrap();
        assert_eq!(
            g2.saturated_closure(VertexSet::singleton(1)),
            VertexSet::singleton(1)
        );
    }

    #[test]
    fn breaking_vertex_example() {
        let g = breaking();
        let h = g.vertex_set(&["a"]).unwrap();
        assert_eq!(
            g.breaking_vertices(h).unwrap(),
            g.vertex_set(&["w"]).unwrap()
        );
        assert_eq!(
            g.breaking_vertices(VertexSet::EMPTY).unwrap(),
            VertexSet::EMPTY
        );
        assert!(g.breaking_vertices(g.vertex_set(&["w"]).unwrap()).is_err());
    }

    #[test]
    fn finite_graph_has_no_breaking_vertices() {
        let g = chain2();
        for h in g.hereditary_saturated_sets(20).unwrap() {
            assert!(g.breaking_vertices(h).unwrap().is_empty());
        }
    }

    #[test]
    fn union_of_single_tail() {
        let g = chain2();
        let tails = g.maximal_tails(20).unwrap();
        let r = g.tail_union_check(&tails[..1]).unwrap();
        assert!(r.mt1 && r.mt2 && r.mt3 && r.co_inhabited);
        assert!(g.tail_union_check(&[VertexSet(2)]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(chain2().maximal_tails(1).is_err());
    }
}
