use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::poset::{apply_r_finite, FinitePoset, DEFAULT_CAP};

/// Spectrum of a graded-regime graph: primes `⟨H⟩` with `E⁰∖H` a maximal
/// tail, ordered by inclusion of `H`.
#[derive(Clone, Debug)]
pub struct SpecPoset {
    graph: MultiGraph,
    fingerprint: u64,
    primes: Vec<VertexSet>,
    poset: FinitePoset,
}

/// A prime of a particular spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeRef {
    pub graph: u64,
    pub index: usize,
}

/// An ideal given by vertex data, or the whole ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ideal {
    Vertices(VertexSet),
    WholeRing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub h: VertexSet,
    pub is_prime: bool,
    /// Pair in `E⁰∖H` without a common lower bound there.
    pub mt3_witness: Option<(usize, usize)>,
    pub directed: bool,
    /// Index of the prime equal to the intersection, if any.
    pub equals: Option<usize>,
    /// Poset glb of the family, if any.
    pub glb: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MuReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl SpecPoset {
    /// Fails with [`Error::NotGradedRegime`] unless the graph is acyclic and
    /// has no breaking vertices for any hereditary saturated set.
    pub fn new(g: &MultiGraph, cap: usize) -> Result<Self> {
        if let Some(c) = g.cycles(cap)?.first() {
            let names: Vec<&str> = c.vertices.iter().map(|&v| g.label(v)).collect();
            return Err(Error::NotGradedRegime(format!(
                "cycle {}",
                names.join(" -> ")
            )));
        }
        for h in g.hereditary_saturated_sets(cap)? {
            let b = g.breaking_vertices(h)?;
            if !b.is_empty() {
                return Err(Error::NotGradedRegime(format!(
                    "breaking vertices {:?} for H = {:?}",
                    g.set_labels(b),
                    g.set_labels(h)
                )));
            }
        }
        let n = g.len();
        let mut primes: Vec<VertexSet> = g
            .maximal_tails(cap)?
            .into_iter()
            .map(|m| m.complement(n))
            .collect();
        primes.sort();
        let labels: Vec<String> = primes.iter().map(|&h| prime_label(g, h)).collect();
        let mut pairs = Vec::new();
        for (i, &a) in primes.iter().enumerate() {
            for (j, &b) in primes.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    pairs.push((i, j));
                }
            }
        }
        let poset = FinitePoset::from_indices(labels, &pairs)?;
        Ok(SpecPoset {
            graph: g.clone(),
            fingerprint: g.fingerprint(),
            primes,
            poset,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Vertex data of each prime, in poset index order.
    pub fn primes(&self) -> &[VertexSet] {
        &self.primes
    }

    pub fn h(&self, i: usize) -> VertexSet {
        self.primes[i]
    }

    pub fn prime(&self, i: usize) -> PrimeRef {
        PrimeRef {
            graph: self.fingerprint,
            index: i,
        }
    }

    pub fn index_of(&self, h: VertexSet) -> Option<usize> {
        self.primes.iter().position(|&p| p == h)
    }

    pub fn as_finite(&self) -> &FinitePoset {
        &self.poset
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownPrime)
        }
    }

    /// Intersection of a nonempty family of primes, by vertex data.
    pub fn intersect(&self, members: &[usize]) -> Result<Intersection> {
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &i in members {
            self.check_index(i)?;
        }
        let h = members
            .iter()
            .fold(self.graph.all(), |acc, &i| acc.intersection(self.primes[i]));
        let rest = h.complement(self.graph.len());
        let mt3_witness = self.graph.mt3_witness(rest);
        Ok(Intersection {
            h,
            is_prime: self.graph.satisfies_mt3(rest),
            mt3_witness,
            directed: self.poset.is_downward_directed(members),
            equals: self.index_of(h),
            glb: self.poset.glb(members),
        })
    }

    /// Intersection of all primes strictly containing `i`; the whole ring
    /// when there are none.
    pub fn upper_intersection(&self, i: usize) -> Result<Ideal> {
        self.check_index(i)?;
        let above: Vec<usize> = (0..self.len()).filter(|&j| self.poset.lt(i, j)).collect();
        if above.is_empty() {
            return Ok(Ideal::WholeRing);
        }
        Ok(Ideal::Vertices(self.intersect(&above)?.h))
    }

    /// The prime equals the intersection of the primes strictly above it.
    pub fn not_locally_closed(&self, i: usize) -> Result<bool> {
        Ok(self.upper_intersection(i)? == Ideal::Vertices(self.primes[i]))
    }

    /// A maximal prime not containing vertex `v` and containing `above`.
    pub fn max_prime_avoiding(&self, v: usize, above: Option<usize>) -> Result<usize> {
        if v >= self.graph.len() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let floor = match above {
            Some(a) => {
                self.check_index(a)?;
                self.primes[a]
            }
            None => VertexSet::EMPTY,
        };
        let candidates: Vec<usize> = (0..self.len())
            .filter(|&j| !self.primes[j].contains(v) && floor.is_subset(self.primes[j]))
            .collect();
        let found = candidates
            .iter()
            .copied()
            .find(|&j| !candidates.iter().any(|&k| self.poset.lt(j, k)))
            .ok_or(Error::NoSuchPrime)?;
        if self.len() <= DEFAULT_CAP {
            let r = apply_r_finite(&self.poset, DEFAULT_CAP)?;
            assert!(r.index_of(self.poset.label(found)).is_some());
        }
        Ok(found)
    }

    /// Every prime whose complement is `ℳ(u)` has `u` non-regular or on a cycle.
    pub fn check_mu_prop(&self) -> Result<MuReport> {
        let g = &self.graph;
        let on_cycle: VertexSet = g.cycles(g.len())?.iter().fold(VertexSet::EMPTY, |acc, c| {
            acc.union(VertexSet::from_indices(c.vertices.iter().copied()))
        });
        let mut report = MuReport::default();
        for (i, &h) in self.primes.iter().enumerate() {
            let rest = h.complement(g.len());
            for u in rest.iter().filter(|&u| g.big_m(u) == rest) {
                report.checked += 1;
                if g.is_regular(u) && !on_cycle.contains(u) {
                    report.violations.push(format!(
                        "{} at prime {}",
                        g.label(u),
                        self.poset.label(i)
                    ));
                }
            }
        }
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out {
            primes: Vec<Vec<String>>,
            poset: crate::poset::PosetJson,
        }
        let out = Out {
            primes: self
                .primes
                .iter()
                .map(|&h| self.graph.set_labels(h))
                .collect(),
            poset: (&self.poset).into(),
        };
        serde_json::to_string_pretty(&out).expect("spectrum serializes")
    }
}

/// `0` for the zero ideal, `<a,b>` otherwise.
fn prime_label(g: &MultiGraph, h: VertexSet) -> String {
    if h.is_empty() {
        "0".to_string()
    } else {
        format!("<{}>", g.set_labels(h).join(","))
    }
}

/// Intersects primes that must all come from `sp`.
pub fn intersect_primes(sp: &SpecPoset, members: &[PrimeRef]) -> Result<Intersection> {
    if members.iter().any(|m| m.graph != sp.fingerprint) {
        return Err(Error::MixedGraphs);
    }
    let idx: Vec<usize> = members.iter().map(|m| m.index).collect();
    sp.intersect(&idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Mult, DEFAULT_VERTEX_CAP as CAP};
    use crate::poset::order_iso;
    use crate::spectrum::build_ep;

    fn diamond() -> FinitePoset {
        FinitePoset::new(
            &["p", "q", "r", "s"],
            &[("s", "q"), ("s", "r"), ("q", "p"), ("r", "p")],
        )
        .unwrap()
    }

    fn chain3_graph() -> MultiGraph {
        // c -> b -> a with infinite edges: spectrum is a 3-chain.
        MultiGraph::new(
            &["a", "b", "c"],
            &[("c", "b", Mult::Inf), ("b", "a", Mult::Inf)],
        )
        .unwrap()
    }

    #[test]
    fn diamond_spectrum_is_diamond() {
        let p = diamond();
        let sp = SpecPoset::new(&build_ep(&p), CAP).unwrap();
        assert_eq!(sp.len(), 4);
        assert!(order_iso(sp.as_finite(), &p).is_some());
    }

    #[test]
    fn single_vertex_spectrum() {
        let g = MultiGraph::new::<&str>(&["v"], &[]).unwrap();
        let sp = SpecPoset::new(&g, CAP).unwrap();
        assert_eq!(sp.primes(), &[VertexSet::EMPTY]);
        assert_eq!(sp.as_finite().label(0), "0");
        assert_eq!(sp.max_prime_avoiding(0, Some(0)).unwrap(), 0);
    }

    #[test]
    fn cycles_and_breaking_vertices_are_refused() {
        let g = MultiGraph::new(&["v"], &[("v", "v", Mult::Finite(1))]).unwrap();
        assert!(matches!(
            SpecPoset::new(&g, CAP),
            Err(Error::NotGradedRegime(_))
        ));
        let b = MultiGraph::new(
            &["w", "a", "b"],
            &[("w", "a", Mult::Inf), ("w", "b", Mult::Finite(1))],
        )
        .unwrap();
        assert!(matches!(
            SpecPoset::new(&b, CAP),
            Err(Error::NotGradedRegime(_))
        ));
    }

    #[test]
    fn singleton_intersection() {
        let sp = SpecPoset::new(&build_ep(&diamond()), CAP).unwrap();
        for i in 0..sp.len() {
            let r = sp.intersect(&[i]).unwrap();
            assert!(r.is_prime && r.directed);
            assert_eq!(r.equals, Some(i));
            assert_eq!(r.glb, Some(i));
        }
        assert!(matches!(sp.intersect(&[]), Err(Error::EmptySubset)));
        assert!(matches!(sp.intersect(&[9]), Err(Error::UnknownPrime)));
    }

    #[test]
    fn mixed_graphs_rejected() {
        let a = SpecPoset::new(&build_ep(&diamond()), CAP).unwrap();
        let b = SpecPoset::new(&chain3_graph(), CAP).unwrap();
        assert!(matches!(
            intersect_primes(&a, &[a.prime(0), b.prime(0)]),
            Err(Error::MixedGraphs)
        ));
        assert!(intersect_primes(&a, &[a.prime(0), a.prime(1)]).is_ok());
    }

    #[test]
    fn not_locally_closed_on_a_chain() {
        let sp = SpecPoset::new(&chain3_graph(), CAP).unwrap();
        assert_eq!(sp.len(), 3);
        // Oracle: primes are {}, {a}, {a,b}; the ideal equals the
        // intersection of the strictly larger ones only for none of them.
        let hs: Vec<VertexSet> = sp.primes().to_vec();
        for i in 0..sp.len() {
            let above: Vec<VertexSet> = hs
                .iter()
                .copied()
                .filter(|h| hs[i] != *h && hs[i].is_subset(*h))
                .collect();
            let expect = !above.is_empty()
                && above
                    .iter()
                    .fold(sp.graph().all(), |a, &h| a.intersection(h))
                    == hs[i];
            assert_eq!(sp.not_locally_closed(i).unwrap(), expect);
        }
        let top = sp
            .index_of(sp.graph().vertex_set(&["a", "b"]).unwrap())
            .unwrap();
        assert_eq!(sp.upper_intersection(top).unwrap(), Ideal::WholeRing);
        assert!(!sp.not_locally_closed(top).unwrap());
    }

    #[test]
    fn max_prime_avoiding_in_diamond() {
        let g = build_ep(&diamond());
        let sp = SpecPoset::new(&g, CAP).unwrap();
        let vs = g.vertex("v_s").unwrap();
        let found = sp.max_prime_avoiding(vs, None).unwrap();
        // Scan: every prime's complement is an up-set containing v_s only
        // when it is everything, so only H = {} avoids v_s.
        assert_eq!(sp.h(found), VertexSet::EMPTY);
        let vp = g.vertex("v_p").unwrap();
        let top = sp.max_prime_avoiding(vp, None).unwrap();
        assert_eq!(sp.h(top).complement(4), VertexSet::singleton(vp));
        let q_prime = sp.index_of(g.vertex_set(&["v_s", "v_q"]).unwrap()).unwrap();
        assert!(matches!(
            sp.max_prime_avoiding(vs, Some(q_prime)),
            Err(Error::NoSuchPrime)
        ));
    }

    #[test]
    fn mu_prop_on_ep_graphs() {
        let sp = SpecPoset::new(&build_ep(&diamond()), CAP).unwrap();
        let r = sp.check_mu_prop().unwrap();
        assert_eq!(r.checked, 4);
        assert!(r.violations.is_empty());
    }
}
