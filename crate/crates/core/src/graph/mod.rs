//! Finite directed graphs with edge multiplicities in ℕ ∪ {∞}.
//!
//! Only edge counts matter to every predicate implemented here, so a graph is
//! a multiplicity matrix. Vertex sets are bitmasks over vertex indices.

mod cycles;
mod io;
mod tails;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

pub use cycles::Cycle;
pub use io::{EdgeJson, GraphJson, MultJson};
pub use tails::TailUnionReport;

/// Vertex cap for subset enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 20;
/// Largest vertex count a [`VertexSet`] can address.
pub const MAX_VERTICES: usize = 64;

/// Edge multiplicity; `Zero` means no edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mult {
    #[default]
    Zero,
    Finite(u64),
    Inf,
}

impl Mult {
    pub fn from_count(n: u64) -> Mult {
        if n == 0 {
            Mult::Zero
        } else {
            Mult::Finite(n)
        }
    }

    pub fn is_zero(self) -> bool {
        self == Mult::Zero
    }

    pub fn is_inf(self) -> bool {
        self == Mult::Inf
    }
}

impl Mul for Mult {
    type Output = Mult;

    fn mul(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Zero, _) | (_, Mult::Zero) => Mult::Zero,
            (Mult::Inf, _) | (_, Mult::Inf) => Mult::Inf,
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a.saturating_mul(b)),
        }
    }
}

impl Add for Mult {
    type Output = Mult;

    fn add(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Inf, _) | (_, Mult::Inf) => Mult::Inf,
            (Mult::Zero, m) | (m, Mult::Zero) => m,
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a.saturating_add(b)),
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Zero => f.write_str("0"),
            Mult::Finite(n) => write!(f, "{n}"),
            Mult::Inf => f.write_str("inf"),
        }
    }
}

/// A set of vertices as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> VertexSet {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1 << v)
    }

    pub fn from_indices(vs: impl IntoIterator<Item = usize>) -> VertexSet {
        VertexSet(vs.into_iter().fold(0, |m, v| m | 1 << v))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                v
            })
        })
    }
}

/// A finite graph with multiplicity-weighted edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    mult: Vec<Vec<Mult>>,
    /// `desc[u]`: vertices `v` with `u >= v` (a path from `u` to `v`).
    desc: Vec<VertexSet>,
}

impl MultiGraph {
    /// Builds a graph; repeated edges add their multiplicities.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, Mult)]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(l.to_string()))
        };
        let mut triples = Vec::with_capacity(edges.len());
        for (s, d, m) in edges {
            if m.is_zero() {
                return Err(Error::BadMultiplicity);
            }
            triples.push((lookup(s.as_ref())?, lookup(d.as_ref())?, *m));
        }
        Self::from_parts(labels, &triples)
    }

    pub(crate) fn from_parts(labels: Vec<String>, edges: &[(usize, usize, Mult)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded {
                size: n,
                cap: MAX_VERTICES,
            });
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect::<HashMap<_, _>>();
        if index.len() != n {
            let dup = labels
                .iter()
                .enumerate()
                .find(|(i, l)| index[*l] != *i)
                .map(|(_, l)| l.clone())
                .unwrap_or_default();
            return Err(Error::DuplicateLabel(dup));
        }
        let mut mult = vec![vec![Mult::Zero; n]; n];
        for &(s, d, m) in edges {
            mult[s][d] = mult[s][d] + m;
        }
        let mut desc: Vec<VertexSet> = (0..n)
            .map(|u| {
                let mut s = VertexSet::singleton(u);
                for (v, m) in mult[u].iter().enumerate() {
                    if !m.is_zero() {
                        s.insert(v);
                    }
                }
                s
            })
            .collect();
        for k in 0..n {
            for u in 0..n {
                if desc[u].contains(k) {
                    desc[u] = desc[u].union(desc[k]);
                }
            }
        }
        Ok(MultiGraph {
            labels,
            index,
            mult,
            desc,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn vertex_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        let mut s = VertexSet::EMPTY;
        for l in labels {
            s.insert(self.vertex(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn set_labels(&self, s: VertexSet) -> Vec<String> {
        s.iter().map(|v| self.labels[v].clone()).collect()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn mult(&self, src: usize, dst: usize) -> Mult {
        self.mult[src][dst]
    }

    /// Edges with nonzero multiplicity, row-major.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Mult)> + '_ {
        (0..self.len()).flat_map(move |s| {
            (0..self.len()).filter_map(move |d| {
                let m = self.mult[s][d];
                (!m.is_zero()).then_some((s, d, m))
            })
        })
    }

    pub fn children(&self, v: usize) -> VertexSet {
        VertexSet::from_indices((0..self.len()).filter(|&d| !self.mult[v][d].is_zero()))
    }

    pub fn out_degree(&self, v: usize) -> Mult {
        self.mult[v].iter().fold(Mult::Zero, |a, &m| a + m)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_degree(v).is_zero()
    }

    /// Finite nonzero out-degree. Infinite emitters and sinks are not regular.
    pub fn is_regular(&self, v: usize) -> bool {
        matches!(self.out_degree(v), Mult::Finite(_))
    }

    pub fn is_infinite_emitter(&self, v: usize) -> bool {
        self.out_degree(v).is_inf()
    }

    /// `u >= v`: a path (possibly empty) from `u` to `v`.
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.desc[u].contains(v)
    }

    pub fn reaches_labels(&self, u: &str, v: &str) -> Result<bool> {
        Ok(self.reaches(self.vertex(u)?, self.vertex(v)?))
    }

    /// Vertices reachable from `u`, including `u`.
    pub fn descendants(&self, u: usize) -> VertexSet {
        self.desc[u]
    }

    /// `ℳ(v) = {w : w >= v}`.
    pub fn big_m(&self, v: usize) -> VertexSet {
        VertexSet::from_indices((0..self.len()).filter(|&w| self.reaches(w, v)))
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.len()).all(|u| self.children(u).iter().all(|c| !self.reaches(c, u)))
    }

    /// Stable content hash, used to tie prime descriptors to their graph.
    pub fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.labels.hash(&mut h);
        self.mult.hash(&mut h);
        h.finish()
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        let cap = cap.min(MAX_VERTICES - 1);
        if self.len() > cap {
            return Err(Error::CapExceeded {
                size: self.len(),
                cap,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn chain2() -> MultiGraph {
        MultiGraph::new(&["a", "b"], &[("a", "b", Mult::Finite(1))]).unwrap()
    }

    pub fn single() -> MultiGraph {
        MultiGraph::new::<&str>(&["v"], &[]).unwrap()
    }

    pub fn loops(k: u64) -> MultiGraph {
        MultiGraph::new(&["v"], &[("v", "v", Mult::Finite(k))]).unwrap()
    }

    pub fn breaking() -> MultiGraph {
        MultiGraph::new(
            &["w", "a", "b"],
            &[("w", "a", Mult::Inf), ("w", "b", Mult::Finite(1))],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn mult_arithmetic() {
        assert_eq!(Mult::Finite(2) + Mult::Finite(3), Mult::Finite(5));
        assert_eq!(Mult::Finite(2) + Mult::Inf, Mult::Inf);
        assert_eq!(Mult::Zero + Mult::Finite(1), Mult::Finite(1));
        assert_eq!(Mult::Finite(2) * Mult::Finite(3), Mult::Finite(6));
        assert_eq!(Mult::Inf * Mult::Zero, Mult::Zero);
        assert_eq!(Mult::from_count(0), Mult::Zero);
    }

    #[test]
    fn vertex_set_ops() {
        let s = VertexSet::from_indices([0, 2, 5]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.complement(6), VertexSet::from_indices([1, 3, 4]));
        assert!(VertexSet::singleton(2).is_subset(s));
        assert_eq!(VertexSet::full(64).len(), 64);
    }

    #[test]
    fn reachability() {
        let g = chain2();
        assert!(g.reaches(0, 1));
        assert!(!g.reaches(1, 0));
        assert!(g.reaches(1, 1));
        let s = single();
        assert_eq!(s.big_m(0), VertexSet::singleton(0));
        let iso = MultiGraph::new::<&str>(&["a", "b"], &[]).unwrap();
        assert!(!iso.reaches_labels("a", "b").unwrap());
        assert!(iso.reaches_labels("a", "z").is_err());
    }

    #[test]
    fn vertex_kinds() {
        let g = breaking();
        assert!(g.is_infinite_emitter(0));
        assert!(!g.is_regular(0));
        assert!(g.is_sink(1));
        assert!(!g.is_regular(1));
        assert!(chain2().is_regular(0));
    }

    #[test]
    fn repeated_edges_add_up() {
        let g = MultiGraph::new(
            &["a", "b"],
            &[("a", "b", Mult::Finite(1)), ("a", "b", Mult::Finite(2))],
        )
        .unwrap();
        assert_eq!(g.mult(0, 1), Mult::Finite(3));
    }

    #[test]
    fn zero_multiplicity_rejected() {
        let err = MultiGraph::new(&["a", "b"], &[("a", "b", Mult::Zero)]).unwrap_err();
        assert!(matches!(err, Error::BadMultiplicity));
    }

    #[test]
    fn acyclicity() {
        assert!(chain2().is_acyclic());
        assert!(!loops(1).is_acyclic());
    }
}
