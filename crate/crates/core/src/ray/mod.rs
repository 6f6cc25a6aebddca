//! Countable posets presented by finitely many nodes.
//!
//! A node is either a point (one element) or a ray, which stands for a
//! descending ω-chain `(r,0) > (r,1) > (r,2) > …`. Nodes are linked by typed
//! relations whose realized meaning is:
//!
//! | kind              | realized order                         |
//! |-------------------|----------------------------------------|
//! | `Lt(p,q)`         | `p < q`                                |
//! | `PointBelowRay`   | `p < (r,n)` for every `n`              |
//! | `RayBelowPoint`   | `(r,n) < q` for every `n`              |
//! | `Sync(r,s)`       | `(r,n) <= (s,m)` iff `n >= m`          |
//! | `All(r,s)`        | `(r,n) < (s,m)` for every `n, m`       |
//!
//! The relation set is always stored transitively closed, so realized
//! comparability is a single table lookup.

mod io;
mod iso;
mod ops;
mod props;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

pub use io::{NodeJson, RayPosetJson, RelationJson};
pub use iso::{is_structural_iso, structural_iso, NodeIso, DEFAULT_GUARD_DEPTH};
pub use ops::{ADetails, DirectedClass};
pub use props::{PropertyCheck, Witness};

/// Default truncation depth used by the finite oracles.
pub const DEFAULT_DEPTH: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Point,
    Ray,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Lt,
    PointBelowRay,
    RayBelowPoint,
    Sync,
    All,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Lt => "lt",
            RelationKind::PointBelowRay => "point_below_ray",
            RelationKind::RayBelowPoint => "ray_below_point",
            RelationKind::Sync => "sync",
            RelationKind::All => "all",
        }
    }

    fn fits(self, lo: NodeKind, hi: NodeKind) -> bool {
        use NodeKind::*;
        matches!(
            (self, lo, hi),
            (RelationKind::Lt, Point, Point)
                | (RelationKind::PointBelowRay, Point, Ray)
                | (RelationKind::RayBelowPoint, Ray, Point)
                | (RelationKind::Sync, Ray, Ray)
                | (RelationKind::All, Ray, Ray)
        )
    }

    /// Kind of a closed relation between nodes of the given kinds. `uniform`
    /// is false only for ray-to-ray paths made of `Sync` steps alone.
    fn between(lo: NodeKind, hi: NodeKind, uniform: bool) -> RelationKind {
        use NodeKind::*;
        match (lo, hi) {
            (Point, Point) => RelationKind::Lt,
            (Point, Ray) => RelationKind::PointBelowRay,
            (Ray, Point) => RelationKind::RayBelowPoint,
            (Ray, Ray) if uniform => RelationKind::All,
            (Ray, Ray) => RelationKind::Sync,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub label: String,
    pub kind: NodeKind,
}

/// One element of the denoted poset: a point (level 0) or `(ray, level)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealizedElement {
    pub node: usize,
    pub level: usize,
}

impl RealizedElement {
    pub fn new(node: usize, level: usize) -> Self {
        RealizedElement { node, level }
    }
}

/// A validated ray poset; relations are transitively closed.
#[derive(Clone, Debug)]
pub struct RayPoset {
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
    rel: Vec<Vec<Option<RelationKind>>>,
}

impl PartialEq for RayPoset {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.rel == other.rel
    }
}

impl Eq for RayPoset {}

/// Relations added by the validator beyond what was declared.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureReport {
    pub derived: Vec<(String, String, RelationKind)>,
}

impl RayPoset {
    /// Validates and closes a node/relation presentation.
    pub fn new<S: AsRef<str>>(
        nodes: &[(S, NodeKind)],
        relations: &[(S, S, RelationKind)],
    ) -> Result<Self> {
        Self::with_report(nodes, relations).map(|(p, _)| p)
    }

    pub fn with_report<S: AsRef<str>>(
        nodes: &[(S, NodeKind)],
        relations: &[(S, S, RelationKind)],
    ) -> Result<(Self, ClosureReport)> {
        let nodes: Vec<Node> = nodes
            .iter()
            .map(|(l, k)| Node {
                label: l.as_ref().to_string(),
                kind: *k,
            })
            .collect();
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(n.label.clone()));
            }
        }
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownNode(l.to_string()))
        };
        let mut declared = Vec::with_capacity(relations.len());
        for (lo, hi, kind) in relations {
            declared.push((lookup(lo.as_ref())?, lookup(hi.as_ref())?, *kind));
        }
        Self::close(nodes, index, &declared)
    }

    fn close(
        nodes: Vec<Node>,
        index: HashMap<String, usize>,
        declared: &[(usize, usize, RelationKind)],
    ) -> Result<(Self, ClosureReport)> {
        let n = nodes.len();
        // reach[a][b] = Some(uniform)
        let mut reach: Vec<Vec<Option<bool>>> = vec![vec![None; n]; n];
        let mut declared_kind: Vec<Vec<Option<RelationKind>>> = vec![vec![None; n]; n];
        for &(lo, hi, kind) in declared {
            let (l, h) = (&nodes[lo], &nodes[hi]);
            if lo == hi {
                return Err(Error::NodeCycle(l.label.clone()));
            }
            if !kind.fits(l.kind, h.kind) {
                return Err(Error::InvalidRelation {
                    lo: l.label.clone(),
                    hi: h.label.clone(),
                    kind: kind.name().to_string(),
                });
            }
            if let Some(prev) = declared_kind[lo][hi] {
                if prev != kind {
                    return Err(Error::ClosureConflict {
                        lo: l.label.clone(),
                        hi: h.label.clone(),
                        detail: format!("declared both `{prev}` and `{kind}`"),
                    });
                }
            }
            declared_kind[lo][hi] = Some(kind);
            let uniform = kind != RelationKind::Sync;
            reach[lo][hi] = Some(reach[lo][hi].unwrap_or(false) || uniform);
        }
        // A step is non-uniform only between two rays related by Sync; any
        // path through a point or an All step is uniform.
        for k in 0..n {
            let through_point = nodes[k].kind == NodeKind::Point;
            for a in 0..n {
                let Some(ak) = reach[a][k] else { continue };
                let row_k = reach[k].clone();
                for (b, kb) in row_k.into_iter().enumerate() {
                    let Some(kb) = kb else { continue };
                    let uniform = ak || kb || through_point;
                    reach[a][b] = Some(reach[a][b].unwrap_or(false) || uniform);
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| reach[a][a].is_some()) {
            return Err(Error::NodeCycle(nodes[a].label.clone()));
        }
        let mut rel = vec![vec![None; n]; n];
        let mut report = ClosureReport::default();
        for a in 0..n {
            for b in 0..n {
                let Some(uniform) = reach[a][b] else { continue };
                let kind = RelationKind::between(nodes[a].kind, nodes[b].kind, uniform);
                match declared_kind[a][b] {
                    Some(d) if d != kind => {
                        return Err(Error::ClosureConflict {
                            lo: nodes[a].label.clone(),
                            hi: nodes[b].label.clone(),
                            detail: format!("declared `{d}` but closure forces `{kind}`"),
                        });
                    }
                    Some(_) => {}
                    None => {
                        report
                            .derived
                            .push((nodes[a].label.clone(), nodes[b].label.clone(), kind))
                    }
                }
                rel[a][b] = Some(kind);
            }
        }
        Ok((RayPoset { nodes, index, rel }, report))
    }

    /// Rebuilds from index triples (used by the A/R constructions).
    pub(crate) fn from_parts(
        nodes: Vec<Node>,
        relations: &[(usize, usize, RelationKind)],
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(n.label.clone()));
            }
        }
        Self::close(nodes, index, relations).map(|(p, _)| p)
    }

    /// Every finite poset is a ray poset without rays.
    pub fn from_finite(p: &FinitePoset) -> Self {
        let nodes: Vec<Node> = p
            .labels()
            .iter()
            .map(|l| Node {
                label: l.clone(),
                kind: NodeKind::Point,
            })
            .collect();
        let rels: Vec<(usize, usize, RelationKind)> = p
            .covers()
            .iter()
            .map(|&(a, b)| (a, b, RelationKind::Lt))
            .collect();
        Self::from_parts(nodes, &rels).expect("finite poset is acyclic")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn label(&self, i: usize) -> &str {
        &self.nodes[i].label
    }

    pub fn kind(&self, i: usize) -> NodeKind {
        self.nodes[i].kind
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn node(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownNode(label.to_string()))
    }

    /// Closed relation from `lo` to `hi`, if any.
    pub fn relation(&self, lo: usize, hi: usize) -> Option<RelationKind> {
        self.rel[lo][hi]
    }

    /// All closed relations in index order.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize, RelationKind)> + '_ {
        (0..self.len()).flat_map(move |a| {
            (0..self.len()).filter_map(move |b| self.rel[a][b].map(|k| (a, b, k)))
        })
    }

    pub fn rays(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.kind(i) == NodeKind::Ray)
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.kind(i) == NodeKind::Point)
    }

    pub fn ray_count(&self) -> usize {
        self.rays().count()
    }

    /// Address of a realized element by label.
    pub fn element(&self, label: &str, level: usize) -> Result<RealizedElement> {
        let node = self.node(label)?;
        if self.kind(node) == NodeKind::Point && level != 0 {
            return Err(Error::UnknownNode(format!("{label}[{level}]")));
        }
        Ok(RealizedElement::new(node, level))
    }

    /// Display name: points by label, ray elements as `label[level]`.
    pub fn element_name(&self, x: RealizedElement) -> String {
        match self.kind(x.node) {
            NodeKind::Point => self.label(x.node).to_string(),
            NodeKind::Ray => format!("{}[{}]", self.label(x.node), x.level),
        }
    }

    /// Realized order `x <= y`.
    pub fn leq_realized(&self, x: RealizedElement, y: RealizedElement) -> bool {
        if x.node == y.node {
            return match self.kind(x.node) {
                NodeKind::Point => true,
                NodeKind::Ray => x.level >= y.level,
            };
        }
        match self.rel[x.node][y.node] {
            None => false,
            Some(RelationKind::Sync) => x.level >= y.level,
            Some(_) => true,
        }
    }

    pub fn lt_realized(&self, x: RealizedElement, y: RealizedElement) -> bool {
        x != y && self.leq_realized(x, y)
    }

    /// Realized elements with level at most `max_level`, node-major.
    pub fn elements_upto(&self, max_level: usize) -> Vec<RealizedElement> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            match self.kind(i) {
                NodeKind::Point => out.push(RealizedElement::new(i, 0)),
                NodeKind::Ray => out.extend((0..=max_level).map(|l| RealizedElement::new(i, l))),
            }
        }
        out
    }

    /// Finite restriction to points and the top `depth` levels of each ray.
    ///
    /// Built from generating pairs and closed as a finite poset, without going
    /// through [`RayPoset::leq_realized`]; it serves as an independent oracle
    /// for the realized order.
    pub fn truncate(&self, depth: usize) -> FinitePoset {
        assert!(depth >= 1, "truncation depth must be positive");
        let mut labels = Vec::new();
        let mut first = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            first.push(labels.len());
            match self.kind(i) {
                NodeKind::Point => labels.push(self.label(i).to_string()),
                NodeKind::Ray => {
                    labels.extend((0..depth).map(|l| format!("{}[{}]", self.label(i), l)))
                }
            }
        }
        let bottom = depth - 1;
        let mut pairs = Vec::new();
        for r in self.rays() {
            pairs.extend((0..bottom).map(|l| (first[r] + l + 1, first[r] + l)));
        }
        for (a, b, kind) in self.relations() {
            match kind {
                RelationKind::Lt => pairs.push((first[a], first[b])),
                RelationKind::PointBelowRay => pairs.push((first[a], first[b] + bottom)),
                RelationKind::RayBelowPoint => pairs.push((first[a], first[b])),
                RelationKind::Sync => {
                    pairs.extend((0..depth).map(|l| (first[a] + l, first[b] + l)))
                }
                RelationKind::All => pairs.push((first[a], first[b] + bottom)),
            }
        }
        FinitePoset::from_indices(labels, &pairs).expect("truncation of a valid ray poset")
    }

    /// Index of a realized element inside `truncate(depth)`.
    pub fn truncation_index(&self, x: RealizedElement, depth: usize) -> Option<usize> {
        let mut offset = 0;
        for i in 0..self.len() {
            let width = match self.kind(i) {
                NodeKind::Point => 1,
                NodeKind::Ray => depth,
            };
            if i == x.node {
                return (x.level < width).then_some(offset + x.level);
            }
            offset += width;
        }
        None
    }

    /// Sub-presentation on the kept nodes, in order.
    pub(crate) fn induced(&self, keep: &[usize]) -> RayPoset {
        let nodes: Vec<Node> = keep.iter().map(|&i| self.nodes[i].clone()).collect();
        let mut rels = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if let Some(k) = self.rel[i][j] {
                    rels.push((a, b, k));
                }
            }
        }
        RayPoset::from_parts(nodes, &rels).expect("induced presentation stays closed")
    }

    /// Closed relations that are not implied through an intermediate node.
    pub fn reduced_relations(&self) -> Vec<(usize, usize, RelationKind)> {
        self.relations()
            .filter(|&(a, b, kind)| {
                !(0..self.len()).any(|k| {
                    k != a
                        && k != b
                        && self.rel[a][k].is_some()
                        && self.rel[k][b].is_some()
                        && self.compose(a, k, b) == kind
                })
            })
            .collect()
    }

    fn compose(&self, a: usize, k: usize, b: usize) -> RelationKind {
        let uniform = self.kind(k) == NodeKind::Point
            || self.rel[a][k] != Some(RelationKind::Sync)
            || self.rel[k][b] != Some(RelationKind::Sync);
        RelationKind::between(self.kind(a), self.kind(b), uniform)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::NodeKind::{Point, Ray};
    use super::RelationKind::*;
    use super::*;

    /// `{0} ∪ {1/n}`: a point below a ray.
    pub fn zero_and_ray() -> RayPoset {
        RayPoset::new(&[("0", Point), ("S", Ray)], &[("0", "S", PointBelowRay)]).unwrap()
    }

    pub fn ray_alone() -> RayPoset {
        RayPoset::new(&[("S", Ray)], &[]).unwrap()
    }

    /// Two incomparable rays over a common bottom.
    pub fn two_ray() -> RayPoset {
        RayPoset::new(
            &[("0", Point), ("M", Ray), ("N", Ray)],
            &[("0", "M", PointBelowRay), ("0", "N", PointBelowRay)],
        )
        .unwrap()
    }

    pub fn dc_vs_strong_dc() -> RayPoset {
        RayPoset::new(
            &[("r", Point), ("q", Point), ("R", Ray), ("Q", Ray)],
            &[
                ("r", "R", PointBelowRay),
                ("q", "Q", PointBelowRay),
                ("R", "Q", Sync),
                ("r", "q", Lt),
            ],
        )
        .unwrap()
    }
}
