//! Directed classes, tail glbs and the A / R / AC constructions.

use super::{Node, NodeKind, RayPoset, RealizedElement, RelationKind};
use crate::error::{Error, Result};

/// A ≈-class of downward directed subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectedClass {
    /// Subsets with a least element, represented by it.
    Least(RealizedElement),
    /// Subsets without least element; each is ≈ the tail of exactly one ray.
    RayTail(usize),
}

/// Bookkeeping for `A(P)`: old node `i` keeps index `i`, ray `r` gains `x_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ADetails {
    pub added: Vec<(usize, usize)>,
}

impl RayPoset {
    /// One class per ray; the classes with a least element are indexed by
    /// the elements themselves and are not listed.
    pub fn directed_classes(&self) -> Vec<DirectedClass> {
        self.rays().map(DirectedClass::RayTail).collect()
    }

    /// Greatest lower bound of `{(r,n) : n >= 0}` in the realized order.
    ///
    /// Lower bounds are the points below the whole ray and every ray `s`
    /// with `All(s,r)`; a greatest one is a point or the top of such an `s`.
    pub fn glb_tail(&self, r: usize) -> Option<RealizedElement> {
        debug_assert_eq!(self.kind(r), NodeKind::Ray);
        let low_points: Vec<usize> = self
            .points()
            .filter(|&p| self.relation(p, r) == Some(RelationKind::PointBelowRay))
            .collect();
        let low_rays: Vec<usize> = self
            .rays()
            .filter(|&s| self.relation(s, r) == Some(RelationKind::All))
            .collect();
        let point = low_points.iter().copied().find(|&p| {
            low_points
                .iter()
                .all(|&o| o == p || self.relation(o, p) == Some(RelationKind::Lt))
                && low_rays
                    .iter()
                    .all(|&s| self.relation(s, p) == Some(RelationKind::RayBelowPoint))
        });
        if let Some(p) = point {
            return Some(RealizedElement::new(p, 0));
        }
        low_rays
            .iter()
            .copied()
            .find(|&s| {
                low_points
                    .iter()
                    .all(|&p| self.relation(p, s) == Some(RelationKind::PointBelowRay))
                    && low_rays.iter().all(|&o| {
                        o == s
                            || matches!(
                                self.relation(o, s),
                                Some(RelationKind::Sync | RelationKind::All)
                            )
                    })
            })
            .map(|s| RealizedElement::new(s, 0))
    }

    /// Glbs of every ray tail, in ray order.
    pub fn tail_glbs(&self) -> Vec<(usize, Option<RealizedElement>)> {
        self.rays().map(|r| (r, self.glb_tail(r))).collect()
    }

    /// Elements removed by `R`: glbs of directed subsets without least element.
    pub fn removed_elements(&self) -> Vec<RealizedElement> {
        let mut out: Vec<RealizedElement> = self
            .tail_glbs()
            .into_iter()
            .filter_map(|(_, g)| g)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Adjoins a new point `x_r` as glb of each ray tail.
    pub fn apply_a(&self) -> (RayPoset, ADetails) {
        let n = self.len();
        let mut nodes = self.nodes.clone();
        let mut added = Vec::new();
        for r in self.rays() {
            let label = fresh_label(&nodes, &format!("x_{}", self.label(r)));
            added.push((r, nodes.len()));
            nodes.push(Node {
                label,
                kind: NodeKind::Point,
            });
        }
        let mut rels: Vec<(usize, usize, RelationKind)> = self.relations().collect();
        for &(r, x) in &added {
            for q in 0..n {
                match (self.kind(q), self.relation(q, r)) {
                    (NodeKind::Point, Some(RelationKind::PointBelowRay)) => {
                        rels.push((q, x, RelationKind::Lt))
                    }
                    (NodeKind::Ray, Some(RelationKind::All)) => {
                        rels.push((q, x, RelationKind::RayBelowPoint))
                    }
                    _ => {}
                }
                match (self.kind(q), self.relation(r, q)) {
                    (NodeKind::Point, Some(RelationKind::RayBelowPoint)) => {
                        rels.push((x, q, RelationKind::Lt))
                    }
                    (NodeKind::Ray, Some(RelationKind::Sync | RelationKind::All)) => {
                        rels.push((x, q, RelationKind::PointBelowRay))
                    }
                    _ => {}
                }
            }
            rels.push((x, r, RelationKind::PointBelowRay));
            for &(s, y) in &added {
                if matches!(
                    self.relation(r, s),
                    Some(RelationKind::Sync | RelationKind::All)
                ) {
                    rels.push((x, y, RelationKind::Lt));
                }
            }
        }
        let a = RayPoset::from_parts(nodes, &rels).expect("A(P) is a valid presentation");
        (a, ADetails { added })
    }

    /// Removes every glb of a ray tail.
    ///
    /// Fails with [`Error::RayTopRemoval`] when such a glb is a ray element,
    /// since the result would no longer be presentable node-wise.
    pub fn apply_r(&self) -> Result<(RayPoset, Vec<String>)> {
        let mut removed = Vec::new();
        for (r, g) in self.tail_glbs() {
            let Some(g) = g else { continue };
            if self.kind(g.node) == NodeKind::Ray {
                return Err(Error::RayTopRemoval {
                    ray: self.label(r).to_string(),
                    element: self.element_name(g),
                });
            }
            if !removed.contains(&g.node) {
                removed.push(g.node);
            }
        }
        let keep: Vec<usize> = (0..self.len()).filter(|i| !removed.contains(i)).collect();
        removed.sort_unstable();
        let labels = removed.iter().map(|&i| self.label(i).to_string()).collect();
        Ok((self.induced(&keep), labels))
    }

    /// `A(P)` rebuilt from chain analysis.
    ///
    /// Relations are decided through [`RayPoset::leq_realized`] on sampled
    /// levels instead of the node table, so this serves as an independent
    /// route to the same presentation as [`RayPoset::apply_a`].
    pub fn apply_ac(&self) -> RayPoset {
        let n = self.len();
        // Tails of distinct rays are never ≈; keep one representative per class.
        let mut classes: Vec<usize> = Vec::new();
        for r in self.rays() {
            if !classes
                .iter()
                .any(|&c| self.tail_preceq(c, r) && self.tail_preceq(r, c))
            {
                classes.push(r);
            }
        }
        let mut nodes = self.nodes.clone();
        let mut added = Vec::new();
        for &r in &classes {
            let label = fresh_label(&nodes, &format!("x_{}", self.label(r)));
            added.push((r, nodes.len()));
            nodes.push(Node {
                label,
                kind: NodeKind::Point,
            });
        }
        let mut rels: Vec<(usize, usize, RelationKind)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let x = RealizedElement::new(a, 0);
                let y = RealizedElement::new(b, 0);
                let kind = match (self.kind(a), self.kind(b)) {
                    (NodeKind::Point, NodeKind::Point) => {
                        self.leq_realized(x, y).then_some(RelationKind::Lt)
                    }
                    (NodeKind::Point, NodeKind::Ray) => self
                        .is_tail_lower_bound(x, b)
                        .then_some(RelationKind::PointBelowRay),
                    (NodeKind::Ray, NodeKind::Point) => self
                        .leq_realized(x, y)
                        .then_some(RelationKind::RayBelowPoint),
                    (NodeKind::Ray, NodeKind::Ray) => {
                        if self.is_tail_lower_bound(x, b) {
                            Some(RelationKind::All)
                        } else if self.leq_realized(x, y) {
                            Some(RelationKind::Sync)
                        } else {
                            None
                        }
                    }
                };
                if let Some(k) = kind {
                    rels.push((a, b, k));
                }
            }
        }
        for &(r, x) in &added {
            for q in 0..n {
                let top = RealizedElement::new(q, 0);
                if self.is_tail_lower_bound(top, r) {
                    let k = match self.kind(q) {
                        NodeKind::Point => RelationKind::Lt,
                        NodeKind::Ray => RelationKind::RayBelowPoint,
                    };
                    rels.push((q, x, k));
                }
                match self.kind(q) {
                    NodeKind::Point => {
                        if self.leq_realized(RealizedElement::new(r, 1), top) {
                            rels.push((x, q, RelationKind::Lt));
                        }
                    }
                    NodeKind::Ray => {
                        if self.tail_preceq(r, q) {
                            rels.push((x, q, RelationKind::PointBelowRay));
                        }
                    }
                }
            }
            for &(s, y) in &added {
                if r != s && self.tail_preceq(r, s) {
                    rels.push((x, y, RelationKind::Lt));
                }
            }
        }
        RayPoset::from_parts(nodes, &rels).expect("AC(P) is a valid presentation")
    }

    /// `x` is below every element of `tail(r)`. Probes two levels beyond
    /// `x`, which suffices because every relation is level-uniform or
    /// level-synchronised.
    pub(crate) fn is_tail_lower_bound(&self, x: RealizedElement, r: usize) -> bool {
        (x.level + 1..=x.level + 2).all(|l| self.leq_realized(x, RealizedElement::new(r, l)))
            && x.node != r
    }

    /// `tail(r) ⪯ tail(s)`: every `(s,m)` dominates some `(r,n)`.
    pub(crate) fn tail_preceq(&self, r: usize, s: usize) -> bool {
        (0..=2)
            .all(|m| self.leq_realized(RealizedElement::new(r, m + 1), RealizedElement::new(s, m)))
    }

    /// Glb of `tail(r)` found by searching realized elements, without the
    /// node-table shortcut used by [`RayPoset::glb_tail`].
    pub fn glb_tail_search(&self, r: usize) -> Option<RealizedElement> {
        let lower: Vec<RealizedElement> = self
            .elements_upto(1)
            .into_iter()
            .filter(|&x| self.is_tail_lower_bound(x, r))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&g| lower.iter().all(|&y| self.leq_realized(y, g)))
    }
}

fn fresh_label(nodes: &[Node], base: &str) -> String {
    let taken = |l: &str| nodes.iter().any(|n| n.label == l);
    if !taken(base) {
        return base.to_string();
    }
    (2..)
        .map(|k| format!("{base}_{k}"))
        .find(|l| !taken(l))
        .expect("unbounded suffixes")
}
