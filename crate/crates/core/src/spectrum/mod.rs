//! Prime spectra of graph algebras, as vertex-set combinatorics.

mod spec;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Cycle, Mult, MultiGraph, VertexSet};
use crate::poset::FinitePoset;

pub use spec::{intersect_primes, Ideal, Intersection, MuReport, PrimeRef, SpecPoset};

/// Symbolic parameter of a cycle family; never expanded.
pub const FAMILY_PARAMETER: &str = "irreducible f in K[x, x^-1]";

/// Graph with a vertex `v_p` per element and infinitely many edges
/// `v_p -> v_q` whenever `p > q`.
pub fn build_ep(p: &FinitePoset) -> MultiGraph {
    let labels: Vec<String> = p.labels().iter().map(|l| format!("v_{l}")).collect();
    let edges: Vec<(usize, usize, Mult)> = p
        .strict_pairs()
        .map(|(lo, hi)| (hi, lo, Mult::Inf))
        .collect();
    MultiGraph::from_parts(labels, &edges).expect("vertex labels are distinct")
}

/// Checks the structural facts every `E_P` must satisfy. Returns the first
/// failing fact.
pub fn ep_postconditions(p: &FinitePoset, g: &MultiGraph, cap: usize) -> Result<Option<String>> {
    if !g.is_acyclic() {
        return Ok(Some("graph has a cycle".into()));
    }
    for a in 0..p.len() {
        for b in 0..p.len() {
            if g.reaches(a, b) != p.leq(b, a) {
                return Ok(Some(format!(
                    "vertex order differs from poset order at ({}, {})",
                    p.label(a),
                    p.label(b)
                )));
            }
        }
    }
    if let Some(v) = (0..g.len()).find(|&v| g.is_regular(v)) {
        return Ok(Some(format!("{} is regular", g.label(v))));
    }
    for h in g.hereditary_saturated_sets(cap)? {
        if !g.breaking_vertices(h)?.is_empty() {
            return Ok(Some(format!("breaking vertex for {:?}", g.set_labels(h))));
        }
    }
    Ok(None)
}

/// A prime ideal by its type and vertex data `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeDescriptor {
    Graded { h: VertexSet },
    BreakingOmitted { h: VertexSet, omitted: usize },
    CycleFamily { h: VertexSet, cycle: Vec<usize> },
}

impl PrimeDescriptor {
    /// Vertices in the ideal.
    pub fn h(&self) -> VertexSet {
        match self {
            PrimeDescriptor::Graded { h }
            | PrimeDescriptor::BreakingOmitted { h, .. }
            | PrimeDescriptor::CycleFamily { h, .. } => *h,
        }
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.h().contains(v)
    }

    pub fn to_json(&self, g: &MultiGraph) -> PrimeJson {
        match self {
            PrimeDescriptor::Graded { h } => PrimeJson::Graded {
                h: g.set_labels(*h),
            },
            PrimeDescriptor::BreakingOmitted { h, omitted } => PrimeJson::BreakingOmitted {
                h: g.set_labels(*h),
                omitted: g.label(*omitted).to_string(),
            },
            PrimeDescriptor::CycleFamily { h, cycle } => PrimeJson::CycleFamily {
                h: g.set_labels(*h),
                cycle: cycle.iter().map(|&v| g.label(v).to_string()).collect(),
                parameter: FAMILY_PARAMETER.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum PrimeJson {
    Graded {
        h: Vec<String>,
    },
    BreakingOmitted {
        h: Vec<String>,
        omitted: String,
    },
    CycleFamily {
        h: Vec<String>,
        cycle: Vec<String>,
        parameter: String,
    },
}

impl PrimeJson {
    pub fn into_descriptor(self, g: &MultiGraph) -> Result<PrimeDescriptor> {
        Ok(match self {
            PrimeJson::Graded { h } => PrimeDescriptor::Graded {
                h: g.vertex_set(&h)?,
            },
            PrimeJson::BreakingOmitted { h, omitted } => PrimeDescriptor::BreakingOmitted {
                h: g.vertex_set(&h)?,
                omitted: g.vertex(&omitted)?,
            },
            PrimeJson::CycleFamily { h, cycle, .. } => PrimeDescriptor::CycleFamily {
                h: g.vertex_set(&h)?,
                cycle: cycle.iter().map(|v| g.vertex(v)).collect::<Result<_>>()?,
            },
        })
    }
}

/// All primes by type, following the three-way classification by `H`,
/// breaking vertices and WK cycles. Ordered by `H` bitmask, then type.
pub fn enumerate_primes(g: &MultiGraph, cap: usize) -> Result<Vec<PrimeDescriptor>> {
    let n = g.len();
    let wk: Vec<Cycle> = g.wk_cycles(cap)?;
    let mut out = Vec::new();
    for h in g.hereditary_saturated_sets(cap)? {
        let rest = h.complement(n);
        if g.satisfies_mt3(rest) {
            out.push(PrimeDescriptor::Graded { h });
        }
        for u in g.breaking_vertices(h)?.iter() {
            if rest == g.big_m(u) {
                out.push(PrimeDescriptor::BreakingOmitted { h, omitted: u });
            }
        }
        for c in &wk {
            if rest == g.big_m(c.source()) {
                out.push(PrimeDescriptor::CycleFamily {
                    h,
                    cycle: c.vertices.clone(),
                });
            }
        }
    }
    Ok(out)
}
