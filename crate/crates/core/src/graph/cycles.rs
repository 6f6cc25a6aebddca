use super::{Mult, MultiGraph};
use crate::error::Result;

/// A vertex-simple cycle, rotated to start at its smallest vertex index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    /// Number of distinct edge-level cycles on this vertex sequence.
    pub parallel: Mult,
}

impl Cycle {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }
}

impl MultiGraph {
    /// All vertex-simple cycles, ordered by starting vertex then by DFS order.
    pub fn cycles(&self, cap: usize) -> Result<Vec<Cycle>> {
        self.check_cap(cap)?;
        let mut out = Vec::new();
        for start in 0..self.len() {
            let mut path = vec![start];
            let mut on_path = vec![false; self.len()];
            on_path[start] = true;
            self.extend_cycles(start, &mut path, &mut on_path, &mut out);
        }
        Ok(out)
    }

    fn extend_cycles(
        &self,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Cycle>,
    ) {
        let last = *path.last().expect("path is nonempty");
        for next in self.children(last).iter() {
            if next == start {
                let parallel = path
                    .iter()
                    .zip(path.iter().skip(1).chain(std::iter::once(&start)))
                    .fold(Mult::Finite(1), |acc, (&a, &b)| acc * self.mult(a, b));
                out.push(Cycle {
                    vertices: path.clone(),
                    parallel,
                });
            } else if next > start && !on_path[next] {
                on_path[next] = true;
                path.push(next);
                self.extend_cycles(start, path, on_path, out);
                path.pop();
                on_path[next] = false;
            }
        }
    }

    /// Cycles no vertex of which is the source of a different cycle.
    ///
    /// Parallel edges give distinct cycles on the same vertex sequence, so a
    /// cycle with `parallel > 1` is never WK.
    pub fn wk_cycles(&self, cap: usize) -> Result<Vec<Cycle>> {
        let all = self.cycles(cap)?;
        Ok(all
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                c.parallel == Mult::Finite(1)
                    && all
                        .iter()
                        .enumerate()
                        .all(|(j, d)| j == *i || !d.vertices.iter().any(|&v| c.contains(v)))
            })
            .map(|(_, c)| c.clone())
            .collect())
    }
}
