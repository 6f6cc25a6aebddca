//! Finite partially ordered sets stored as dense relation matrices.

mod io;
mod iso;
mod ops;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub(crate) use io::escape as io_escape;
pub use io::PosetJson;
pub use iso::{order_iso, OrderMap};
pub use ops::{apply_a_finite, apply_r_finite, check_property_finite};

/// Largest carrier for which subset enumeration is attempted by default.
pub const DEFAULT_CAP: usize = 24;

/// A finite poset on labelled elements.
///
/// The relation is kept both row-wise (`up[i]` = elements above `i`) and
/// column-wise (`down[i]` = elements below `i`); both are reflexive.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Builds a poset from labels and any generating set of `(lower, upper)` pairs.
    pub fn new<S: AsRef<str>>(elements: &[S], le_pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let mut pairs = Vec::with_capacity(le_pairs.len());
        for (lo, hi) in le_pairs {
            let lo = *index
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownElement(lo.as_ref().to_string()))?;
            let hi = *index
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownElement(hi.as_ref().to_string()))?;
            pairs.push((lo, hi));
        }
        Self::build(labels, index, &pairs)
    }

    /// Same as [`FinitePoset::new`] with pairs given as element indices.
    pub fn from_indices(labels: Vec<String>, le_pairs: &[(usize, usize)]) -> Result<Self> {
        let index = index_labels(&labels)?;
        for &(lo, hi) in le_pairs {
            for i in [lo, hi] {
                if i >= labels.len() {
                    return Err(Error::UnknownElement(format!("#{i}")));
                }
            }
        }
        Self::build(labels, index, le_pairs)
    }

    fn build(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(lo, hi) in pairs {
            up[lo].insert(hi);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let mut poset = FinitePoset {
            labels,
            index,
            up,
            down,
            covers: Vec::new(),
        };
        poset.covers = poset.compute_covers();
        Ok(poset)
    }

    fn compute_covers(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].ones() {
                if j == i {
                    continue;
                }
                let mut between = self.up[i].clone();
                between.intersect_with(&self.down[j]);
                if between.count_ones(..) == 2 {
                    covers.push((i, j));
                }
            }
        }
        covers
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Resolves labels to indices.
    pub fn indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownElement(l.as_ref().to_string()))
            })
            .collect()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.up[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Hasse covers `(lower, upper)` in index order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.covers.binary_search(&(a, b)).is_ok()
    }

    /// Elements `>= a`, including `a`.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// Elements `<= a`, including `a`.
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    /// All strict pairs `a < b`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| {
            self.up[a]
                .ones()
                .filter(move |&b| b != a)
                .map(move |b| (a, b))
        })
    }

    /// Number of strict comparabilities below and above each element.
    pub fn degree_profile(&self, a: usize) -> (usize, usize) {
        (
            self.down[a].count_ones(..) - 1,
            self.up[a].count_ones(..) - 1,
        )
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.down[i].count_ones(..));
        let mut height = vec![0; self.len()];
        for &j in &order {
            height[j] = self.down[j]
                .ones()
                .filter(|&i| i != j)
                .map(|i| height[i] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }

    /// Sub-poset induced on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> FinitePoset {
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut pairs = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if i != j && self.leq(i, j) {
                    pairs.push((a, b));
                }
            }
        }
        FinitePoset::from_indices(labels, &pairs).expect("induced order is a partial order")
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        let cap = cap.min(63);
        if self.len() > cap {
            Err(Error::CapExceeded {
                size: self.len(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn down_mask(&self, a: usize) -> u64 {
        self.down[a].ones().fold(0, |m, i| m | 1 << i)
    }

    pub(crate) fn up_mask(&self, a: usize) -> u64 {
        self.up[a].ones().fold(0, |m, i| m | 1 << i)
    }

    fn lower_bounds(&self, subset: &[usize]) -> FixedBitSet {
        let mut lower = FixedBitSet::with_capacity(self.len());
        lower.insert_range(..);
        for &s in subset {
            lower.intersect_with(&self.down[s]);
        }
        lower
    }

    /// Greatest lower bound of `subset`, if it exists.
    ///
    /// The empty subset has every element as a lower bound, so its glb is the
    /// top element of the poset when there is one.
    pub fn glb(&self, subset: &[usize]) -> Option<usize> {
        let lower = self.lower_bounds(subset);
        lower.ones().find(|&g| lower.is_subset(&self.down[g]))
    }

    /// Least element of `subset`, if any.
    pub fn least(&self, subset: &[usize]) -> Option<usize> {
        subset
            .iter()
            .copied()
            .find(|&x| subset.iter().all(|&y| self.leq(x, y)))
    }

    /// Whether `subset` is nonempty and every pair has a common lower bound inside it.
    pub fn is_downward_directed(&self, subset: &[usize]) -> bool {
        if subset.is_empty() {
            return false;
        }
        let mut inside = FixedBitSet::with_capacity(self.len());
        inside.extend(subset.iter().copied());
        subset.iter().enumerate().all(|(k, &a)| {
            subset[k + 1..].iter().all(|&b| {
                let mut common = self.down[a].clone();
                common.intersect_with(&self.down[b]);
                !common.is_disjoint(&inside)
            })
        })
    }

    pub fn is_chain(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .enumerate()
            .all(|(k, &a)| subset[k + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    /// Enumerates the downward directed subsets in increasing bitmask order.
    pub fn downward_directed_subsets(&self, cap: usize) -> Result<DirectedSubsets<'_>> {
        self.check_cap(cap)?;
        Ok(DirectedSubsets {
            poset: self,
            down: (0..self.len()).map(|i| self.down_mask(i)).collect(),
            next: 1,
            end: 1u64 << self.len(),
        })
    }

    /// `S1 ⪯ S2`: every element of `s2` sits above some element of `s1`.
    pub fn subset_preceq(&self, s1: &[usize], s2: &[usize]) -> Result<bool> {
        if s1.is_empty() || s2.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(s2.iter().all(|&b| s1.iter().any(|&a| self.leq(a, b))))
    }

    pub fn subset_equiv(&self, s1: &[usize], s2: &[usize]) -> Result<bool> {
        Ok(self.subset_preceq(s1, s2)? && self.subset_preceq(s2, s1)?)
    }

    /// The filter generated by a downward directed subset: its upward closure.
    pub fn filter_generated(&self, subset: &[usize]) -> Result<Vec<usize>> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !self.is_downward_directed(subset) {
            return Err(Error::NotDirected);
        }
        let mut filter = FixedBitSet::with_capacity(self.len());
        for &s in subset {
            filter.union_with(&self.up[s]);
        }
        Ok(filter.ones().collect())
    }

    /// Enumerates chains (totally ordered nonempty subsets) in increasing bitmask order.
    pub fn chains(&self, cap: usize) -> Result<impl Iterator<Item = u64> + '_> {
        self.check_cap(cap)?;
        let n = self.len();
        let comparable: Vec<u64> = (0..n)
            .map(|i| self.down_mask(i) | self.up_mask(i))
            .collect();
        Ok((1..1u64 << n).filter(move |&mask| {
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if mask & !comparable[i] != 0 {
                    return false;
                }
            }
            true
        }))
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

/// Converts a bitmask to ascending element indices.
pub fn mask_members(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// A subset of a finite poset tagged with its directedness data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetClass {
    pub mask: u64,
    pub downward_directed: bool,
    pub least: Option<usize>,
}

impl SubsetClass {
    pub fn members(&self) -> Vec<usize> {
        mask_members(self.mask)
    }

    pub fn has_least(&self) -> bool {
        self.least.is_some()
    }
}

pub struct DirectedSubsets<'a> {
    poset: &'a FinitePoset,
    down: Vec<u64>,
    next: u64,
    end: u64,
}

impl DirectedSubsets<'_> {
    fn classify(&self, mask: u64) -> Option<SubsetClass> {
        let members = mask_members(mask);
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                if self.down[a] & self.down[b] & mask == 0 {
                    return None;
                }
            }
        }
        let least = members
            .iter()
            .copied()
            .find(|&x| mask & !self.poset.up_mask(x) == 0);
        Some(SubsetClass {
            mask,
            downward_directed: true,
            least,
        })
    }
}

impl Iterator for DirectedSubsets<'_> {
    type Item = SubsetClass;

    fn next(&mut self) -> Option<SubsetClass> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if let Some(class) = self.classify(mask) {
                return Some(class);
            }
        }
        None
    }
}
