use super::{NodeKind, RayPoset};
use crate::poset::order_iso;

/// Truncation depths checked by the guard.
pub const DEFAULT_GUARD_DEPTH: usize = 4;

/// A node bijection preserving kinds and relation kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeIso {
    pub mapping: Vec<usize>,
    /// Truncations at depths `1..=guard_depth` were found order-isomorphic.
    pub guard_ok: bool,
}

/// Whether `mapping` carries `p` onto `q` node for node.
pub fn is_structural_iso(p: &RayPoset, q: &RayPoset, mapping: &[usize]) -> bool {
    if p.len() != q.len() || mapping.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &m in mapping {
        if m >= q.len() || std::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    (0..p.len()).all(|a| {
        p.kind(a) == q.kind(mapping[a])
            && (0..p.len()).all(|b| p.relation(a, b) == q.relation(mapping[a], mapping[b]))
    })
}

/// Searches for a structural isomorphism, then checks truncations up to
/// `guard_depth` with [`order_iso`] as an independent guard.
pub fn structural_iso(p: &RayPoset, q: &RayPoset, guard_depth: usize) -> Option<NodeIso> {
    if p.len() != q.len() || p.ray_count() != q.ray_count() {
        return None;
    }
    let sig = |r: &RayPoset, i: usize| {
        let below = (0..r.len()).filter(|&j| r.relation(j, i).is_some()).count();
        let above = (0..r.len()).filter(|&j| r.relation(i, j).is_some()).count();
        (r.kind(i) == NodeKind::Ray, below, above)
    };
    let sp: Vec<_> = (0..p.len()).map(|i| sig(p, i)).collect();
    let sq: Vec<_> = (0..q.len()).map(|i| sig(q, i)).collect();
    let mut mapping = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    if !extend(p, q, &sp, &sq, 0, &mut mapping, &mut used) {
        return None;
    }
    let guard_ok = (1..=guard_depth).all(|d| order_iso(&p.truncate(d), &q.truncate(d)).is_some());
    Some(NodeIso { mapping, guard_ok })
}

fn extend<S: PartialEq>(
    p: &RayPoset,
    q: &RayPoset,
    sp: &[S],
    sq: &[S],
    i: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == p.len() {
        return true;
    }
    for c in 0..q.len() {
        if used[c] || sp[i] != sq[c] {
            continue;
        }
        let consistent = (0..i).all(|k| {
            p.relation(i, k) == q.relation(c, mapping[k])
                && p.relation(k, i) == q.relation(mapping[k], c)
        });
        if !consistent {
            continue;
        }
        mapping[i] = c;
        used[c] = true;
        if extend(p, q, sp, sq, i + 1, mapping, used) {
            return true;
        }
        used[c] = false;
    }
    mapping[i] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::ray::NodeKind::{Point, Ray};
    use crate::ray::RelationKind::*;

    #[test]
    fn relabelled_copy_is_found() {
        let p = two_ray();
        let q = RayPoset::new(
            &[("B", Ray), ("A", Ray), ("z", Point)],
            &[("z", "A", PointBelowRay), ("z", "B", PointBelowRay)],
        )
        .unwrap();
        let iso = structural_iso(&p, &q, DEFAULT_GUARD_DEPTH).unwrap();
        assert!(iso.guard_ok);
        assert!(is_structural_iso(&p, &q, &iso.mapping));
        assert_eq!(iso.mapping[0], 2);
    }

    #[test]
    fn sync_and_all_differ() {
        let a = RayPoset::new(&[("r", Ray), ("s", Ray)], &[("r", "s", Sync)]).unwrap();
        let b = RayPoset::new(&[("r", Ray), ("s", Ray)], &[("r", "s", All)]).unwrap();
        assert!(structural_iso(&a, &b, 3).is_none());
        assert!(!is_structural_iso(&a, &b, &[0, 1]));
    }

    #[test]
    fn point_and_ray_differ() {
        assert!(structural_iso(&zero_and_ray(), &ray_alone(), 3).is_none());
    }
}
