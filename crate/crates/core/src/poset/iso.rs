use super::FinitePoset;

/// An element map between two finite posets.
#[derive(Clone, Debug)]
pub struct OrderMap<'a> {
    pub domain: &'a FinitePoset,
    pub codomain: &'a FinitePoset,
    pub assignment: Vec<usize>,
}

impl<'a> OrderMap<'a> {
    pub fn new(domain: &'a FinitePoset, codomain: &'a FinitePoset, assignment: Vec<usize>) -> Self {
        assert_eq!(assignment.len(), domain.len());
        OrderMap {
            domain,
            codomain,
            assignment,
        }
    }

    pub fn identity(p: &'a FinitePoset) -> Self {
        OrderMap::new(p, p, (0..p.len()).collect())
    }

    pub fn is_order_preserving(&self) -> bool {
        self.domain
            .strict_pairs()
            .all(|(a, b)| self.codomain.leq(self.assignment[a], self.assignment[b]))
    }

    pub fn is_order_reflecting(&self) -> bool {
        let n = self.domain.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                !self.codomain.leq(self.assignment[a], self.assignment[b]) || self.domain.leq(a, b)
            })
        })
    }

    pub fn is_order_embedding(&self) -> bool {
        self.is_order_preserving() && self.is_order_reflecting()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.assignment
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn is_order_isomorphism(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_order_embedding()
    }

    /// `(domain label, codomain label)` pairs.
    pub fn labelled(&self) -> Vec<(&str, &str)> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(a, &b)| (self.domain.label(a), self.codomain.label(b)))
            .collect()
    }
}

type Signature = (usize, usize, usize);

fn signatures(p: &FinitePoset) -> Vec<Signature> {
    let heights = p.heights();
    (0..p.len())
        .map(|i| {
            let (below, above) = p.degree_profile(i);
            (below, above, heights[i])
        })
        .collect()
}

/// Searches for an order-isomorphism `p -> q`.
///
/// Backtracking in index order of `p`; candidates in index order of `q`,
/// restricted to elements with the same (below, above, height) profile.
pub fn order_iso<'a>(p: &'a FinitePoset, q: &'a FinitePoset) -> Option<OrderMap<'a>> {
    if p.len() != q.len() || p.covers().len() != q.covers().len() {
        return None;
    }
    let sp = signatures(p);
    let sq = signatures(q);
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let mut assignment = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    if extend(p, q, &sp, &sq, 0, &mut assignment, &mut used) {
        Some(OrderMap::new(p, q, assignment))
    } else {
        None
    }
}

fn extend(
    p: &FinitePoset,
    q: &FinitePoset,
    sp: &[Signature],
    sq: &[Signature],
    i: usize,
    assignment: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == p.len() {
        return true;
    }
    for c in 0..q.len() {
        if used[c] || sq[c] != sp[i] {
            continue;
        }
        let consistent = (0..i).all(|k| {
            let fk = assignment[k];
            p.leq(i, k) == q.leq(c, fk) && p.leq(k, i) == q.leq(fk, c)
        });
        if !consistent {
            continue;
        }
        assignment[i] = c;
        used[c] = true;
        if extend(p, q, sp, sq, i + 1, assignment, used) {
            return true;
        }
        used[c] = false;
    }
    assignment[i] = usize::MAX;
    false
}
