//! Class-agnostic A, R and property checks for finite carriers.
//!
//! Everything here enumerates subsets, so it only runs under the enumeration
//! cap. On a finite carrier every directed subset has a least element; the
//! tests assert the resulting collapses instead of short-circuiting them.

use super::{mask_members, FinitePoset};
use crate::error::Result;
use crate::property::Property;

struct DirectedData {
    /// (mask, least, glb)
    subsets: Vec<(u64, Option<usize>, Option<usize>)>,
}

fn directed_data(p: &FinitePoset, cap: usize) -> Result<DirectedData> {
    let subsets = p
        .downward_directed_subsets(cap)?
        .map(|c| (c.mask, c.least, p.glb(&c.members())))
        .collect();
    Ok(DirectedData { subsets })
}

/// Bitmask of elements that are the glb of a directed subset without least element.
fn removed_mask(data: &DirectedData) -> u64 {
    data.subsets
        .iter()
        .filter(|(_, least, _)| least.is_none())
        .filter_map(|(_, _, glb)| *glb)
        .fold(0, |m, g| m | 1 << g)
}

fn preceq_mask(p: &FinitePoset, s1: u64, s2: u64) -> bool {
    mask_members(s2)
        .into_iter()
        .all(|b| p.down_mask(b) & s1 != 0)
}

/// Adjoins one new bottom per ≈-class of directed subsets without least element.
pub fn apply_a_finite(p: &FinitePoset, cap: usize) -> Result<FinitePoset> {
    let data = directed_data(p, cap)?;
    let mut classes: Vec<u64> = Vec::new();
    for &(mask, least, _) in &data.subsets {
        if least.is_some() {
            continue;
        }
        if !classes
            .iter()
            .any(|&c| preceq_mask(p, c, mask) && preceq_mask(p, mask, c))
        {
            classes.push(mask);
        }
    }
    let n = p.len();
    let mut labels = p.labels().to_vec();
    for &c in &classes {
        let names: Vec<&str> = mask_members(c).into_iter().map(|i| p.label(i)).collect();
        labels.push(format!("x[{}]", names.join(",")));
    }
    let mut pairs: Vec<(usize, usize)> = p.strict_pairs().collect();
    for (k, &c) in classes.iter().enumerate() {
        let x = n + k;
        let members = mask_members(c);
        for q in 0..n {
            if members.iter().all(|&s| p.leq(q, s)) {
                pairs.push((q, x));
            }
            if members.iter().any(|&s| p.leq(s, q)) {
                pairs.push((x, q));
            }
        }
        for (j, &d) in classes.iter().enumerate() {
            if j != k && preceq_mask(p, c, d) {
                pairs.push((x, n + j));
            }
        }
    }
    FinitePoset::from_indices(labels, &pairs)
}

/// Removes every glb of a directed subset without least element.
pub fn apply_r_finite(p: &FinitePoset, cap: usize) -> Result<FinitePoset> {
    let removed = removed_mask(&directed_data(p, cap)?);
    let keep: Vec<usize> = (0..p.len()).filter(|&i| removed & (1 << i) == 0).collect();
    Ok(p.induced(&keep))
}

/// Decides a property by direct enumeration over all relevant subsets.
pub fn check_property_finite(p: &FinitePoset, prop: Property, cap: usize) -> Result<bool> {
    let data = directed_data(p, cap)?;
    let removed = removed_mask(&data);
    let retained = |x: usize| removed & (1 << x) == 0;
    Ok(match prop {
        Property::Glb => data.subsets.iter().all(|(_, _, g)| g.is_some()),
        Property::Glbc => {
            let mut chains = p.chains(cap)?;
            chains.all(|mask| p.glb(&mask_members(mask)).is_some())
        }
        Property::Dcc => {
            let mut chains = p.chains(cap)?;
            chains.all(|mask| p.least(&mask_members(mask)).is_some())
        }
        Property::Dc | Property::StrongDc => {
            let strong = prop == Property::StrongDc;
            data.subsets.iter().all(|&(mask, _, glb)| {
                let Some(g) = glb else { return true };
                (0..p.len())
                    .filter(|&x| {
                        if strong {
                            p.lt(g, x)
                        } else {
                            retained(x) && p.leq(g, x)
                        }
                    })
                    .all(|x| p.down_mask(x) & mask != 0)
            })
        }
        Property::Dd => {
            let retained_glbs: Vec<usize> = data
                .subsets
                .iter()
                .filter(|(mask, _, _)| mask & removed == 0)
                .filter_map(|(_, _, g)| *g)
                .collect();
            data.subsets
                .iter()
                .filter_map(|(_, _, g)| *g)
                .all(|g| retained_glbs.contains(&g))
        }
        Property::Kap => p
            .strict_pairs()
            .all(|(a, b)| p.covers().iter().any(|&(x, y)| p.leq(a, x) && p.leq(y, b))),
    })
}
