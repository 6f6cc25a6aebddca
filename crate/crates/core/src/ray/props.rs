//! Property deciders with witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{NodeKind, RayPoset, RealizedElement, RelationKind};
use crate::property::Property;

/// Why a property fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Witness {
    /// The tail of this ray has no glb.
    NoGlb { ray: String },
    /// `element` lies above the glb of `ray` but above no element of it.
    Detached { ray: String, element: String },
    /// An infinite descending chain.
    Descending { ray: String },
    /// Removing tail glbs loses `element` for good.
    Unrecoverable { element: String },
    /// No cover between `lo` and `hi`.
    NoCover { lo: String, hi: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NoGlb { ray } => write!(f, "tail of {ray} has no glb"),
            Witness::Detached { ray, element } => {
                write!(
                    f,
                    "{element} is above glb of {ray} but above no element of it"
                )
            }
            Witness::Descending { ray } => write!(f, "{ray} is an infinite descending chain"),
            Witness::Unrecoverable { element } => write!(f, "{element} is not a glb in R(P)"),
            Witness::NoCover { lo, hi } => write!(f, "no cover between {lo} and {hi}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: Property,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl PropertyCheck {
    fn from(property: Property, witness: Option<Witness>) -> Self {
        PropertyCheck {
            property,
            holds: witness.is_none(),
            witness,
        }
    }
}

impl RayPoset {
    pub fn check_property(&self, property: Property) -> PropertyCheck {
        let witness = match property {
            Property::Glb => self.glb_witness(),
            Property::Glbc => self.glbc_witness(),
            Property::Dcc => self.rays().next().map(|r| Witness::Descending {
                ray: self.label(r).to_string(),
            }),
            Property::Dc => self.dc_witness(false),
            Property::StrongDc => self.dc_witness(true),
            Property::Dd => self.dd_witness(),
            Property::Kap => self.kap_witness(),
        };
        PropertyCheck::from(property, witness)
    }

    pub fn check_all(&self) -> Vec<PropertyCheck> {
        Property::ALL
            .iter()
            .map(|&p| self.check_property(p))
            .collect()
    }

    /// Every directed subset with a least element has a glb, and the others
    /// are ≈ a ray tail, so GLB reduces to tails.
    fn glb_witness(&self) -> Option<Witness> {
        self.rays()
            .find(|&r| self.glb_tail(r).is_none())
            .map(|r| Witness::NoGlb {
                ray: self.label(r).to_string(),
            })
    }

    /// Chains without least element are cofinal in a ray tail. Decided here
    /// by searching realized elements rather than through the node table.
    fn glbc_witness(&self) -> Option<Witness> {
        self.rays()
            .find(|&r| self.glb_tail_search(r).is_none())
            .map(|r| Witness::NoGlb {
                ray: self.label(r).to_string(),
            })
    }

    /// Realized elements at levels `0..=1` (and points) outside the removed set.
    fn retained_sample(&self, removed: &[RealizedElement]) -> Vec<RealizedElement> {
        self.elements_upto(1)
            .into_iter()
            .filter(|x| !removed.contains(x))
            .collect()
    }

    /// Whether `x` lies above some element of `tail(r)`.
    fn above_tail(&self, x: RealizedElement, r: usize) -> bool {
        if x.node == r {
            return true;
        }
        matches!(
            (self.kind(x.node), self.relation(r, x.node)),
            (NodeKind::Point, Some(RelationKind::RayBelowPoint))
                | (NodeKind::Ray, Some(RelationKind::Sync | RelationKind::All))
        )
    }

    /// For each tail glb `g`, every element above `g` must dominate part of
    /// the tail. Ray elements above `g` at a given ray differ only in level,
    /// so levels `0..=1` cover every case once removed tops are skipped.
    fn dc_witness(&self, strong: bool) -> Option<Witness> {
        let removed = self.removed_elements();
        let sample = if strong {
            self.elements_upto(1)
        } else {
            self.retained_sample(&removed)
        };
        for (r, g) in self.tail_glbs() {
            let Some(g) = g else { continue };
            for &x in &sample {
                let above = if strong {
                    self.lt_realized(g, x)
                } else {
                    self.leq_realized(g, x)
                };
                if above && !self.above_tail(x, r) {
                    return Some(Witness::Detached {
                        ray: self.label(r).to_string(),
                        element: self.element_name(x),
                    });
                }
            }
        }
        None
    }

    /// Each removed element must be the glb of a directed subset of `R(P)`.
    /// `{(t,n) : n >= 1}` avoids every removed element and has the same
    /// lower bounds as `tail(t)`.
    fn dd_witness(&self) -> Option<Witness> {
        let removed = self.removed_elements();
        let glbs = self.tail_glbs();
        removed
            .iter()
            .copied()
            .find(|&e| {
                !glbs.iter().any(|&(t, g)| {
                    g == Some(e) && (1..=2).all(|l| !removed.contains(&RealizedElement::new(t, l)))
                })
            })
            .map(|e| Witness::Unrecoverable {
                element: self.element_name(e),
            })
    }

    /// Level window that exercises every relation shape between nodes.
    pub fn kap_window(&self) -> usize {
        self.len() + 2
    }

    fn kap_witness(&self) -> Option<Witness> {
        let elems = self.elements_upto(self.kap_window());
        for &x in &elems {
            for &y in &elems {
                if self.lt_realized(x, y) && self.find_cover(x, y).is_none() {
                    return Some(Witness::NoCover {
                        lo: self.element_name(x),
                        hi: self.element_name(y),
                    });
                }
            }
        }
        None
    }

    /// Realized elements strictly between `x` and `y`, up to the level bound
    /// past which every ray meets `(x, y)` in an interval already seen.
    fn between(&self, x: RealizedElement, y: RealizedElement) -> Vec<RealizedElement> {
        self.elements_upto(x.level + y.level + 2)
            .into_iter()
            .filter(|&z| self.lt_realized(x, z) && self.lt_realized(z, y))
            .collect()
    }

    /// Realized cover relation.
    pub fn is_cover_realized(&self, x: RealizedElement, y: RealizedElement) -> bool {
        self.lt_realized(x, y) && self.between(x, y).is_empty()
    }

    /// A cover `a ⋖ b` with `x <= a < b <= y`, if one exists.
    pub fn find_cover(
        &self,
        x: RealizedElement,
        y: RealizedElement,
    ) -> Option<(RealizedElement, RealizedElement)> {
        if !self.lt_realized(x, y) {
            return None;
        }
        let bound = x.level + y.level + 2;
        for t in self.rays() {
            for j in 0..=bound {
                let lo = RealizedElement::new(t, j + 1);
                let hi = RealizedElement::new(t, j);
                if self.leq_realized(x, lo) && self.leq_realized(hi, y) {
                    return Some((lo, hi));
                }
            }
        }
        // No two consecutive ray elements fit, so {z : x < z <= y} is finite.
        let mut up: Vec<RealizedElement> = self.between(x, y);
        up.push(y);
        let z = up
            .iter()
            .copied()
            .find(|&z| !up.iter().any(|&u| self.lt_realized(u, z)))?;
        self.is_cover_realized(x, z).then_some((x, z))
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::ray::NodeKind::{Point, Ray};
    use crate::ray::RelationKind::*;

    fn holds(p: &RayPoset, prop: Property) -> bool {
        p.check_property(prop).holds
    }

    #[test]
    fn zero_and_ray_properties() {
        let p = zero_and_ray();
        for prop in [
            Property::Glb,
            Property::Glbc,
            Property::Dc,
            Property::Dd,
            Property::Kap,
        ] {
            assert!(holds(&p, prop), "{prop}");
        }
        assert!(!holds(&p, Property::Dcc));
        assert!(holds(&p, Property::StrongDc));
    }

    #[test]
    fn bare_ray_has_no_glb() {
        let p = ray_alone();
        let c = p.check_property(Property::Glb);
        assert_eq!(c.witness, Some(Witness::NoGlb { ray: "S".into() }));
        assert!(!holds(&p, Property::Glbc));
        assert!(holds(&p, Property::Dc));
    }

    #[test]
    fn two_ray_fails_dc() {
        let p = two_ray();
        let c = p.check_property(Property::Dc);
        assert!(!c.holds);
        assert!(matches!(c.witness, Some(Witness::Detached { .. })));
        assert!(holds(&p, Property::Glb));
    }

    #[test]
    fn dc_without_strong_dc() {
        let p = dc_vs_strong_dc();
        assert!(holds(&p, Property::Dc));
        let c = p.check_property(Property::StrongDc);
        assert_eq!(
            c.witness,
            Some(Witness::Detached {
                ray: "R".into(),
                element: "q".into()
            })
        );
    }

    #[test]
    fn covers_exist_between_ray_elements() {
        let p = zero_and_ray();
        let zero = RealizedElement::new(0, 0);
        let s0 = RealizedElement::new(1, 0);
        let (a, b) = p.find_cover(zero, s0).unwrap();
        assert!(p.is_cover_realized(a, b));
        assert!(!p.is_cover_realized(zero, s0));
        assert!(p.is_cover_realized(RealizedElement::new(1, 4), RealizedElement::new(1, 3)));
    }

    #[test]
    fn finite_covers_found_among_points() {
        let p = RayPoset::new(
            &[("a", Point), ("b", Point), ("c", Point)],
            &[("a", "b", Lt), ("b", "c", Lt)],
        )
        .unwrap();
        let (lo, hi) = p
            .find_cover(RealizedElement::new(0, 0), RealizedElement::new(2, 0))
            .unwrap();
        assert_eq!((lo.node, hi.node), (0, 1));
        assert!(p.check_all().iter().all(|c| c.holds));
    }

    #[test]
    fn ray_top_glb_case_is_handled() {
        let p = RayPoset::new(&[("s", Ray), ("r", Ray)], &[("s", "r", All)]).unwrap();
        assert!(!holds(&p, Property::Glb));
        assert!(holds(&p, Property::Dd));
        assert!(holds(&p, Property::Kap));
    }

    #[test]
    fn witness_serializes_with_reason_tag() {
        let w = Witness::NoGlb { ray: "S".into() };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"reason":"no_glb","ray":"S"}"#);
    }
}
