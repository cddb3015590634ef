//! Planar domains, homotopy data, and the circular-to-plane reduction.
//!
//! A punctured plane is ℂ minus finitely many points; a punctured circular
//! domain is the open unit disc minus pairwise disjoint closed discs and
//! finitely many points. All membership and separation constraints are
//! strict inequalities between moduli of Gaussian rationals, so they are
//! decided exactly by comparing squared values; no floating point enters
//! validation.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

/// The complex plane with finitely many points removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedPlane {
    punctures: Vec<GaussianRational>,
}

impl PuncturedPlane {
    pub fn new(punctures: Vec<GaussianRational>) -> Self {
        PuncturedPlane { punctures }
    }

    pub fn punctures(&self) -> &[GaussianRational] {
        &self.punctures
    }

    /// Number of punctures.
    pub fn count(&self) -> usize {
        self.punctures.len()
    }

    /// True when `z` lies in the domain, i.e. is not a puncture.
    pub fn contains(&self, z: &GaussianRational) -> bool {
        !self.punctures.contains(z)
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.punctures.len() {
            for j in i + 1..self.punctures.len() {
                if self.punctures[i] == self.punctures[j] {
                    out.push(Violation::DuplicatePuncture { first: i, second: j });
                }
            }
        }
        out
    }

    /// The monic polynomial vanishing exactly at the punctures.
    pub fn puncture_polynomial(&self) -> crate::algebra::Polynomial {
        crate::algebra::Polynomial::from_roots(&self.punctures)
    }
}

/// A closed disc removed from the unit disc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hole {
    pub center: GaussianRational,
    pub radius: BigRational,
}

impl Hole {
    pub fn new(center: GaussianRational, radius: BigRational) -> Self {
        Hole { center, radius }
    }

    /// True when `z` lies in the closed disc, decided exactly.
    pub fn contains_closed(&self, z: &GaussianRational) -> bool {
        let d = z - &self.center;
        d.norm_sq() <= &self.radius * &self.radius
    }

    /// The boundary marker b = center + radius·i.
    pub fn marker(&self) -> GaussianRational {
        GaussianRational::new(self.center.re.clone(), &self.center.im + &self.radius)
    }
}

/// The open unit disc minus closed holes and punctures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedCircularDomain {
    holes: Vec<Hole>,
    punctures: Vec<GaussianRational>,
}

/// A failed domain constraint, naming the indices involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    DuplicatePuncture { first: usize, second: usize },
    NonpositiveHoleRadius { hole: usize },
    HolesTooClose { first: usize, second: usize },
    HoleTouchesBoundary { hole: usize },
    PunctureOutsideDisc { puncture: usize },
    PunctureInsideHole { puncture: usize, hole: usize },
}

impl PuncturedCircularDomain {
    pub fn new(holes: Vec<Hole>, punctures: Vec<GaussianRational>) -> Self {
        PuncturedCircularDomain { holes, punctures }
    }

    pub fn holes(&self) -> &[Hole] {
        &self.holes
    }

    pub fn punctures(&self) -> &[GaussianRational] {
        &self.punctures
    }

    /// Checks every defining constraint and returns the failures as data.
    ///
    /// Constraints: hole radii positive; holes pairwise separated by
    /// r_i + r_j < |c_i − c_j|; each hole strictly inside the unit disc
    /// (r_i < 1 − |c_i|); punctures strictly inside the unit disc, outside
    /// every closed hole, and pairwise distinct.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let one = BigRational::one();
        for (i, h) in self.holes.iter().enumerate() {
            if h.radius <= BigRational::zero() {
                out.push(Violation::NonpositiveHoleRadius { hole: i });
            }
        }
        for i in 0..self.holes.len() {
            for j in i + 1..self.holes.len() {
                let sum = &self.holes[i].radius + &self.holes[j].radius;
                let sep = (&self.holes[i].center - &self.holes[j].center).norm_sq();
                if &sum * &sum >= sep {
                    out.push(Violation::HolesTooClose { first: i, second: j });
                }
            }
        }
        for (i, h) in self.holes.iter().enumerate() {
            // r < 1 − |c| with both sides positive is equivalent to
            // |c|² < (1 − r)² together with r < 1.
            let slack = &one - &h.radius;
            if slack <= BigRational::zero() || h.center.norm_sq() >= &slack * &slack {
                out.push(Violation::HoleTouchesBoundary { hole: i });
            }
        }
        for (j, a) in self.punctures.iter().enumerate() {
            if a.norm_sq() >= BigRational::one() {
                out.push(Violation::PunctureOutsideDisc { puncture: j });
            }
            for (i, h) in self.holes.iter().enumerate() {
                if h.contains_closed(a) {
                    out.push(Violation::PunctureInsideHole { puncture: j, hole: i });
                }
            }
        }
        for i in 0..self.punctures.len() {
            for j in i + 1..self.punctures.len() {
                if self.punctures[i] == self.punctures[j] {
                    out.push(Violation::DuplicatePuncture { first: i, second: j });
                }
            }
        }
        out
    }
}

/// Winding numbers attached to a domain: one integer per puncture, and one
/// per hole for circular domains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindingClass {
    pub puncture_windings: Vec<i64>,
    pub hole_windings: Vec<i64>,
}

impl WindingClass {
    pub fn new(puncture_windings: Vec<i64>, hole_windings: Vec<i64>) -> Self {
        WindingClass {
            puncture_windings,
            hole_windings,
        }
    }

    pub fn for_plane(puncture_windings: Vec<i64>) -> Self {
        WindingClass {
            puncture_windings,
            hole_windings: Vec::new(),
        }
    }

    pub fn is_null(&self) -> bool {
        self.puncture_windings.iter().all(|&k| k == 0)
            && self.hole_windings.iter().all(|&s| s == 0)
    }
}

/// Why a point was added to the auxiliary plane during reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MarkedRole {
    /// The marker i on the unit circle.
    BasePoint,
    /// The marker on the boundary circle of the indexed hole.
    HoleBoundary(usize),
    /// The center of the indexed hole.
    HoleCenter(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoint {
    pub point: GaussianRational,
    pub role: MarkedRole,
}

/// Output of the circular-to-plane reduction: an auxiliary punctured plane
/// containing the closure of the circular domain, with windings assigned
/// so that a map built on the plane restricts to the requested class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub plane: PuncturedPlane,
    pub windings: WindingClass,
    pub marked_points: Vec<MarkedPoint>,
}

/// Replaces a punctured circular domain by the plane punctured at the
/// original punctures, at a marker on each boundary circle (center +
/// radius·i on holes, the point i on the unit circle), and at each hole
/// center. The original puncture keeps its winding, every boundary marker
/// gets winding −1, and each hole center gets the hole winding plus one.
pub fn reduce_to_plane(
    domain: &PuncturedCircularDomain,
    windings: &WindingClass,
) -> Result<ReductionResult> {
    if windings.puncture_windings.len() != domain.punctures().len()
        || windings.hole_windings.len() != domain.holes().len()
    {
        return Err(Error::ShapeError(format!(
            "winding lists of lengths ({}, {}) do not match {} punctures and {} holes",
            windings.puncture_windings.len(),
            windings.hole_windings.len(),
            domain.punctures().len(),
            domain.holes().len()
        )));
    }
    let violations = domain.violations();
    if !violations.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "domain fails validation: {:?}",
            violations
        )));
    }
    let mut punctures = domain.punctures().to_vec();
    let mut winding_vec = windings.puncture_windings.clone();
    let mut marked = Vec::new();

    let b0 = GaussianRational::i();
    marked.push(MarkedPoint {
        point: b0.clone(),
        role: MarkedRole::BasePoint,
    });
    punctures.push(b0);
    winding_vec.push(-1);

    for (i, hole) in domain.holes().iter().enumerate() {
        let b = hole.marker();
        marked.push(MarkedPoint {
            point: b.clone(),
            role: MarkedRole::HoleBoundary(i),
        });
        punctures.push(b);
        winding_vec.push(-1);
    }
    for (i, hole) in domain.holes().iter().enumerate() {
        marked.push(MarkedPoint {
            point: hole.center.clone(),
            role: MarkedRole::HoleCenter(i),
        });
        punctures.push(hole.center.clone());
        winding_vec.push(windings.hole_windings[i] + 1);
    }

    for i in 0..punctures.len() {
        for j in i + 1..punctures.len() {
            if punctures[i] == punctures[j] {
                return Err(Error::InternalInconsistency(format!(
                    "reduction produced coincident punctures at positions {} and {}",
                    i, j
                )));
            }
        }
    }

    let plane = PuncturedPlane::new(punctures);
    Ok(ReductionResult {
        plane,
        windings: WindingClass::for_plane(winding_vec),
        marked_points: marked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, im)
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn valid_domain_has_no_violations() {
        let d = PuncturedCircularDomain::new(
            vec![Hole::new(gi(0, 0), rat(1, 2))],
            vec![gr(3, 4)],
        );
        assert!(d.violations().is_empty());
    }

    #[test]
    fn overlapping_holes_reported() {
        let d = PuncturedCircularDomain::new(
            vec![
                Hole::new(gi(0, 0), rat(1, 2)),
                Hole::new(gr(3, 5), rat(1, 5)),
            ],
            vec![],
        );
        assert_eq!(
            d.violations(),
            vec![Violation::HolesTooClose { first: 0, second: 1 }]
        );
    }

    #[test]
    fn hole_reaching_the_unit_circle_reported() {
        let ok = PuncturedCircularDomain::new(vec![Hole::new(gr(1, 2), rat(2, 5))], vec![]);
        assert!(ok.violations().is_empty());
        let bad = PuncturedCircularDomain::new(vec![Hole::new(gr(1, 2), rat(3, 5))], vec![]);
        assert_eq!(
            bad.violations(),
            vec![Violation::HoleTouchesBoundary { hole: 0 }]
        );
    }

    #[test]
    fn puncture_placement_violations() {
        let d = PuncturedCircularDomain::new(
            vec![Hole::new(gi(0, 0), rat(1, 2))],
            vec![gr(1, 4), gi(2, 0), gr(1, 4)],
        );
        let v = d.violations();
        assert!(v.contains(&Violation::PunctureInsideHole { puncture: 0, hole: 0 }));
        assert!(v.contains(&Violation::PunctureOutsideDisc { puncture: 1 }));
        assert!(v.contains(&Violation::DuplicatePuncture { first: 0, second: 2 }));
    }

    #[test]
    fn reduction_without_holes_adds_single_marker() {
        let d = PuncturedCircularDomain::new(vec![], vec![gr(1, 4), gr(-1, 3)]);
        let w = WindingClass::new(vec![3, 0], vec![]);
        let r = reduce_to_plane(&d, &w).unwrap();
        assert_eq!(
            r.plane.punctures(),
            &[gr(1, 4), gr(-1, 3), gi(0, 1)]
        );
        assert_eq!(r.windings.puncture_windings, vec![3, 0, -1]);
        assert_eq!(r.marked_points.len(), 1);
        assert_eq!(r.marked_points[0].role, MarkedRole::BasePoint);
    }

    #[test]
    fn reduction_with_one_hole() {
        let d = PuncturedCircularDomain::new(
            vec![Hole::new(gi(0, 0), rat(1, 4))],
            vec![gr(1, 2)],
        );
        let w = WindingClass::new(vec![5], vec![0]);
        let r = reduce_to_plane(&d, &w).unwrap();
        assert_eq!(
            r.plane.punctures(),
            &[
                gr(1, 2),
                gi(0, 1),
                GaussianRational::new(rat(0, 1), rat(1, 4)),
                gi(0, 0)
            ]
        );
        assert_eq!(r.windings.puncture_windings, vec![5, -1, -1, 1]);
        assert_eq!(r.plane.count(), 1 + 2 * 1 + 1);
        assert_eq!(
            r.marked_points
                .iter()
                .map(|m| m.role)
                .collect::<Vec<_>>(),
            vec![
                MarkedRole::BasePoint,
                MarkedRole::HoleBoundary(0),
                MarkedRole::HoleCenter(0)
            ]
        );
    }

    #[test]
    fn reduction_with_negative_hole_winding() {
        let d = PuncturedCircularDomain::new(
            vec![Hole::new(gr(1, 2), rat(1, 8))],
            vec![gr(-1, 2)],
        );
        let w = WindingClass::new(vec![0], vec![-1]);
        let r = reduce_to_plane(&d, &w).unwrap();
        assert_eq!(r.windings.puncture_windings, vec![0, -1, -1, 0]);
    }

    #[test]
    fn reduction_rejects_mismatched_windings() {
        let d = PuncturedCircularDomain::new(vec![], vec![gr(1, 4)]);
        let w = WindingClass::new(vec![1, 2], vec![]);
        assert!(matches!(
            reduce_to_plane(&d, &w),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn reduction_rejects_invalid_domain() {
        let d = PuncturedCircularDomain::new(vec![], vec![gi(2, 0)]);
        let w = WindingClass::new(vec![1], vec![]);
        assert!(matches!(
            reduce_to_plane(&d, &w),
            Err(Error::InvalidParameter(_))
        ));
    }
}
