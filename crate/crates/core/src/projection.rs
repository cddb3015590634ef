//! Certification that a candidate pair stays proper over a circular
//! domain: tangent-direction separation at the marked simple poles,
//! generic direction selection, boundary clearance of identifications,
//! and the small reshaping maps that move one point without disturbing
//! the punctures.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{FactoredRational, GaussianRational, Polynomial};
use crate::domains::PuncturedCircularDomain;
use crate::doublepoints::{DoublePointReport, Finiteness};
use crate::error::{Error, Result};

/// Which projection pattern certified properness of the candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionFlavor {
    CStar,
    C,
}

/// Exact tangent-direction data at the marked simple poles of the second
/// component: the limits `u_i` of `g(z)·(z − b_i)` and the pairwise
/// separation verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaCertificate {
    pub values: Vec<GaussianRational>,
    pub pass: bool,
    pub failing: Vec<(usize, usize)>,
}

/// One boundary-escape witness: which curve, which component escapes
/// along it, and the pole order that forces the escape.
#[derive(Debug, Clone, Serialize)]
pub struct EscapeWitness {
    pub curve: String,
    pub component: String,
    pub order: i64,
}

/// Certificate that the chosen projection pattern makes the candidate
/// proper over the circular domain: the flavor, the pattern that matched,
/// the exact separation or direction witnesses, and the escape orders.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionCertificate {
    pub flavor: ProjectionFlavor,
    pub pattern: String,
    pub theta: Option<ThetaCertificate>,
    pub chosen_d: Option<GaussianRational>,
    pub noncollinearity: Vec<String>,
    pub escape: Vec<EscapeWitness>,
    pub verdict: bool,
}

/// Computes the exact residue directions `u_i = (g·(z − b_i))(b_i)` at
/// the marked points and checks that no two are real multiples of each
/// other.
///
/// Every marked point must be a simple pole of `g`. A single marked
/// point passes vacuously.
pub fn theta_certificate(
    g: &FactoredRational,
    markers: &[GaussianRational],
) -> Result<ThetaCertificate> {
    let mut values = Vec::with_capacity(markers.len());
    for b in markers {
        if g.order_at(b) != -1 {
            return Err(Error::InvalidParameter(format!(
                "the second component must have a simple pole at {b}"
            )));
        }
        let cleared = g.mul_linear(b.clone(), 1);
        let u = cleared.eval(b).ok_or_else(|| {
            Error::InternalInconsistency(
                "clearing a simple pole left the value undefined".into(),
            )
        })?;
        values.push(u);
    }
    let mut failing = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let prod = &values[i] * &values[j].conj();
            if prod.im.is_zero() {
                failing.push((i, j));
            }
        }
    }
    Ok(ThetaCertificate {
        pass: failing.is_empty(),
        values,
        failing,
    })
}

/// Picks a Gaussian integer direction of modulus at least `min_modulus`
/// that avoids the given points and is non-collinear with every pair of
/// markers, by a deterministic sweep of lattice candidates.
pub fn pick_generic_d(
    markers: &[GaussianRational],
    min_modulus: i64,
    avoid: &[GaussianRational],
) -> Result<GaussianRational> {
    let start = min_modulus.max(1);
    for r in start..start + 64 {
        for im_abs in 0..=r {
            for sign in [1i64, -1] {
                if im_abs == 0 && sign < 0 {
                    continue;
                }
                let d = GaussianRational::from_parts(r, sign * im_abs);
                if avoid.contains(&d) {
                    continue;
                }
                let mut ok = true;
                'pairs: for i in 0..markers.len() {
                    for j in 0..markers.len() {
                        if i == j {
                            continue;
                        }
                        let lhs = &(&d - &markers[i]) * &(&markers[j] - &markers[i]).conj();
                        if lhs.im.is_zero() {
                            ok = false;
                            break 'pairs;
                        }
                    }
                }
                if ok {
                    return Ok(d);
                }
            }
        }
    }
    Err(Error::SearchExhausted(
        "no generic direction found in the lattice sweep".into(),
    ))
}

/// Repairs a failing separation certificate by multiplying the second
/// component with a linear factor `z − d` for a far-away generic `d`,
/// doubling the minimum modulus until the full certificate passes.
///
/// Requires the initial certificate to fail; remediating a passing
/// configuration is a caller error.
pub fn remediate_thetas(
    g: &FactoredRational,
    markers: &[GaussianRational],
) -> Result<(FactoredRational, GaussianRational, ThetaCertificate)> {
    let initial = theta_certificate(g, markers)?;
    if initial.pass {
        return Err(Error::InvalidParameter(
            "the separation certificate already passes; nothing to repair".into(),
        ));
    }
    let mut avoid: Vec<GaussianRational> = markers.to_vec();
    for (root, _) in g.factors() {
        if !avoid.contains(root) {
            avoid.push(root.clone());
        }
    }
    let mut min_modulus = 8i64;
    for _ in 0..16 {
        let d = pick_generic_d(markers, min_modulus, &avoid)?;
        let repaired = g.mul_linear(d.clone(), 1);
        let cert = theta_certificate(&repaired, markers)?;
        if cert.pass {
            return Ok((repaired, d, cert));
        }
        min_modulus = min_modulus.saturating_mul(2);
    }
    Err(Error::SearchExhausted(
        "no repairing direction passed the separation certificate".into(),
    ))
}

/// Checks that every reported identification stays away from all
/// boundary circles of the domain (the unit circle and each hole
/// boundary), by exact comparison of squared distances against the
/// certification radii.
///
/// Requires a finite report. A coordinate whose enclosure cannot be
/// separated from some circle is an honest failure, not a verdict.
pub fn boundary_clearance(
    report: &DoublePointReport,
    domain: &PuncturedCircularDomain,
) -> Result<()> {
    if report.finiteness != Finiteness::Finite {
        return Err(Error::InvalidParameter(
            "boundary clearance requires a finite identification report".into(),
        ));
    }
    let mut circles: Vec<(BigRational, BigRational, BigRational)> = vec![(
        BigRational::zero(),
        BigRational::zero(),
        BigRational::from_integer(1.into()),
    )];
    for hole in domain.holes() {
        circles.push((
            hole.center.re.clone(),
            hole.center.im.clone(),
            hole.radius.clone(),
        ));
    }
    for pair in &report.pairs {
        for ball in [&pair.x, &pair.y] {
            let cre = ball.re.to_rational();
            let cim = ball.im.to_rational();
            let rad = ball.rad.to_rational();
            for (qre, qim, rho) in &circles {
                let dre = &cre - qre;
                let dim = &cim - qim;
                let d2 = &dre * &dre + &dim * &dim;
                let outer = rho + &rad;
                let clear_outside = d2 > &outer * &outer;
                let clear_inside = *rho > rad && {
                    let inner = rho - &rad;
                    d2 < &inner * &inner
                };
                if !clear_outside && !clear_inside {
                    return Err(Error::AmbiguousBoundary(format!(
                        "an identification coordinate near ({}, {}) cannot be \
                         separated from a boundary circle",
                        ball.re.to_f64(),
                        ball.im.to_f64()
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A polynomial reshaping `ρ(z) = z + v(z)` that fixes every puncture,
/// moves one chosen point to a target, and is certified injective on the
/// closed unit disc by a coefficient majorant of `v′`.
#[derive(Debug, Clone)]
pub struct ReshapeMap {
    pub shift: Polynomial,
}

impl ReshapeMap {
    /// The full map `z + v(z)` as a polynomial.
    pub fn rho(&self) -> Polynomial {
        &Polynomial::z() + &self.shift
    }

    pub fn apply(&self, z: &GaussianRational) -> GaussianRational {
        z + &self.shift.eval(z)
    }

    /// An exact upper bound for `sup |v′|` on the closed unit disc: the
    /// sum of `|re| + |im|` over the coefficients of `v′`.
    pub fn derivative_majorant(&self) -> BigRational {
        self.shift
            .derivative()
            .coeffs()
            .iter()
            .map(|c| {
                let re = if c.re < BigRational::zero() {
                    -c.re.clone()
                } else {
                    c.re.clone()
                };
                let im = if c.im < BigRational::zero() {
                    -c.im.clone()
                } else {
                    c.im.clone()
                };
                re + im
            })
            .sum()
    }
}

/// Builds the reshaping map `ρ(z) = z + ((x − x_j)/w(x_j))·w(z)` with
/// `w` the monic polynomial vanishing at the punctures, so that `ρ`
/// fixes every puncture and sends `x_j` to `x`.
///
/// Fails with `ShiftTooLarge` when the derivative majorant does not
/// certify injectivity on the closed unit disc.
pub fn build_reshape(
    punctures: &[GaussianRational],
    x: &GaussianRational,
    x_j: &GaussianRational,
) -> Result<ReshapeMap> {
    let w = Polynomial::from_roots(punctures);
    let w_at = w.eval(x_j);
    if w_at.is_zero() {
        return Err(Error::InvalidParameter(
            "the point to move coincides with a puncture".into(),
        ));
    }
    let scale = &(x - x_j) * &w_at.inv();
    let v = w.scale(&scale);
    let map = ReshapeMap { shift: v };
    if map.derivative_majorant() >= BigRational::from_integer(1.into()) {
        return Err(Error::ShiftTooLarge(format!(
            "derivative majorant {} does not certify injectivity",
            map.derivative_majorant()
        )));
    }
    debug_assert_eq!(&map.apply(x_j), x);
    Ok(map)
}
