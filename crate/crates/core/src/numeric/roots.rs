//! Certified complex root finding.
//!
//! Approximation by simultaneous (Aberth-style) iteration in plain dyadic
//! arithmetic, then certification of each approximate root by disc-Newton
//! contraction in ball arithmetic: if `c − p(c)/p′(D) ⊆ D̊` the disc `D`
//! contains exactly one simple root. Multiplicities are recovered by exact
//! squarefree decomposition beforehand whenever coefficients are exact;
//! only π-bearing coefficients go through the all-numeric path.

use super::ball::{eval_poly_ball, CBall};
use super::dyadic::Dyadic;
use crate::algebra::{GaussianRational, Polynomial};
use crate::error::{Error, Result};

/// An isolated root: a disc certified to contain exactly one root (of the
/// squarefree part), with the multiplicity it carries in the original
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedRoot {
    pub ball: CBall,
    pub multiplicity: usize,
}

const PRECISION_LADDER: [u32; 4] = [64, 256, 1024, 4096];

fn ladder_up_to(max_prec: u32) -> Vec<u32> {
    let mut steps: Vec<u32> = PRECISION_LADDER
        .iter()
        .copied()
        .filter(|&p| p <= max_prec)
        .collect();
    if steps.is_empty() {
        steps.push(max_prec.max(16));
    }
    steps
}

/// Plain approximate complex number for the iteration phase; no error
/// tracking, everything rounded to the working precision.
#[derive(Debug, Clone)]
struct Approx {
    re: Dyadic,
    im: Dyadic,
}

impl Approx {
    fn zero() -> Self {
        Approx {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, rhs: &Approx, prec: u32) -> Approx {
        Approx {
            re: self.re.add(&rhs.re).round_nearest(prec).0,
            im: self.im.add(&rhs.im).round_nearest(prec).0,
        }
    }

    fn sub(&self, rhs: &Approx, prec: u32) -> Approx {
        Approx {
            re: self.re.sub(&rhs.re).round_nearest(prec).0,
            im: self.im.sub(&rhs.im).round_nearest(prec).0,
        }
    }

    fn mul(&self, rhs: &Approx, prec: u32) -> Approx {
        Approx {
            re: self
                .re
                .mul(&rhs.re)
                .sub(&self.im.mul(&rhs.im))
                .round_nearest(prec)
                .0,
            im: self
                .re
                .mul(&rhs.im)
                .add(&self.im.mul(&rhs.re))
                .round_nearest(prec)
                .0,
        }
    }

    fn div(&self, rhs: &Approx, prec: u32) -> Approx {
        let d = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        if d.is_zero() {
            return Approx::zero();
        }
        let nre = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im));
        let nim = self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im));
        Approx {
            re: nre.div_round(&d, prec).0,
            im: nim.div_round(&d, prec).0,
        }
    }

    /// L1 magnitude `|re| + |im|`, within a factor √2 of the modulus.
    fn mag1(&self) -> Dyadic {
        self.re.abs().add(&self.im.abs())
    }
}

fn eval_approx(coeffs: &[Approx], z: &Approx, prec: u32) -> Approx {
    let mut acc = Approx::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c, prec);
    }
    acc
}

fn derivative_approx(coeffs: &[Approx], prec: u32) -> Vec<Approx> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| {
            let k = Approx {
                re: Dyadic::from_int(k as i64),
                im: Dyadic::zero(),
            };
            c.mul(&k, prec)
        })
        .collect()
}

/// Starting points spread on the circle of the Cauchy root bound using
/// powers of the exact unimodular point (3+4i)/5, whose angle is an
/// irrational multiple of π, so the points never degenerate; fully
/// deterministic.
fn initial_points(deg: usize, coeffs: &[Approx], prec: u32) -> Vec<Approx> {
    let lead_mag = coeffs[deg].mag1();
    let mut max_ratio = Dyadic::zero();
    for c in &coeffs[..deg] {
        let r = c.mag1().div_round(&lead_mag, 32).0;
        max_ratio = max_ratio.max_val(&r);
    }
    let radius = Dyadic::one().add(&max_ratio);
    let omega = Approx {
        re: Dyadic::from_int(3).div_round(&Dyadic::from_int(5), prec).0,
        im: Dyadic::from_int(4).div_round(&Dyadic::from_int(5), prec).0,
    };
    let mut points = Vec::with_capacity(deg);
    let mut z = Approx {
        re: radius,
        im: Dyadic::zero(),
    };
    for _ in 0..deg {
        z = z.mul(&omega, prec);
        points.push(z.clone());
    }
    points
}

/// Simultaneous root iteration; returns approximations for all roots of a
/// squarefree polynomial given by approximate coefficients.
fn aberth(coeffs: &[Approx], prec: u32) -> Vec<Approx> {
    let deg = coeffs.len() - 1;
    let deriv = derivative_approx(coeffs, prec);
    let mut zs = initial_points(deg, coeffs, prec);
    let threshold_shift = -(prec as i64) + 8;
    for iter in 0..400u32 {
        let mut converged = true;
        for i in 0..deg {
            let pv = eval_approx(coeffs, &zs[i], prec);
            let pdv = eval_approx(&deriv, &zs[i], prec);
            if pdv.is_zero() {
                let bump = Dyadic::from_pow2(-2 - (iter as i64 % 16));
                zs[i].re = zs[i].re.add(&bump);
                zs[i].im = zs[i].im.add(&bump);
                converged = false;
                continue;
            }
            let newton = pv.div(&pdv, prec);
            let mut s = Approx::zero();
            let mut collided = false;
            for j in 0..deg {
                if i == j {
                    continue;
                }
                let diff = zs[i].sub(&zs[j], prec);
                if diff.is_zero() {
                    collided = true;
                    break;
                }
                let one = Approx {
                    re: Dyadic::one(),
                    im: Dyadic::zero(),
                };
                s = s.add(&one.div(&diff, prec), prec);
            }
            if collided {
                let bump = Dyadic::from_pow2(-2 - (iter as i64 % 16));
                zs[i].re = zs[i].re.add(&bump);
                converged = false;
                continue;
            }
            let denom_sub = newton.mul(&s, prec);
            let denom = Approx {
                re: Dyadic::one().sub(&denom_sub.re),
                im: denom_sub.im.neg(),
            };
            let w = if denom.is_zero() {
                newton.clone()
            } else {
                newton.div(&denom, prec)
            };
            zs[i] = zs[i].sub(&w, prec);
            let scale = Dyadic::one().max_val(&zs[i].mag1());
            if scale.mul_pow2(threshold_shift).lt(&w.mag1()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    zs
}

fn derivative_balls(coeffs: &[CBall], prec: u32) -> Vec<CBall> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale_int(k as i64, prec))
        .collect()
}

/// Disc-Newton certification of one simple root near `z`.
///
/// Returns a ball certified to contain exactly one root, with radius at
/// most `target` (after refinement), or `None` when no contraction could
/// be established at this precision.
fn certify_simple(
    coeffs: &[CBall],
    deriv: &[CBall],
    z: &Approx,
    prec: u32,
    target: &Dyadic,
) -> Option<CBall> {
    let center = CBall::exact(z.re.clone(), z.im.clone());
    let pv = eval_poly_ball(coeffs, &center, prec);
    let pdv = eval_poly_ball(deriv, &center, prec);
    let step = pv.div(&pdv, prec)?;
    let mut rho = step
        .mag_ub()
        .mul_pow2(2)
        .add(&Dyadic::from_pow2(-(prec as i64) + 6))
        .round_up_abs(16);
    let mut certified: Option<CBall> = None;
    for _ in 0..6 {
        let disc = CBall {
            re: z.re.clone(),
            im: z.im.clone(),
            rad: rho.clone(),
        };
        let pd_disc = eval_poly_ball(deriv, &disc, prec);
        if let Some(quot) = pv.div(&pd_disc, prec) {
            let t = center.sub(&quot, prec);
            if t.inside_interior_of(&disc) {
                certified = Some(t);
                break;
            }
        }
        rho = rho.mul_pow2(2);
    }
    let mut ball = certified?;
    // Newton refinement: each pass contracts quadratically until the
    // coefficient uncertainty floor is hit.
    for _ in 0..64 {
        if ball.rad.le(target) {
            return Some(ball);
        }
        let c = CBall::exact(ball.re.clone(), ball.im.clone());
        let pc = eval_poly_ball(coeffs, &c, prec);
        let pd = eval_poly_ball(deriv, &ball, prec).inv(prec)?;
        let t = c.sub(&pc.mul(&pd, prec), prec);
        if !t.rad.lt(&ball.rad) {
            break;
        }
        ball = t;
    }
    if ball.rad.le(target) {
        Some(ball)
    } else {
        None
    }
}

fn certify_all_simple(
    coeff_balls: &[CBall],
    prec: u32,
    target: &Dyadic,
) -> Option<Vec<CBall>> {
    let deg = coeff_balls.len() - 1;
    if coeff_balls[deg].contains_zero_possibly() {
        return None;
    }
    let approx_coeffs: Vec<Approx> = coeff_balls
        .iter()
        .map(|c| Approx {
            re: c.re.round_nearest(prec).0,
            im: c.im.round_nearest(prec).0,
        })
        .collect();
    let zs = aberth(&approx_coeffs, prec);
    let deriv = derivative_balls(coeff_balls, prec);
    let mut out = Vec::with_capacity(deg);
    for z in &zs {
        out.push(certify_simple(coeff_balls, &deriv, z, prec, target)?);
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if !out[i].disjoint_from(&out[j]) {
                return None;
            }
        }
    }
    out.sort_by(|a, b| a.re.cmp_val(&b.re).then(a.im.cmp_val(&b.im)));
    Some(out)
}

/// Finds all complex roots of an exact polynomial with certified discs of
/// radius below `tol/16`, escalating the working precision up to
/// `max_prec` bits.
///
/// Multiplicities come from exact squarefree decomposition, so certified
/// discs always hold exactly one distinct root each.
pub fn find_roots(
    p: &Polynomial,
    tol: &Dyadic,
    max_prec: u32,
) -> Result<Vec<CertifiedRoot>> {
    let deg = match p.degree() {
        Some(d) if d > 0 => d,
        _ => {
            return Err(Error::InvalidParameter(
                "root finding requires a nonconstant polynomial".into(),
            ))
        }
    };
    let decomp = p.squarefree_decomposition();
    let target = tol.abs().mul_pow2(-4);
    'ladder: for prec in ladder_up_to(max_prec) {
        let mut roots: Vec<CertifiedRoot> = Vec::with_capacity(deg);
        for (factor, mult) in &decomp {
            let coeff_balls: Vec<CBall> = factor
                .coeffs()
                .iter()
                .map(|c| CBall::from_gaussian(c, prec))
                .collect();
            match certify_all_simple(&coeff_balls, prec, &target) {
                Some(balls) => {
                    roots.extend(balls.into_iter().map(|ball| CertifiedRoot {
                        ball,
                        multiplicity: *mult,
                    }));
                }
                None => continue 'ladder,
            }
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if !roots[i].ball.disjoint_from(&roots[j].ball) {
                    continue 'ladder;
                }
            }
        }
        roots.sort_by(|a, b| {
            a.ball
                .re
                .cmp_val(&b.ball.re)
                .then(a.ball.im.cmp_val(&b.ball.im))
        });
        return Ok(roots);
    }
    Err(Error::PrecisionExhausted(
        "no certified isolation of all roots within the precision ladder".into(),
    ))
}

/// Finds all roots of a polynomial whose coefficients are only available
/// as balls (π-bearing coefficients), assuming the roots are simple; the
/// closure supplies coefficient enclosures at each requested precision.
pub fn find_simple_roots_with(
    mut coeffs_at: impl FnMut(u32) -> Vec<CBall>,
    tol: &Dyadic,
    max_prec: u32,
) -> Result<Vec<CBall>> {
    let target = tol.abs().mul_pow2(-4);
    for prec in ladder_up_to(max_prec) {
        let coeff_balls = coeffs_at(prec);
        if coeff_balls.len() < 2 {
            return Ok(Vec::new());
        }
        if let Some(balls) = certify_all_simple(&coeff_balls, prec, &target) {
            return Ok(balls);
        }
    }
    Err(Error::PrecisionExhausted(
        "no certified isolation of all roots within the precision ladder".into(),
    ))
}

/// Splits certified roots into those provably farther than `tol` from all
/// exact points (`kept`) and those provably within `tol` of some exact
/// point (`matched`); anything undecidable is an error.
///
/// All comparisons are exact over the rationals, so the only uncertainty
/// is the root disc itself.
pub fn filter_points(
    roots: &[CertifiedRoot],
    exact_points: &[GaussianRational],
    tol: &Dyadic,
) -> Result<(Vec<CertifiedRoot>, Vec<CertifiedRoot>)> {
    let tol_r = tol.abs().to_rational();
    let mut kept = Vec::new();
    let mut matched = Vec::new();
    for root in roots {
        let cre = root.ball.re.to_rational();
        let cim = root.ball.im.to_rational();
        let rad = root.ball.rad.to_rational();
        let mut is_matched = false;
        let mut ambiguous = false;
        for e in exact_points {
            let dre = &cre - &e.re;
            let dim = &cim - &e.im;
            let d2 = &dre * &dre + &dim * &dim;
            if rad < tol_r {
                let inner = &tol_r - &rad;
                if d2 < &inner * &inner {
                    is_matched = true;
                    break;
                }
            }
            let outer = &tol_r + &rad;
            if d2 <= &outer * &outer {
                ambiguous = true;
            }
        }
        if is_matched {
            matched.push(root.clone());
        } else if ambiguous {
            return Err(Error::AmbiguousRoot(format!(
                "root disc at ({}, {}) with radius {} straddles the match \
                 tolerance of an excluded point",
                root.ball.re.to_f64(),
                root.ball.im.to_f64(),
                root.ball.rad.to_f64()
            )));
        } else {
            kept.push(root.clone());
        }
    }
    Ok((kept, matched))
}
