//! Identification sets of candidate map pairs: deciding whether the set of
//! distinct points with equal images is finite, enumerating it with
//! certified enclosures, and the fiber diagnostics that drive the
//! perturbation search.
//!
//! For a pair `(f, g)` of rational components the identifications are the
//! solutions of the symmetric polynomial system obtained by dividing the
//! cross differences by `x − y`. Everything structural (finiteness,
//! puncture exclusion, which candidates are genuine) is decided by exact
//! `ℚ(i)` algebra; floating balls enter only to present enclosures and
//! residuals.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{
    bivariate_gcd, cross_difference, poly_gcd, resultant_in_y, shift_of_poly,
    BivariatePolynomial, FactoredRational, GaussianRational, PiPoly, PiScalar, Polynomial,
    RationalFunction,
};
use crate::domains::PuncturedPlane;
use crate::error::{Error, Result};
use crate::maps::ExpCoeff;
use crate::numeric::{
    eval_poly_ball, find_roots, find_simple_roots_with, pi_scalar_to_ball, CBall, CertifiedRoot,
    Dyadic,
};
use crate::util::SplitMix64;

/// Decimal digits used when rendering enclosure centers and residuals.
const REPORT_DIGITS: usize = 24;

/// The two symmetric polynomials whose common zeros away from the diagonal
/// are exactly the ordered identifications of the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSystem {
    pub f_tilde: BivariatePolynomial,
    pub g_tilde: BivariatePolynomial,
}

/// Outcome of the exact common-factor test on a pair system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentVerdict {
    Finite,
    InfiniteCommonComponent { witness: BivariatePolynomial },
}

/// Finiteness classification carried by an identification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finiteness {
    Finite,
    InfiniteCommonComponent { witness: String },
    CountableTruncated { k_max: u32 },
}

/// One unordered identification `{x, y}`, reported through certified
/// enclosures together with an upper bound on the image residual.
///
/// `k` tags which exponential period produced the pair when the second
/// component is exponential.
#[derive(Debug, Clone)]
pub struct DoublePoint {
    pub x: CBall,
    pub y: CBall,
    pub residual: Dyadic,
    pub k: Option<u32>,
}

impl Serialize for DoublePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        fn ball_fields(b: &CBall) -> serde_json::Value {
            serde_json::json!({
                "re": b.re.to_decimal_string(REPORT_DIGITS),
                "im": b.im.to_decimal_string(REPORT_DIGITS),
            })
        }
        let n = if self.k.is_some() { 4 } else { 3 };
        let mut s = serializer.serialize_struct("DoublePoint", n)?;
        s.serialize_field("x", &ball_fields(&self.x))?;
        s.serialize_field("y", &ball_fields(&self.y))?;
        s.serialize_field("residual", &self.residual.to_decimal_string(REPORT_DIGITS))?;
        if let Some(k) = self.k {
            s.serialize_field("k", &k)?;
        }
        s.end()
    }
}

/// Full identification report: the finiteness verdict, the surviving
/// pairs, and the pairs rejected because a coordinate hit a puncture.
#[derive(Debug, Clone, Serialize)]
pub struct DoublePointReport {
    pub finiteness: Finiteness,
    pub pairs: Vec<DoublePoint>,
    pub excluded: Vec<DoublePoint>,
}

/// Result of testing whether the first component separates a fiber of the
/// second.
#[derive(Debug, Clone)]
pub struct FiberCheck {
    pub injective: bool,
    pub fiber: Vec<CertifiedRoot>,
    pub colliding: Option<(CBall, CBall)>,
}

/// Builds the symmetric pair system of two rational components by dividing
/// both cross differences by `x − y`.
pub fn pair_system(f: &RationalFunction, g: &FactoredRational) -> Result<PairSystem> {
    if f.is_constant() {
        return Err(Error::InvalidParameter(
            "pair system requires a nonconstant first component".into(),
        ));
    }
    if g.is_constant() {
        return Err(Error::InvalidParameter(
            "pair system requires a nonconstant second component".into(),
        ));
    }
    let f_tilde = cross_difference(f.numerator(), f.denominator()).div_exact_by_x_minus_y()?;
    let ge = g.expand();
    let g_tilde = cross_difference(ge.numerator(), ge.denominator()).div_exact_by_x_minus_y()?;
    Ok(PairSystem { f_tilde, g_tilde })
}

/// Exact finiteness test: the identification set is infinite exactly when
/// the two system polynomials share a nonconstant factor.
pub fn common_component(sys: &PairSystem) -> ComponentVerdict {
    let h = bivariate_gcd(&sys.f_tilde, &sys.g_tilde);
    if h.is_constant() {
        ComponentVerdict::Finite
    } else {
        ComponentVerdict::InfiniteCommonComponent { witness: h }
    }
}

fn exact_point(g: &GaussianRational) -> CBall {
    CBall::from_gaussian(g, 128)
}

fn coeff_balls(p: &Polynomial, prec: u32) -> Vec<CBall> {
    p.coeffs()
        .iter()
        .map(|c| CBall::from_gaussian(c, prec))
        .collect()
}

/// Evaluates `num/den` over a ball; `None` when the denominator enclosure
/// cannot be bounded away from zero at this precision.
fn rational_value_ball(
    num: &Polynomial,
    den: &Polynomial,
    z: &CBall,
    prec: u32,
) -> Option<CBall> {
    let nv = eval_poly_ball(&coeff_balls(num, prec), z, prec);
    let dv = eval_poly_ball(&coeff_balls(den, prec), z, prec);
    nv.div(&dv, prec)
}

/// Evaluates a bivariate polynomial over a pair of balls.
fn eval_bivar_ball(b: &BivariatePolynomial, x: &CBall, y: &CBall, prec: u32) -> CBall {
    let rows: Vec<CBall> = b
        .y_coefficients()
        .iter()
        .map(|row| eval_poly_ball(&coeff_balls(row, prec), x, prec))
        .collect();
    eval_poly_ball(&rows, y, prec)
}

/// `p(z + t)` for an exact shift, by Horner.
fn shift_poly(p: &Polynomial, t: &GaussianRational) -> Polynomial {
    let lin = Polynomial::new(vec![t.clone(), GaussianRational::one()]);
    let mut acc = Polynomial::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &lin) + &Polynomial::constant(c.clone());
    }
    acc
}

fn sort_pairs(pairs: &mut [DoublePoint]) {
    pairs.sort_by(|a, b| {
        a.k.cmp(&b.k)
            .then(a.x.re.cmp_val(&b.x.re))
            .then(a.x.im.cmp_val(&b.x.im))
            .then(a.y.re.cmp_val(&b.y.re))
            .then(a.y.im.cmp_val(&b.y.im))
    });
}

/// Matches every root of `w` (a divisor of the squarefree elimination
/// polynomial) to the unique certified elimination root disc it lies in.
/// `Ok(None)` asks the caller to retry at a finer level.
fn match_roots_into(
    w: &Polynomial,
    xroots: &[CertifiedRoot],
    tol_seed: &Dyadic,
    max_prec: u32,
) -> Result<Option<Vec<usize>>> {
    let mut wtol = tol_seed.mul_pow2(-16);
    for _ in 0..3 {
        let wroots = match find_roots(w, &wtol, max_prec) {
            Ok(r) => r,
            Err(Error::PrecisionExhausted(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut matched = Vec::with_capacity(wroots.len());
        let mut clean = true;
        for wr in &wroots {
            let hits: Vec<usize> = xroots
                .iter()
                .enumerate()
                .filter(|(_, xr)| !wr.ball.disjoint_from(&xr.ball))
                .map(|(i, _)| i)
                .collect();
            if hits.len() == 1 {
                matched.push(hits[0]);
            } else {
                clean = false;
                break;
            }
        }
        if clean {
            return Ok(Some(matched));
        }
        wtol = wtol.mul_pow2(-32);
    }
    Ok(None)
}

/// Enumerates the identifications of a pair with two rational components
/// over a punctured plane.
///
/// Punctured coordinates are removed exactly: the elimination polynomial
/// is stripped of puncture roots by synthetic division and the partners of
/// each puncture are recovered by exact back substitution, so a report of
/// zero pairs is an exact statement, not a numerical one. Surviving pairs
/// carry certified enclosures and a residual upper bound; pairs are listed
/// when that bound is at most `tol`.
pub fn enumerate_rational(
    f: &RationalFunction,
    g: &FactoredRational,
    x: &PuncturedPlane,
    tol: &Dyadic,
) -> Result<DoublePointReport> {
    if tol.is_zero() || tol.is_negative() {
        return Err(Error::InvalidParameter(
            "residual tolerance must be positive".into(),
        ));
    }
    let sys = pair_system(f, g)?;
    if let ComponentVerdict::InfiniteCommonComponent { witness } = common_component(&sys) {
        return Ok(DoublePointReport {
            finiteness: Finiteness::InfiniteCommonComponent {
                witness: witness.to_string(),
            },
            pairs: Vec::new(),
            excluded: Vec::new(),
        });
    }
    if sys.f_tilde.is_constant() || sys.g_tilde.is_constant() {
        return Ok(DoublePointReport {
            finiteness: Finiteness::Finite,
            pairs: Vec::new(),
            excluded: Vec::new(),
        });
    }
    let r = resultant_in_y(&sys.f_tilde, &sys.g_tilde)?;
    if r.is_zero() {
        return Err(Error::InternalInconsistency(
            "elimination polynomial vanished although no common component exists".into(),
        ));
    }

    let punctures = x.punctures();
    let mut r_stripped = r.monic();
    let mut excluded: Vec<DoublePoint> = Vec::new();
    let mut partner_polys: Vec<Option<Polynomial>> = vec![None; punctures.len()];
    for (j, a) in punctures.iter().enumerate() {
        let m = r_stripped.order_at(a);
        if m == 0 {
            continue;
        }
        for _ in 0..m {
            r_stripped = r_stripped.div_linear(a).0;
        }
        let fy = sys.f_tilde.specialize_x(a);
        let gy = sys.g_tilde.specialize_x(a);
        if fy.is_zero() || gy.is_zero() {
            return Err(Error::InternalInconsistency(
                "specialized system vanished although no common component exists".into(),
            ));
        }
        let mut h = poly_gcd(&fy, &gy).monic();
        if h.is_constant() {
            continue;
        }
        for (i, b) in punctures.iter().enumerate() {
            let mi = h.order_at(b);
            if mi == 0 {
                continue;
            }
            for _ in 0..mi {
                h = h.div_linear(b).0;
            }
            if i > j {
                excluded.push(DoublePoint {
                    x: exact_point(a),
                    y: exact_point(b),
                    residual: Dyadic::zero(),
                    k: None,
                });
            }
        }
        if h.degree().map_or(false, |d| d > 0) {
            let report_tol = tol.mul_pow2(-20);
            for root in find_roots(&h, &report_tol, 8192)? {
                excluded.push(DoublePoint {
                    x: exact_point(a),
                    y: root.ball,
                    residual: Dyadic::zero(),
                    k: None,
                });
            }
            partner_polys[j] = Some(h);
        }
    }

    if r_stripped.is_constant() {
        return Ok(DoublePointReport {
            finiteness: Finiteness::Finite,
            pairs: Vec::new(),
            excluded,
        });
    }
    let r_sf = r_stripped.squarefree_part().monic();

    for level in 0..4u32 {
        match main_scan(&sys, f, g, punctures, tol, &r_sf, &partner_polys, level)? {
            Some(mut pairs) => {
                sort_pairs(&mut pairs);
                return Ok(DoublePointReport {
                    finiteness: Finiteness::Finite,
                    pairs,
                    excluded,
                });
            }
            None => continue,
        }
    }
    Err(Error::PrecisionExhausted(
        "identification enclosures could not be separated within the precision ladder".into(),
    ))
}

/// One full pass of the candidate scan at a fixed refinement level;
/// `Ok(None)` requests a retry one level finer.
#[allow(clippy::too_many_arguments)]
fn main_scan(
    sys: &PairSystem,
    f: &RationalFunction,
    g: &FactoredRational,
    punctures: &[GaussianRational],
    tol: &Dyadic,
    r_sf: &Polynomial,
    partner_polys: &[Option<Polynomial>],
    level: u32,
) -> Result<Option<Vec<DoublePoint>>> {
    let tol_x = tol.mul_pow2(-40 - 64 * level as i64);
    let max_prec = 4096u32 << level;
    let p_eval = 512u32 << (2 * level);
    let xroots = match find_roots(r_sf, &tol_x, max_prec) {
        Ok(r) => r,
        Err(Error::PrecisionExhausted(_)) => return Ok(None),
        Err(e) => return Err(e),
    };

    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); xroots.len()];
    for (j, hopt) in partner_polys.iter().enumerate() {
        let Some(h) = hopt else { continue };
        let w = poly_gcd(r_sf, h);
        if w.is_constant() {
            continue;
        }
        match match_roots_into(&w.monic(), &xroots, &tol_x, max_prec)? {
            Some(indices) => {
                for idx in indices {
                    partners[idx].push(j);
                }
            }
            None => return Ok(None),
        }
    }

    let ge = g.expand();
    let mut row_match_cache: Vec<Vec<Option<Vec<usize>>>> = vec![
        vec![None; sys.f_tilde.y_coefficients().len()],
        vec![None; sys.g_tilde.y_coefficients().len()],
    ];
    let mut pairs: Vec<DoublePoint> = Vec::new();

    for (idx, xr) in xroots.iter().enumerate() {
        let bx = &xr.ball;
        let mut source = None;
        for (which, tilde) in [&sys.f_tilde, &sys.g_tilde].into_iter().enumerate() {
            let rows = tilde.y_coefficients();
            let mut top = rows.len();
            while top > 0 {
                let row = &rows[top - 1];
                let vanishes = if row.is_zero() {
                    true
                } else {
                    let wrow = poly_gcd(r_sf, row);
                    if wrow.is_constant() {
                        false
                    } else {
                        let cached = row_match_cache[which][top - 1].clone();
                        let matched = match cached {
                            Some(m) => m,
                            None => match match_roots_into(
                                &wrow.monic(),
                                &xroots,
                                &tol_x,
                                max_prec,
                            )? {
                                Some(m) => {
                                    row_match_cache[which][top - 1] = Some(m.clone());
                                    m
                                }
                                None => return Ok(None),
                            },
                        };
                        matched.contains(&idx)
                    }
                };
                if vanishes {
                    top -= 1;
                } else {
                    break;
                }
            }
            if top > 0 {
                source = Some((which, top));
                break;
            }
        }
        let Some((which, top)) = source else {
            return Err(Error::InternalInconsistency(
                "both system polynomials vanished identically on a fiber".into(),
            ));
        };
        if top == 1 {
            continue;
        }
        let (src, other) = if which == 0 {
            (&sys.f_tilde, &sys.g_tilde)
        } else {
            (&sys.g_tilde, &sys.f_tilde)
        };
        let src_rows = &src.y_coefficients()[..top];
        let ytol = tol.mul_pow2(-20 - 32 * level as i64);
        let yballs = match find_simple_roots_with(
            |prec| {
                src_rows
                    .iter()
                    .map(|row| eval_poly_ball(&coeff_balls(row, prec), bx, prec))
                    .collect()
            },
            &ytol,
            max_prec,
        ) {
            Ok(b) => b,
            Err(Error::PrecisionExhausted(_)) => return Ok(None),
            Err(e) => return Err(e),
        };

        for by in yballs {
            let other_val = eval_bivar_ball(other, bx, &by, p_eval);
            if !other_val.contains_zero_possibly() {
                continue;
            }
            let mut hits_puncture_partner = false;
            for (j, a) in punctures.iter().enumerate() {
                if by.contains_gaussian(a) && partners[idx].contains(&j) {
                    hits_puncture_partner = true;
                    break;
                }
            }
            if hits_puncture_partner {
                continue;
            }
            let hits: Vec<usize> = xroots
                .iter()
                .enumerate()
                .filter(|(_, x2)| !by.disjoint_from(&x2.ball))
                .map(|(i, _)| i)
                .collect();
            if hits.len() > 1 {
                return Ok(None);
            }
            if hits.is_empty() {
                continue;
            }
            let idy = hits[0];
            if idy <= idx {
                continue;
            }
            let Some(fx) = rational_value_ball(f.numerator(), f.denominator(), bx, p_eval)
            else {
                return Ok(None);
            };
            let Some(fy) = rational_value_ball(f.numerator(), f.denominator(), &by, p_eval)
            else {
                return Ok(None);
            };
            let Some(gx) = rational_value_ball(ge.numerator(), ge.denominator(), bx, p_eval)
            else {
                return Ok(None);
            };
            let Some(gy) = rational_value_ball(ge.numerator(), ge.denominator(), &by, p_eval)
            else {
                return Ok(None);
            };
            let fdiff = fx.sub(&fy, p_eval);
            let gdiff = gx.sub(&gy, p_eval);
            let ub = fdiff.mag_ub().add(&gdiff.mag_ub());
            if ub.cmp_val(tol) != std::cmp::Ordering::Greater {
                pairs.push(DoublePoint {
                    x: bx.clone(),
                    y: by,
                    residual: ub,
                    k: None,
                });
            } else {
                let lb = fdiff.mag_lb().add(&gdiff.mag_lb());
                if lb.cmp_val(tol) != std::cmp::Ordering::Greater {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(pairs))
}

/// Enumerates the identifications of a pair whose second component is
/// exponential. Identifications live on countably many period translates;
/// the first `k_max` of them are reported.
///
/// For each `k` the period shift is exact (a Gaussian rational, or a
/// Gaussian rational multiple of π), the difference polynomial is stripped
/// of punctures and shifted punctures exactly, and every surviving root is
/// a genuine identification, so per-period counts are exact.
pub fn enumerate_exp(
    f: &RationalFunction,
    lambda: &ExpCoeff,
    x: &PuncturedPlane,
    k_max: u32,
    tol: &Dyadic,
) -> Result<DoublePointReport> {
    if lambda.is_zero() {
        return Err(Error::InvalidParameter(
            "exponential rate must be nonzero".into(),
        ));
    }
    if f.is_constant() {
        return Err(Error::InvalidParameter(
            "a constant first component identifies whole period translates".into(),
        ));
    }
    if tol.is_zero() || tol.is_negative() {
        return Err(Error::InvalidParameter(
            "residual tolerance must be positive".into(),
        ));
    }
    let mut pairs: Vec<DoublePoint> = Vec::new();
    let mut excluded: Vec<DoublePoint> = Vec::new();
    let punctures = x.punctures();
    let c_inv = lambda.coeff.inv();
    for k in 1..=k_max {
        let two_ik = GaussianRational::from_parts(0, 2 * k as i64);
        let step = &two_ik * &c_inv;
        let mut k_pairs = if lambda.has_pi {
            enumerate_exp_exact_step(f, punctures, &step, k, tol)?
        } else {
            enumerate_exp_pi_step(f, punctures, &step, k, tol)?
        };
        pairs.append(&mut k_pairs.0);
        excluded.append(&mut k_pairs.1);
    }
    sort_pairs(&mut pairs);
    Ok(DoublePointReport {
        finiteness: Finiteness::CountableTruncated { k_max },
        pairs,
        excluded,
    })
}

type PairsAndExcluded = (Vec<DoublePoint>, Vec<DoublePoint>);

/// Period branch where the shift `τ = 2ik/c` is itself a Gaussian
/// rational (the rate carries a factor of π).
fn enumerate_exp_exact_step(
    f: &RationalFunction,
    punctures: &[GaussianRational],
    tau: &GaussianRational,
    k: u32,
    tol: &Dyadic,
) -> Result<PairsAndExcluded> {
    let p = f.numerator();
    let q = f.denominator();
    let h = &(p * &shift_poly(q, tau)) - &(&shift_poly(p, tau) * q);
    if h.is_zero() {
        return Err(Error::InternalInconsistency(
            "difference polynomial vanished for a nonconstant rational component".into(),
        ));
    }
    let mut h = h.monic();
    let mut excluded = Vec::new();
    let mut strip_list: Vec<(GaussianRational, GaussianRational)> = Vec::new();
    for a in punctures {
        strip_list.push((a.clone(), a + tau));
    }
    for a in punctures {
        let shifted = a - tau;
        if !punctures.contains(&shifted) {
            strip_list.push((shifted, a.clone()));
        }
    }
    for (x0, y0) in &strip_list {
        let m = h.order_at(x0);
        if m == 0 {
            continue;
        }
        for _ in 0..m {
            h = h.div_linear(x0).0;
        }
        excluded.push(DoublePoint {
            x: exact_point(x0),
            y: exact_point(y0),
            residual: Dyadic::zero(),
            k: Some(k),
        });
    }
    if h.is_constant() {
        return Ok((Vec::new(), excluded));
    }
    let rtol = tol.mul_pow2(-40);
    let roots = find_roots(&h, &rtol, 8192)?;
    let mut pairs = Vec::with_capacity(roots.len());
    for root in roots {
        let pair = certify_exp_pair(f, &root.ball, &ExpShift::Exact(tau.clone()), k, tol)?;
        pairs.push(pair);
    }
    Ok((pairs, excluded))
}

/// Period branch where the shift `τ = (2ik/c)·π` carries one factor of π;
/// all exact bookkeeping happens in `ℚ(i)[π]`, where vanishing is
/// decidable.
fn enumerate_exp_pi_step(
    f: &RationalFunction,
    punctures: &[GaussianRational],
    step: &GaussianRational,
    k: u32,
    tol: &Dyadic,
) -> Result<PairsAndExcluded> {
    let tau = PiScalar::gaussian_times_pi_power(step.clone(), true);
    let p = f.numerator();
    let q = f.denominator();
    let h = PiPoly::from_poly(p)
        .mul(&shift_of_poly(q, &tau))
        .sub(&shift_of_poly(p, &tau).mul(&PiPoly::from_poly(q)));
    if h.is_zero() {
        return Err(Error::InternalInconsistency(
            "difference polynomial vanished for a nonconstant rational component".into(),
        ));
    }
    let mut h = h;
    let mut excluded = Vec::new();
    let mut strip_list: Vec<(PiScalar, PiScalar)> = Vec::new();
    for a in punctures {
        let pa = PiScalar::from_gaussian(a.clone());
        strip_list.push((pa.clone(), pa.add(&tau)));
        strip_list.push((pa.sub(&tau), pa));
    }
    for (x0, y0) in &strip_list {
        loop {
            let (quot, rem) = h.div_linear(x0);
            if rem.is_zero() {
                if !excluded
                    .iter()
                    .any(|e: &(PiScalar, PiScalar, u32)| &e.0 == x0)
                {
                    excluded.push((x0.clone(), y0.clone(), k));
                }
                h = quot;
            } else {
                break;
            }
        }
    }
    let excluded: Vec<DoublePoint> = excluded
        .into_iter()
        .map(|(x0, y0, kk)| DoublePoint {
            x: pi_scalar_to_ball(&x0, 192),
            y: pi_scalar_to_ball(&y0, 192),
            residual: Dyadic::zero(),
            k: Some(kk),
        })
        .collect();
    if h.is_constant() {
        return Ok((Vec::new(), excluded));
    }
    let rtol = tol.mul_pow2(-40);
    let coeffs = h.coeffs().to_vec();
    let roots = find_simple_roots_with(
        |prec| coeffs.iter().map(|c| pi_scalar_to_ball(c, prec)).collect(),
        &rtol,
        16384,
    )?;
    let mut pairs = Vec::with_capacity(roots.len());
    for ball in roots {
        let pair = certify_exp_pair(f, &ball, &ExpShift::Pi(tau.clone()), k, tol)?;
        pairs.push(pair);
    }
    Ok((pairs, excluded))
}

enum ExpShift {
    Exact(GaussianRational),
    Pi(PiScalar),
}

/// Certifies the residual of one exponential identification; the second
/// components agree exactly, so only the first component contributes.
fn certify_exp_pair(
    f: &RationalFunction,
    bx: &CBall,
    shift: &ExpShift,
    k: u32,
    tol: &Dyadic,
) -> Result<DoublePoint> {
    for prec in [512u32, 2048, 8192] {
        let tau_ball = match shift {
            ExpShift::Exact(t) => CBall::from_gaussian(t, prec),
            ExpShift::Pi(t) => pi_scalar_to_ball(t, prec),
        };
        let by = bx.add(&tau_ball, prec);
        let Some(fx) = rational_value_ball(f.numerator(), f.denominator(), bx, prec) else {
            continue;
        };
        let Some(fy) = rational_value_ball(f.numerator(), f.denominator(), &by, prec) else {
            continue;
        };
        let ub = fx.sub(&fy, prec).mag_ub();
        if ub.cmp_val(tol) != std::cmp::Ordering::Greater {
            return Ok(DoublePoint {
                x: bx.clone(),
                y: by,
                residual: ub,
                k: Some(k),
            });
        }
    }
    Err(Error::PrecisionExhausted(
        "could not certify the residual of an exponential identification".into(),
    ))
}

fn candidate_is_regular(
    ge: &RationalFunction,
    puncture_poly: &Polynomial,
    a: &GaussianRational,
) -> bool {
    let n = &ge.numerator().clone() - &ge.denominator().scale(a);
    match n.degree() {
        Some(d) if d > 0 => {}
        _ => return false,
    }
    if !poly_gcd(&n, &n.derivative()).is_constant() {
        return false;
    }
    poly_gcd(&n, puncture_poly).is_constant()
}

/// Searches a deterministic seeded sequence of small Gaussian rationals
/// for a value whose fiber under the second component is simple and avoids
/// every puncture.
pub fn find_regular_value(
    g: &FactoredRational,
    x: &PuncturedPlane,
    seed: u64,
) -> Result<GaussianRational> {
    if g.is_constant() {
        return Err(Error::InvalidParameter(
            "a constant component has no regular values".into(),
        ));
    }
    let ge = g.expand();
    let puncture_poly = x.puncture_polynomial();
    let mut rng = SplitMix64::new(seed);
    for _ in 0..4096 {
        let re = rng.signed(12);
        let im = rng.signed(12);
        let den = 1 + rng.below(4) as i64;
        let cand = GaussianRational::new(
            num_rational::BigRational::new(re.into(), den.into()),
            num_rational::BigRational::new(im.into(), den.into()),
        );
        if candidate_is_regular(&ge, &puncture_poly, &cand) {
            return Ok(cand);
        }
    }
    Err(Error::SearchExhausted(
        "no regular value found in the candidate sequence".into(),
    ))
}

/// Exact test that no point of the given fiber shares its image under `f`
/// with a critical point of `f` (in particular the fiber contains no
/// critical point of `f`).
pub fn fiber_avoids_branching(f: &RationalFunction, fiber: &Polynomial) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::InvalidParameter(
            "branching test requires a nonconstant component".into(),
        ));
    }
    if fiber.degree().map_or(true, |d| d == 0) {
        return Err(Error::InvalidParameter(
            "branching test requires a nonconstant fiber polynomial".into(),
        ));
    }
    let n_f = f.derivative_numerator();
    if n_f.is_constant() {
        return Ok(true);
    }
    let cross = cross_difference(f.numerator(), f.denominator());
    let bad = resultant_in_y(&BivariatePolynomial::from_y_poly(n_f), &cross)?;
    if bad.is_zero() {
        return Err(Error::InternalInconsistency(
            "critical-value elimination vanished for a nonconstant component".into(),
        ));
    }
    Ok(poly_gcd(fiber, &bad).is_constant())
}

/// Decides exactly whether `f` separates the fiber `g = a`, and on failure
/// exhibits a colliding pair of fiber points.
///
/// The verdict comes from the squarefreeness of the exact value
/// polynomial whose roots are the images of the fiber; enclosures are used
/// only to present the witnesses.
pub fn check_fiber_injectivity(
    f: &RationalFunction,
    g: &FactoredRational,
    a: &GaussianRational,
) -> Result<FiberCheck> {
    if g.is_constant() {
        return Err(Error::InvalidParameter(
            "fiber test requires a nonconstant second component".into(),
        ));
    }
    let ge = g.expand();
    let n = &ge.numerator().clone() - &ge.denominator().scale(a);
    let n_sf = match n.degree() {
        Some(d) if d > 0 => n.squarefree_part().monic(),
        _ => {
            return Err(Error::InvalidParameter(
                "the requested fiber is empty".into(),
            ))
        }
    };
    if !poly_gcd(&n_sf, f.denominator()).is_constant() {
        return Err(Error::InvalidParameter(
            "the fiber meets a pole of the first component".into(),
        ));
    }

    let fiber_size = n_sf.degree().unwrap_or(0);
    let injective = if f.is_constant() {
        fiber_size <= 1
    } else {
        let b1 = BivariatePolynomial::from_y_poly(n_sf.clone());
        let deg = f
            .numerator()
            .degree()
            .unwrap_or(0)
            .max(f.denominator().degree().unwrap_or(0));
        let rows: Vec<Polynomial> = (0..=deg)
            .map(|r| {
                Polynomial::new(vec![
                    f.numerator().coeff(r),
                    -f.denominator().coeff(r),
                ])
            })
            .collect();
        let b2 = BivariatePolynomial::new(rows);
        let s = resultant_in_y(&b1, &b2)?;
        if s.is_zero() {
            return Err(Error::InternalInconsistency(
                "value polynomial vanished on a pole-free fiber".into(),
            ));
        }
        poly_gcd(&s, &s.derivative()).is_constant()
    };

    let wtol = Dyadic::from_pow2(-40);
    let fiber = find_roots(&n_sf, &wtol, 4096).map_err(|e| match e {
        Error::PrecisionExhausted(msg) | Error::AmbiguousRoot(msg) => Error::AmbiguousFiber(msg),
        other => other,
    })?;
    let mut colliding = None;
    if !injective {
        'outer: for prec in [512u32, 2048, 8192] {
            let mut values = Vec::with_capacity(fiber.len());
            for root in &fiber {
                match rational_value_ball(f.numerator(), f.denominator(), &root.ball, prec) {
                    Some(v) => values.push(v),
                    None => continue 'outer,
                }
            }
            for i in 0..values.len() {
                for j in i + 1..values.len() {
                    if !values[i].disjoint_from(&values[j]) {
                        colliding = Some((fiber[i].ball.clone(), fiber[j].ball.clone()));
                        break 'outer;
                    }
                }
            }
        }
        if colliding.is_none() {
            return Err(Error::AmbiguousFiber(
                "could not isolate a colliding pair of fiber points".into(),
            ));
        }
    }
    Ok(FiberCheck {
        injective,
        fiber,
        colliding,
    })
}
