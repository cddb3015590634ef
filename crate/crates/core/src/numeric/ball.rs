//! Complex disc arithmetic: a center with exact dyadic coordinates plus a
//! radius that rigorously bounds every rounding and propagation error.
//!
//! Geometric predicates (containment, disjointness) compare squared
//! distances exactly in dyadic arithmetic, so they never themselves
//! introduce uncertainty. π is produced on demand to any precision by a
//! Machin-style arctangent sum with an explicit error count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::Dyadic;
use crate::algebra::{GaussianRational, PiScalar};

/// Radii carry this many significant bits; they only ever need to be safe
/// overestimates, so short mantissas keep arithmetic cheap.
const RAD_BITS: u32 = 30;

/// Closed disc `{z : |z − center| ≤ rad}` with dyadic center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
}

impl CBall {
    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        CBall {
            re,
            im,
            rad: Dyadic::zero(),
        }
    }

    pub fn zero() -> Self {
        CBall::exact(Dyadic::zero(), Dyadic::zero())
    }

    pub fn from_int(n: i64) -> Self {
        CBall::exact(Dyadic::from_int(n), Dyadic::zero())
    }

    /// Encloses an exact Gaussian rational at `prec` bits.
    pub fn from_gaussian(g: &GaussianRational, prec: u32) -> Self {
        let (re, e1) = round_rational(&g.re, prec);
        let (im, e2) = round_rational(&g.im, prec);
        CBall {
            re,
            im,
            rad: e1.add(&e2).round_up_abs(RAD_BITS),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn neg(&self) -> Self {
        CBall {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, rhs: &CBall, prec: u32) -> Self {
        let (re, e1) = self.re.add(&rhs.re).round_nearest(prec);
        let (im, e2) = self.im.add(&rhs.im).round_nearest(prec);
        let rad = self
            .rad
            .add(&rhs.rad)
            .add(&e1)
            .add(&e2)
            .round_up_abs(RAD_BITS);
        CBall { re, im, rad }
    }

    pub fn sub(&self, rhs: &CBall, prec: u32) -> Self {
        self.add(&rhs.neg(), prec)
    }

    pub fn mul(&self, rhs: &CBall, prec: u32) -> Self {
        let (re, e1) = self
            .re
            .mul(&rhs.re)
            .sub(&self.im.mul(&rhs.im))
            .round_nearest(prec);
        let (im, e2) = self
            .re
            .mul(&rhs.im)
            .add(&self.im.mul(&rhs.re))
            .round_nearest(prec);
        let ma = self.center_mag_ub();
        let mb = rhs.center_mag_ub();
        let rad = ma
            .mul(&rhs.rad)
            .add(&mb.mul(&self.rad))
            .add(&self.rad.mul(&rhs.rad))
            .add(&e1)
            .add(&e2)
            .round_up_abs(RAD_BITS);
        CBall { re, im, rad }
    }

    /// Multiplies by an exact small integer.
    pub fn scale_int(&self, n: i64, prec: u32) -> Self {
        self.mul(&CBall::from_int(n), prec)
    }

    /// Upper bound for `|center|` (the L1 bound `|re| + |im|`).
    pub fn center_mag_ub(&self) -> Dyadic {
        self.re.abs().add(&self.im.abs()).round_up_abs(RAD_BITS)
    }

    /// Upper bound for `|z|` over the whole disc.
    pub fn mag_ub(&self) -> Dyadic {
        self.center_mag_ub().add(&self.rad).round_up_abs(RAD_BITS)
    }

    /// Lower bound for `|z|` over the whole disc (may be negative, meaning
    /// no useful bound; the disc then possibly contains 0).
    pub fn mag_lb(&self) -> Dyadic {
        self.re.abs().max_val(&self.im.abs()).sub(&self.rad)
    }

    pub fn contains_zero_possibly(&self) -> bool {
        // |center|² ≤ rad² decides it exactly.
        let c2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        c2.le(&self.rad.mul(&self.rad))
    }

    /// Reciprocal disc; `None` when the disc may contain 0.
    pub fn inv(&self, prec: u32) -> Option<Self> {
        let lb_c = self.re.abs().max_val(&self.im.abs());
        let lb_z = lb_c.sub(&self.rad);
        if !Dyadic::zero().lt(&lb_z) {
            return None;
        }
        let d = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let (re, e1) = self.re.div_round(&d, prec);
        let (im_pos, e2) = self.im.div_round(&d, prec);
        let (q, e3) = self.rad.div_round(&lb_c.mul(&lb_z), RAD_BITS);
        let rad = q.abs().add(&e3).add(&e1).add(&e2).round_up_abs(RAD_BITS);
        Some(CBall {
            re,
            im: im_pos.neg(),
            rad,
        })
    }

    pub fn div(&self, rhs: &CBall, prec: u32) -> Option<Self> {
        Some(self.mul(&rhs.inv(prec)?, prec))
    }

    /// Exact test: does the disc contain the exact point `g`?
    pub fn contains_gaussian(&self, g: &GaussianRational) -> bool {
        let dre = self.re.to_rational() - &g.re;
        let dim = self.im.to_rational() - &g.im;
        let d2 = &dre * &dre + &dim * &dim;
        let r = self.rad.to_rational();
        d2 <= &r * &r
    }

    /// Exact test: are the two closed discs disjoint?
    pub fn disjoint_from(&self, rhs: &CBall) -> bool {
        let dre = self.re.sub(&rhs.re);
        let dim = self.im.sub(&rhs.im);
        let d2 = dre.mul(&dre).add(&dim.mul(&dim));
        let rsum = self.rad.add(&rhs.rad);
        rsum.mul(&rsum).lt(&d2)
    }

    /// Exact test: is this disc contained in the open interior of `outer`?
    pub fn inside_interior_of(&self, outer: &CBall) -> bool {
        if !self.rad.lt(&outer.rad) {
            return false;
        }
        let dre = self.re.sub(&outer.re);
        let dim = self.im.sub(&outer.im);
        let d2 = dre.mul(&dre).add(&dim.mul(&dim));
        let slack = outer.rad.sub(&self.rad);
        d2.lt(&slack.mul(&slack))
    }

    /// Euclidean distance upper bound from the disc to an exact point.
    pub fn dist_ub_to(&self, g: &GaussianRational, prec: u32) -> Dyadic {
        let (gre, e1) = round_rational(&g.re, prec);
        let (gim, e2) = round_rational(&g.im, prec);
        let dre = self.re.sub(&gre).abs();
        let dim = self.im.sub(&gim).abs();
        dre.add(&dim)
            .add(&self.rad)
            .add(&e1)
            .add(&e2)
            .round_up_abs(RAD_BITS)
    }
}

/// Rounds a rational to `prec` significant bits with a rigorous error
/// bound.
pub(crate) fn round_rational(r: &BigRational, prec: u32) -> (Dyadic, Dyadic) {
    if r.is_zero() {
        return (Dyadic::zero(), Dyadic::zero());
    }
    let num = Dyadic::new(r.numer().clone(), 0);
    let den = Dyadic::new(r.denom().clone(), 0);
    num.div_round(&den, prec)
}

/// Horner evaluation of a polynomial with ball coefficients (lowest degree
/// first) at a ball point.
pub fn eval_poly_ball(coeffs: &[CBall], z: &CBall, prec: u32) -> CBall {
    let mut acc = CBall::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c, prec);
    }
    acc
}

/// `arctan(1/x) · 2^s` as an integer with an upper bound on the count of
/// lost units (floor truncations plus the alternating tail).
fn arctan_recip_scaled(x: u32, s: u64) -> (BigInt, BigInt) {
    let xx = BigInt::from(x) * BigInt::from(x);
    let mut xpow = BigInt::from(x);
    let mut k = 0u64;
    let mut acc = BigInt::zero();
    let mut terms = 0u64;
    loop {
        let denom = &xpow * BigInt::from(2 * k + 1);
        let term = (BigInt::one() << s) / denom;
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        terms += 1;
        xpow *= &xx;
        k += 1;
    }
    (acc, BigInt::from(terms + 1))
}

/// π as a real ball accurate to about `prec` bits, via
/// `π = 16·arctan(1/5) − 4·arctan(1/239)`.
pub fn pi_ball(prec: u32) -> CBall {
    let s = prec as u64 + 24;
    let (a, ea) = arctan_recip_scaled(5, s);
    let (b, eb) = arctan_recip_scaled(239, s);
    let value = BigInt::from(16) * a - BigInt::from(4) * b;
    let err = BigInt::from(16) * ea + BigInt::from(4) * eb;
    CBall {
        re: Dyadic::new(value, -(s as i64)),
        im: Dyadic::zero(),
        rad: Dyadic::new(err, -(s as i64)).round_up_abs(RAD_BITS),
    }
}

/// Encloses a `ℚ(i)[π]` scalar at `prec` bits.
pub fn pi_scalar_to_ball(x: &PiScalar, prec: u32) -> CBall {
    let pi = pi_ball(prec);
    let mut acc = CBall::zero();
    for c in x.coeffs().iter().rev() {
        acc = acc.mul(&pi, prec).add(&CBall::from_gaussian(c, prec), prec);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    #[test]
    fn enclosure_of_rationals() {
        let b = CBall::from_gaussian(&gr(1, 3), 100);
        assert!(b.contains_gaussian(&gr(1, 3)));
        assert!(!b.contains_gaussian(&gr(1, 2)));
        let exact = CBall::from_gaussian(&GaussianRational::from_parts(2, -5), 64);
        assert!(exact.is_exact());
    }

    #[test]
    fn arithmetic_encloses_exact_answers() {
        let prec = 80;
        let a = CBall::from_gaussian(&gr(1, 3), prec);
        let b = CBall::from_gaussian(&gr(1, 7), prec);
        let sum = a.add(&b, prec);
        assert!(sum.contains_gaussian(&gr(10, 21)));
        let prod = a.mul(&b, prec);
        assert!(prod.contains_gaussian(&gr(1, 21)));
        let quot = a.div(&b, prec).unwrap();
        assert!(quot.contains_gaussian(&gr(7, 3)));
    }

    #[test]
    fn inverse_of_zeroish_ball_fails() {
        let mut b = CBall::from_int(0);
        assert!(b.inv(64).is_none());
        b = CBall {
            re: Dyadic::from_pow2(-10),
            im: Dyadic::zero(),
            rad: Dyadic::from_pow2(-9),
        };
        assert!(b.inv(64).is_none());
    }

    #[test]
    fn complex_inverse_encloses() {
        let prec = 96;
        // (3 + 4i)⁻¹ = (3 − 4i)/25
        let z = CBall::from_gaussian(&GaussianRational::from_parts(3, 4), prec);
        let inv = z.inv(prec).unwrap();
        assert!(inv.contains_gaussian(&GaussianRational::new(
            BigRational::new(BigInt::from(3), BigInt::from(25)),
            BigRational::new(BigInt::from(-4), BigInt::from(25)),
        )));
    }

    #[test]
    fn geometry_predicates_exact() {
        let a = CBall {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
            rad: Dyadic::one(),
        };
        let b = CBall {
            re: Dyadic::from_int(3),
            im: Dyadic::zero(),
            rad: Dyadic::one(),
        };
        assert!(a.disjoint_from(&b));
        let c = CBall {
            re: Dyadic::from_int(2),
            im: Dyadic::zero(),
            rad: Dyadic::one(),
        };
        assert!(!a.disjoint_from(&c));
        let inner = CBall {
            re: Dyadic::from_pow2(-2),
            im: Dyadic::zero(),
            rad: Dyadic::from_pow2(-3),
        };
        assert!(inner.inside_interior_of(&a));
        assert!(!a.inside_interior_of(&inner));
    }

    #[test]
    fn pi_matches_known_digits() {
        let pi = pi_ball(200);
        // π to 50 decimals, correctly rounded (the 51st digit is 5, with a
        // nonzero remainder, so the last digit rounds up from 0 to 1).
        let want = "3.14159265358979323846264338327950288419716939937511";
        let rendered = pi.re.to_decimal_string(50);
        assert_eq!(rendered, want);
        assert!(pi.rad.le(&Dyadic::from_pow2(-200)));
    }

    #[test]
    fn pi_scalar_enclosure() {
        // 2π − 6 ∈ (0.28, 0.29)
        let s = PiScalar::new(vec![
            GaussianRational::from_int(-6),
            GaussianRational::from_int(2),
        ]);
        let b = pi_scalar_to_ball(&s, 128);
        assert!(Dyadic::from_f64(0.28).lt(&b.re));
        assert!(b.re.lt(&Dyadic::from_f64(0.29)));
        assert!(b.rad.le(&Dyadic::from_pow2(-100)));
    }

    #[test]
    fn poly_ball_eval() {
        let prec = 80;
        // p(z) = z² + 1 at z = i encloses 0.
        let coeffs = vec![
            CBall::from_int(1),
            CBall::from_int(0),
            CBall::from_int(1),
        ];
        let i = CBall::exact(Dyadic::zero(), Dyadic::one());
        let v = eval_poly_ball(&coeffs, &i, prec);
        assert!(v.contains_gaussian(&GaussianRational::zero()));
        assert!(v.mag_ub().le(&Dyadic::from_pow2(-60)));
    }
}
