//! Rational functions in one variable over the Gaussian rationals, kept in
//! lowest terms with a monic denominator so equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::poly::{poly_gcd, Polynomial};
use crate::error::{Error, Result};

/// Quotient of two polynomials, canonicalized on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds `num/den`, reducing to lowest terms and scaling the
    /// denominator to be monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameter(
                "rational function with zero denominator".into(),
            ));
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            });
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lead_inv = den.leading().inv();
        num = num.scale(&lead_inv);
        den = den.scale(&lead_inv);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    /// The identity function `z`.
    pub fn z() -> Self {
        Self::from_poly(Polynomial::z())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value when this is a constant function.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// True when this is exactly the polynomial `p ↦ p`.
    pub fn is_identity(&self) -> bool {
        self.den == Polynomial::one() && self.num == Polynomial::z()
    }

    /// Evaluates at `z`; `None` at a pole.
    pub fn eval(&self, z: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(z) / &d)
    }

    /// Order of vanishing at a finite point: positive at zeros, negative at
    /// poles, zero elsewhere.
    ///
    /// # Panics
    /// Panics on the zero function.
    pub fn order_at(&self, a: &GaussianRational) -> i64 {
        assert!(!self.is_zero(), "order of the zero function");
        self.num.order_at(a) as i64 - self.den.order_at(a) as i64
    }

    /// Order of vanishing at infinity: `deg den − deg num`, so `z` has
    /// order −1 and `1/z` has order 1.
    ///
    /// # Panics
    /// Panics on the zero function.
    pub fn order_at_infinity(&self) -> i64 {
        assert!(!self.is_zero(), "order of the zero function");
        self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64
    }

    /// Numerator of the derivative before reduction: `n′d − nd′`. Away from
    /// poles, its zeros are exactly the critical points.
    pub fn derivative_numerator(&self) -> Polynomial {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// Derivative as a reduced rational function.
    pub fn derivative(&self) -> RationalFunction {
        RationalFunction::new(self.derivative_numerator(), &self.den * &self.den)
            .expect("square of nonzero denominator")
    }

    /// Composition `self ∘ inner` by homogeneous evaluation, avoiding any
    /// intermediate division.
    pub fn compose(&self, inner: &RationalFunction) -> RationalFunction {
        let p = &inner.num;
        let q = &inner.den;
        let n = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let homogenize = |poly: &Polynomial| -> Polynomial {
            let mut acc = Polynomial::zero();
            let mut p_pow = Polynomial::one();
            let mut q_pows = Vec::with_capacity(n + 1);
            let mut qp = Polynomial::one();
            for _ in 0..=n {
                q_pows.push(qp.clone());
                qp = &qp * q;
            }
            for k in 0..=n {
                let c = poly.coeff(k);
                if !c.is_zero() {
                    let term = &p_pow * &q_pows[n - k];
                    acc = &acc + &term.scale(&c);
                }
                p_pow = &p_pow * p;
            }
            acc
        };
        RationalFunction::new(homogenize(&self.num), homogenize(&self.den))
            .expect("composition denominator is nonzero")
    }

    /// Integer power; negative exponents invert.
    ///
    /// # Panics
    /// Panics when raising the zero function to a negative power.
    pub fn pow(&self, e: i64) -> RationalFunction {
        if e < 0 {
            assert!(!self.is_zero(), "negative power of zero");
            let inv = RationalFunction::new(self.den.clone(), self.num.clone())
                .expect("nonzero numerator");
            return inv.pow(-e);
        }
        let mut acc = RationalFunction::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// # Panics
    /// Panics when dividing by the zero function.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by the zero function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, im)
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        let to_poly = |cs: &[i64]| {
            Polynomial::new(cs.iter().map(|&c| GaussianRational::from_int(c)).collect())
        };
        RationalFunction::new(to_poly(num), to_poly(den)).unwrap()
    }

    #[test]
    fn reduction_is_canonical() {
        // (2z^2 - 2) / (4z - 4) reduces to (z + 1)/2.
        let f = rf(&[-2, 0, 2], &[-4, 4]);
        assert_eq!(f.denominator(), &Polynomial::one());
        assert_eq!(
            f.numerator(),
            &Polynomial::new(vec![
                GaussianRational::from_ratio(1, 2),
                GaussianRational::from_ratio(1, 2)
            ])
        );
    }

    #[test]
    fn zero_denominator_rejected() {
        let r = RationalFunction::new(Polynomial::one(), Polynomial::zero());
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn field_ops_agree_with_eval() {
        let f = rf(&[1, 0, 1], &[0, 1]);
        let g = rf(&[-2, 1], &[1, 1]);
        let sum = &f + &g;
        let prod = &f * &g;
        let quot = &f / &g;
        let z = gi(3, 1);
        let fv = f.eval(&z).unwrap();
        let gv = g.eval(&z).unwrap();
        assert_eq!(sum.eval(&z).unwrap(), &fv + &gv);
        assert_eq!(prod.eval(&z).unwrap(), &fv * &gv);
        assert_eq!(quot.eval(&z).unwrap(), &fv / &gv);
    }

    #[test]
    fn orders_at_points_and_infinity() {
        // f = (z^2 + 1)/z has simple zeros at ±i, a simple pole at 0, and a
        // simple pole at infinity.
        let f = rf(&[1, 0, 1], &[0, 1]);
        assert_eq!(f.order_at(&gi(0, 1)), 1);
        assert_eq!(f.order_at(&gi(0, -1)), 1);
        assert_eq!(f.order_at(&gi(0, 0)), -1);
        assert_eq!(f.order_at(&gi(1, 0)), 0);
        assert_eq!(f.order_at_infinity(), -1);
        assert_eq!(rf(&[1], &[0, 1]).order_at_infinity(), 1);
    }

    #[test]
    fn derivative_matches_quotient_rule() {
        // (z/(z-1))' = -1/(z-1)^2.
        let f = rf(&[0, 1], &[-1, 1]);
        let expect = rf(&[-1], &[1, -2, 1]);
        assert_eq!(f.derivative(), expect);
    }

    #[test]
    fn compose_with_inversion() {
        // f = (z^2+1)/z satisfies f(1/z) = f(z).
        let f = rf(&[1, 0, 1], &[0, 1]);
        let sigma = rf(&[1], &[0, 1]);
        assert_eq!(f.compose(&sigma), f);
        // g = z becomes 1/z.
        assert_eq!(RationalFunction::z().compose(&sigma), sigma);
    }

    #[test]
    fn eval_at_pole_is_none() {
        let f = rf(&[1], &[0, 1]);
        assert_eq!(f.eval(&gi(0, 0)), None);
        assert_eq!(f.eval(&gi(2, 0)), Some(GaussianRational::from_ratio(1, 2)));
    }

    #[test]
    fn pow_negative_inverts() {
        let f = rf(&[0, 1], &[1]);
        let inv = f.pow(-2);
        assert_eq!(inv, rf(&[1], &[0, 0, 1]));
    }
}
