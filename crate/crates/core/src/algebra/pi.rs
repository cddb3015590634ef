//! Exact arithmetic in `ℚ(i)[π]`: scalars that are polynomials in π with
//! Gaussian-rational coefficients, and univariate polynomials over them.
//!
//! Because π is transcendental, a `ℚ(i)[π]` element is zero exactly when
//! every coefficient is zero, so equality and zero tests stay decidable.
//! This is what lets shifted-argument numerators like `f(z) − f(z + βπ)`
//! be manipulated exactly before any numerics happen.

use std::fmt;

use super::gaussian::GaussianRational;
use super::poly::Polynomial;

/// Element of `ℚ(i)[π]`: coefficients of `π^0, π^1, …`, trailing zeros
/// trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiScalar {
    coeffs: Vec<GaussianRational>,
}

impl PiScalar {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiScalar { coeffs }
    }

    pub fn zero() -> Self {
        PiScalar { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_gaussian(GaussianRational::one())
    }

    pub fn pi() -> Self {
        PiScalar::new(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        PiScalar::new(vec![c])
    }

    /// `c·π^e` for `e ∈ {0, 1}` shapes used by exponential coefficients.
    pub fn gaussian_times_pi_power(c: GaussianRational, e: bool) -> Self {
        if e {
            PiScalar::new(vec![GaussianRational::zero(), c])
        } else {
            PiScalar::from_gaussian(c)
        }
    }

    /// Exact zero test, valid because π is transcendental.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients of `π^0, π^1, …`.
    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// The Gaussian rational value when no π appears.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        match self.coeffs.len() {
            0 => Some(GaussianRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &PiScalar) -> PiScalar {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiScalar::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &PiScalar) -> PiScalar {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiScalar::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &PiScalar) -> PiScalar {
        if self.is_zero() || rhs.is_zero() {
            return PiScalar::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            for (k, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[j + k] = &coeffs[j + k] + &prod;
            }
        }
        PiScalar::new(coeffs)
    }

    pub fn neg(&self) -> PiScalar {
        PiScalar::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &GaussianRational) -> PiScalar {
        PiScalar::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }
}

impl fmt::Display for PiScalar {
    /// For example `1 + 2i*pi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*pi")?,
                _ => write!(f, "({c})*pi^{k}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in `z` with `ℚ(i)[π]` coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiPoly {
    coeffs: Vec<PiScalar>,
}

impl PiPoly {
    pub fn new(mut coeffs: Vec<PiScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiPoly { coeffs }
    }

    pub fn zero() -> Self {
        PiPoly { coeffs: Vec::new() }
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        PiPoly::new(
            p.coeffs()
                .iter()
                .map(|c| PiScalar::from_gaussian(c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[PiScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PiScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(PiScalar::zero)
    }

    pub fn add(&self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect())
    }

    pub fn mul(&self, rhs: &PiPoly) -> PiPoly {
        if self.is_zero() || rhs.is_zero() {
            return PiPoly::zero();
        }
        let mut coeffs =
            vec![PiScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            for (k, b) in rhs.coeffs.iter().enumerate() {
                coeffs[j + k] = coeffs[j + k].add(&a.mul(b));
            }
        }
        PiPoly::new(coeffs)
    }

    pub fn scale(&self, c: &PiScalar) -> PiPoly {
        PiPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Evaluates at a `ℚ(i)[π]` point by Horner.
    pub fn eval(&self, z: &PiScalar) -> PiScalar {
        let mut acc = PiScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    /// Synthetic division by `z − a`: quotient and remainder `self(a)`.
    pub fn div_linear(&self, a: &PiScalar) -> (PiPoly, PiScalar) {
        if self.is_zero() {
            return (PiPoly::zero(), PiScalar::zero());
        }
        let mut quot = vec![PiScalar::zero(); self.coeffs.len() - 1];
        let mut carry = PiScalar::zero();
        for k in (0..self.coeffs.len()).rev() {
            let value = self.coeffs[k].add(&carry.mul(a));
            if k == 0 {
                return (PiPoly::new(quot), value);
            }
            quot[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }
}

/// `p(z + t)` for an exact polynomial `p` and a `ℚ(i)[π]` shift `t`,
/// computed by Horner so no binomial expansion is needed.
pub fn shift_of_poly(p: &Polynomial, t: &PiScalar) -> PiPoly {
    let mut acc = PiPoly::zero();
    for c in p.coeffs().iter().rev() {
        // acc := acc·(z + t) + c
        let mut shifted = vec![PiScalar::zero()];
        shifted.extend(acc.coeffs().iter().cloned());
        acc = PiPoly::new(shifted)
            .add(&acc.scale(t))
            .add(&PiPoly::new(vec![PiScalar::from_gaussian(c.clone())]));
    }
    acc
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, im)
    }

    #[test]
    fn scalar_ring_ops() {
        let one = PiScalar::one();
        let pi = PiScalar::pi();
        // (1 + π)(1 − π) = 1 − π²
        let prod = one.add(&pi).mul(&one.sub(&pi));
        assert_eq!(
            prod,
            PiScalar::new(vec![gi(1, 0), gi(0, 0), gi(-1, 0)])
        );
        assert!(prod.sub(&prod).is_zero());
        assert_eq!(prod.as_gaussian(), None);
        assert_eq!(one.as_gaussian(), Some(gi(1, 0)));
    }

    #[test]
    fn shift_squares_binomially() {
        // (z + π)² = z² + 2πz + π²
        let p = Polynomial::monomial(GaussianRational::one(), 2);
        let shifted = shift_of_poly(&p, &PiScalar::pi());
        let pi2 = PiScalar::pi().mul(&PiScalar::pi());
        let two_pi = PiScalar::pi().scale(&gi(2, 0));
        assert_eq!(shifted, PiPoly::new(vec![pi2, two_pi, PiScalar::one()]));
    }

    #[test]
    fn shifted_difference_of_simple_pole_map() {
        // f = (z² + 1)/z shifted by τ: p(z)q(z+τ) − p(z+τ)q(z) collapses to
        // −τ·(z² + τz − 1).
        let p = Polynomial::new(vec![gi(1, 0), gi(0, 0), gi(1, 0)]);
        let q = Polynomial::z();
        let tau = PiScalar::gaussian_times_pi_power(gi(0, 2), true);
        let h = PiPoly::from_poly(&p)
            .mul(&shift_of_poly(&q, &tau))
            .sub(&shift_of_poly(&p, &tau).mul(&PiPoly::from_poly(&q)));
        let expect = PiPoly::new(vec![
            tau.clone(),
            tau.mul(&tau).neg(),
            tau.neg(),
        ]);
        assert_eq!(h, expect);
    }

    #[test]
    fn division_by_pi_root() {
        // z² − π² = (z − π)(z + π)
        let pi2 = PiScalar::pi().mul(&PiScalar::pi());
        let p = PiPoly::new(vec![pi2.neg(), PiScalar::zero(), PiScalar::one()]);
        let (q, r) = p.div_linear(&PiScalar::pi());
        assert!(r.is_zero());
        assert_eq!(q, PiPoly::new(vec![PiScalar::pi(), PiScalar::one()]));
        let (_, r2) = p.div_linear(&PiScalar::one());
        assert!(!r2.is_zero());
    }

    #[test]
    fn display_forms() {
        let s = PiScalar::new(vec![gi(1, 0), gi(0, 2)]);
        assert_eq!(s.to_string(), "1 + (2i)*pi");
        assert_eq!(PiScalar::zero().to_string(), "0");
    }
}
