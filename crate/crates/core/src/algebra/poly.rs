//! Univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the zero polynomial is the empty list and `degree` is `len − 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::gaussian::GaussianRational;

/// Dense univariate polynomial with exact `ℚ(i)` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    /// Builds from coefficients, lowest degree first; trailing zeros are
    /// stripped to keep the representation canonical.
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `c·z^deg`.
    pub fn monomial(c: GaussianRational, deg: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); deg];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Polynomial::monomial(GaussianRational::one(), 1)
    }

    /// Monic product `∏ (z − r)` over the given roots.
    pub fn from_roots(roots: &[GaussianRational]) -> Self {
        let mut acc = Polynomial::one();
        for r in roots {
            acc = &acc * &Polynomial::new(vec![-r, GaussianRational::one()]);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Leading coefficient.
    ///
    /// # Panics
    /// Panics on the zero polynomial.
    pub fn leading(&self) -> &GaussianRational {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.leading().inv();
        self.scale(&inv)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
            .collect();
        Polynomial::new(coeffs)
    }

    /// Horner evaluation at an exact point.
    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// `self^e` by repeated multiplication.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder of division by `d`.
    ///
    /// # Panics
    /// Panics if `d` is zero.
    pub fn divrem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        if self.is_zero() || self.degree().unwrap() < dd {
            return (Polynomial::zero(), self.clone());
        }
        let lead_inv = d.leading().inv();
        let mut rem = self.coeffs.clone();
        let qd = rem.len() - 1 - dd;
        let mut quot = vec![GaussianRational::zero(); qd + 1];
        for k in (0..=qd).rev() {
            let factor = &rem[k + dd] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let prod = dc * &factor;
                rem[k + j] = &rem[k + j] - &prod;
            }
            quot[k] = factor;
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Synthetic division by `z − a`: returns the quotient and `self(a)`.
    pub fn div_linear(&self, a: &GaussianRational) -> (Polynomial, GaussianRational) {
        if self.is_zero() {
            return (Polynomial::zero(), GaussianRational::zero());
        }
        let mut quot = vec![GaussianRational::zero(); self.coeffs.len() - 1];
        let mut carry = GaussianRational::zero();
        for k in (0..self.coeffs.len()).rev() {
            let value = &self.coeffs[k] + &(&carry * a);
            if k == 0 {
                return (Polynomial::new(quot), value);
            }
            quot[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Order of vanishing at `a` (0 when `self(a) ≠ 0`).
    ///
    /// # Panics
    /// Panics on the zero polynomial, whose order is unbounded.
    pub fn order_at(&self, a: &GaussianRational) -> usize {
        assert!(!self.is_zero(), "order of the zero polynomial");
        let mut current = self.clone();
        let mut ord = 0;
        loop {
            let (quot, rem) = current.div_linear(a);
            if !rem.is_zero() {
                return ord;
            }
            ord += 1;
            current = quot;
        }
    }

    /// Squarefree part `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_constant() {
            return self.monic();
        }
        let g = poly_gcd(self, &self.derivative());
        self.div_exact(&g)
            .expect("gcd with derivative divides the polynomial")
            .monic()
    }

    /// Yun squarefree decomposition: monic pairwise-coprime squarefree
    /// factors with their multiplicities, product recovering `self` up to
    /// the leading coefficient.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a = poly_gcd(&f, &df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let c = df.div_exact(&a).expect("gcd divides derivative");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut mult = 1;
        while !b.is_constant() {
            let p = poly_gcd(&b, &d);
            if p.degree().unwrap_or(0) > 0 {
                out.push((p.clone(), mult));
            }
            b = b.div_exact(&p).expect("factor divides");
            let cn = d.div_exact(&p).expect("factor divides");
            d = &cn - &b.derivative();
            mult += 1;
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Polynomial::new(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[j + k] = &coeffs[j + k] + &prod;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Monic greatest common divisor by the Euclidean algorithm (coefficients
/// form a field, so each remainder is renormalized to keep numbers small).
///
/// # Panics
/// Panics when both inputs are zero.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert!(!(a.is_zero() && b.is_zero()), "gcd of two zero polynomials");
    let mut x = a.monic();
    let mut y = b.monic();
    while !y.is_zero() {
        let (_, r) = x.divrem(&y);
        x = y;
        y = r.monic();
    }
    x
}

impl fmt::Display for Polynomial {
    /// Highest-degree terms first, e.g. `z^3 - (1+i)*z + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            // Pull a minus sign out of purely real or purely imaginary
            // coefficients; mixed ones keep their sign inside parentheses.
            let (sign_neg, mag) = if (c.im.is_zero() && c.re.is_negative())
                || (c.re.is_zero() && c.im.is_negative())
            {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let needs_parens = !mag.im.is_zero() && !mag.re.is_zero();
            let coeff_str = if needs_parens {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if k == 0 {
                write!(f, "{coeff_str}")?;
            } else {
                if mag.is_one() {
                    // Bare power.
                } else {
                    write!(f, "{coeff_str}*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
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

    fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&(r, i)| gi(r, i)).collect())
    }

    #[test]
    fn gcd_shared_root() {
        // z^2 - 1 and z - 1 share the root 1.
        let a = poly(&[(-1, 0), (0, 0), (1, 0)]);
        let b = poly(&[(-1, 0), (1, 0)]);
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn gcd_coprime() {
        let a = poly(&[(1, 0), (0, 0), (1, 0)]);
        let b = poly(&[(2, 0), (0, 0), (1, 0)]);
        assert_eq!(poly_gcd(&a, &b), Polynomial::one());
    }

    #[test]
    fn gcd_gaussian_roots() {
        // (z-i)^2 (z+3) against (z-i)(z-5) leaves exactly z - i.
        let i = GaussianRational::i();
        let a = Polynomial::from_roots(&[i.clone(), i.clone(), gi(-3, 0)]);
        let b = Polynomial::from_roots(&[i.clone(), gi(5, 0)]);
        let g = poly_gcd(&a, &b);
        assert_eq!(g, Polynomial::from_roots(&[i]));
    }

    #[test]
    fn divrem_reconstructs() {
        let a = poly(&[(3, 1), (0, 0), (-2, 0), (0, 0), (1, 0)]);
        let d = poly(&[(1, -1), (2, 0), (1, 0)]);
        let (q, r) = a.divrem(&d);
        let back = &(&q * &d) + &r;
        assert_eq!(back, a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn synthetic_division_matches_eval() {
        let p = poly(&[(2, 0), (-3, 1), (0, 0), (1, 0)]);
        let a = gi(2, -1);
        let (q, rem) = p.div_linear(&a);
        assert_eq!(rem, p.eval(&a));
        let rebuilt = &(&q * &Polynomial::from_roots(&[a])) + &Polynomial::constant(rem);
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn order_at_root() {
        let p = Polynomial::from_roots(&[gi(1, 0), gi(1, 0), gi(1, 0), gi(-2, 0)]);
        assert_eq!(p.order_at(&gi(1, 0)), 3);
        assert_eq!(p.order_at(&gi(-2, 0)), 1);
        assert_eq!(p.order_at(&gi(0, 0)), 0);
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        let p = &Polynomial::from_roots(&[gi(1, 0), gi(1, 0), gi(1, 0)])
            * &Polynomial::from_roots(&[gi(-2, 0)]);
        let parts = p.squarefree_decomposition();
        assert_eq!(
            parts,
            vec![
                (Polynomial::from_roots(&[gi(-2, 0)]), 1),
                (Polynomial::from_roots(&[gi(1, 0)]), 3),
            ]
        );

        let q = Polynomial::from_roots(&[gi(0, 1), gi(0, -1)]).pow(2);
        let parts = q.squarefree_decomposition();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, 2);
        assert_eq!(parts[0].0, Polynomial::from_roots(&[gi(0, 1), gi(0, -1)]));
    }

    #[test]
    fn display_readable() {
        let p = poly(&[(2, 0), (-1, 0), (1, 0)]);
        assert_eq!(p.to_string(), "z^2 - z + 2");
        let q = Polynomial::new(vec![gi(0, -1), gi(1, 1)]);
        assert_eq!(q.to_string(), "(1+i)*z - i");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
