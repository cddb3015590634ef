//! Bivariate polynomials over the Gaussian rationals, with the elimination
//! tools used to locate double points: resultants in `y` by fraction-free
//! Gaussian elimination of the Sylvester matrix, gcds via a primitive
//! remainder sequence, and exact division by `x − y`.

use std::fmt;

use super::gaussian::GaussianRational;
use super::poly::{poly_gcd, Polynomial};
use crate::error::{Error, Result};

/// Polynomial in `x` and `y`, stored `y`-major: entry `j` is the
/// coefficient of `y^j` as a polynomial in `x`. Trailing zero rows are
/// trimmed so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePolynomial {
    rows: Vec<Polynomial>,
}

impl BivariatePolynomial {
    /// Builds from coefficients of `y^0, y^1, …`, each a polynomial in `x`.
    pub fn new(mut rows: Vec<Polynomial>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BivariatePolynomial { rows }
    }

    pub fn zero() -> Self {
        BivariatePolynomial { rows: Vec::new() }
    }

    /// A polynomial in `x` alone.
    pub fn from_x_poly(p: Polynomial) -> Self {
        BivariatePolynomial::new(vec![p])
    }

    /// A polynomial in `y` alone.
    pub fn from_y_poly(p: Polynomial) -> Self {
        BivariatePolynomial::new(
            p.coeffs()
                .iter()
                .map(|c| Polynomial::constant(c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.rows.len() {
            0 => true,
            1 => self.rows[0].is_constant(),
            _ => false,
        }
    }

    /// Degree in `y`, `None` for the zero polynomial.
    pub fn degree_y(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Degree in `x`, `None` for the zero polynomial.
    pub fn degree_x(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.degree()).max()
    }

    /// Coefficients of `y^0, y^1, …` as polynomials in `x`.
    pub fn y_coefficients(&self) -> &[Polynomial] {
        &self.rows
    }

    /// Swaps the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        let dx = match self.degree_x() {
            None => return BivariatePolynomial::zero(),
            Some(d) => d,
        };
        let rows = (0..=dx)
            .map(|i| {
                Polynomial::new(self.rows.iter().map(|r| r.coeff(i)).collect())
            })
            .collect();
        BivariatePolynomial::new(rows)
    }

    /// Substitutes `x := x0`, leaving a polynomial in `y`.
    pub fn specialize_x(&self, x0: &GaussianRational) -> Polynomial {
        Polynomial::new(self.rows.iter().map(|r| r.eval(x0)).collect())
    }

    /// Substitutes `y := y0`, leaving a polynomial in `x`.
    pub fn specialize_y(&self, y0: &GaussianRational) -> Polynomial {
        let mut acc = Polynomial::zero();
        let mut pow = GaussianRational::one();
        for r in &self.rows {
            acc = &acc + &r.scale(&pow);
            pow = &pow * y0;
        }
        acc
    }

    pub fn eval(&self, x0: &GaussianRational, y0: &GaussianRational) -> GaussianRational {
        self.specialize_x(x0).eval(y0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.rows.len().max(rhs.rows.len());
        let rows = (0..n)
            .map(|j| &self.row(j) + &rhs.row(j))
            .collect();
        BivariatePolynomial::new(rows)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.rows.len().max(rhs.rows.len());
        let rows = (0..n)
            .map(|j| &self.row(j) - &rhs.row(j))
            .collect();
        BivariatePolynomial::new(rows)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePolynomial::zero();
        }
        let mut rows =
            vec![Polynomial::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (j, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.rows.iter().enumerate() {
                let prod = a * b;
                rows[j + k] = &rows[j + k] + &prod;
            }
        }
        BivariatePolynomial::new(rows)
    }

    fn row(&self, j: usize) -> Polynomial {
        self.rows.get(j).cloned().unwrap_or_else(Polynomial::zero)
    }

    /// Scales so the lexicographically leading term (highest `y` power,
    /// then highest `x` power) has coefficient 1.
    pub fn normalize_leading(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.rows.last().unwrap().leading().clone();
        if lead.is_one() {
            return self.clone();
        }
        let inv = lead.inv();
        BivariatePolynomial::new(self.rows.iter().map(|r| r.scale(&inv)).collect())
    }

    /// Exact quotient by `x − y`.
    ///
    /// Runs synthetic division in `x` with "root" `y`; the remainder is the
    /// diagonal restriction, which must vanish for the division to be exact.
    pub fn div_exact_by_x_minus_y(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(BivariatePolynomial::zero());
        }
        // x-major view: a[i] is the coefficient of x^i, a polynomial in y.
        let dx = self.degree_x().unwrap();
        let a: Vec<Polynomial> = (0..=dx)
            .map(|i| Polynomial::new(self.rows.iter().map(|r| r.coeff(i)).collect()))
            .collect();
        let mut quot = vec![Polynomial::zero(); dx.max(1)];
        let mut carry = Polynomial::zero();
        for i in (0..=dx).rev() {
            // Multiplying by y shifts coefficients up one degree.
            let mut shifted = vec![GaussianRational::zero()];
            shifted.extend(carry.coeffs().iter().cloned());
            let value = &a[i] + &Polynomial::new(shifted);
            if i == 0 {
                if !value.is_zero() {
                    return Err(Error::InternalInconsistency(
                        "division by x - y left a remainder".into(),
                    ));
                }
                break;
            }
            quot[i - 1] = value.clone();
            carry = value;
        }
        // quot is x-major with y-polynomial entries; transpose back.
        let dy = quot.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let rows = (0..=dy)
            .map(|j| Polynomial::new(quot.iter().map(|p| p.coeff(j)).collect()))
            .collect();
        Ok(BivariatePolynomial::new(rows))
    }
}

/// `p(x)·q(y) − p(y)·q(x)`, the antisymmetric pairing whose zero set away
/// from the diagonal records pairs identified by `p/q`.
pub fn cross_difference(p: &Polynomial, q: &Polynomial) -> BivariatePolynomial {
    let term = |a: &Polynomial, b: &Polynomial| -> BivariatePolynomial {
        // a(x)·b(y): row j is a(x)·b_j.
        BivariatePolynomial::new(
            b.coeffs().iter().map(|c| a.scale(c)).collect(),
        )
    };
    term(p, q).sub(&term(q, p))
}

/// Resultant of `F` and `G` with respect to `y`, a polynomial in `x`.
///
/// Both inputs must have positive degree in `y`; the Sylvester matrix is
/// laid out with ascending coefficients, `F`'s rows first, and its
/// determinant is computed by fraction-free (Bareiss) elimination so every
/// intermediate division is exact.
pub fn resultant_in_y(
    f: &BivariatePolynomial,
    g: &BivariatePolynomial,
) -> Result<Polynomial> {
    let n = match f.degree_y() {
        Some(d) if d > 0 => d,
        _ => {
            return Err(Error::DegenerateInput(
                "resultant requires positive degree in y".into(),
            ))
        }
    };
    let m = match g.degree_y() {
        Some(d) if d > 0 => d,
        _ => {
            return Err(Error::DegenerateInput(
                "resultant requires positive degree in y".into(),
            ))
        }
    };
    let size = n + m;
    let mut mat = vec![vec![Polynomial::zero(); size]; size];
    for k in 0..m {
        for (j, c) in f.y_coefficients().iter().enumerate() {
            mat[k][k + j] = c.clone();
        }
    }
    for k in 0..n {
        for (j, c) in g.y_coefficients().iter().enumerate() {
            mat[m + k][k + j] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

/// Determinant of a matrix of exact polynomials by Bareiss elimination.
fn bareiss_determinant(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut sign_neg = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let prod = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = prod
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        -&det
    } else {
        det
    }
}

/// Content of a bivariate polynomial: the monic gcd of its `y`-coefficients
/// as polynomials in `x`.
fn content_in_x(f: &BivariatePolynomial) -> Polynomial {
    let mut acc = Polynomial::zero();
    for r in f.y_coefficients() {
        if r.is_zero() {
            continue;
        }
        acc = if acc.is_zero() {
            r.monic()
        } else {
            poly_gcd(&acc, r)
        };
        if acc.is_constant() {
            return Polynomial::one();
        }
    }
    acc
}

fn primitive_part(f: &BivariatePolynomial) -> BivariatePolynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in_x(f);
    let rows = f
        .y_coefficients()
        .iter()
        .map(|r| {
            if r.is_zero() {
                Polynomial::zero()
            } else {
                r.div_exact(&c).expect("content divides every coefficient")
            }
        })
        .collect();
    BivariatePolynomial::new(rows)
}

/// One pseudo-remainder step: the remainder of `lc(b)^{Δ+1}·a` divided by
/// `b` in `y`, all arithmetic staying polynomial.
fn pseudo_rem(a: &BivariatePolynomial, b: &BivariatePolynomial) -> BivariatePolynomial {
    let db = b.degree_y().expect("pseudo-division by zero");
    let lc_b = b.y_coefficients().last().unwrap().clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree_y() {
        if dr < db {
            break;
        }
        let lc_r = r.y_coefficients().last().unwrap().clone();
        // r := lc(b)·r − lc(r)·y^{dr−db}·b
        let scaled_r = BivariatePolynomial::new(
            r.y_coefficients().iter().map(|c| c * &lc_b).collect(),
        );
        let mut shifted = vec![Polynomial::zero(); dr - db];
        shifted.extend(b.y_coefficients().iter().map(|c| c * &lc_r));
        r = scaled_r.sub(&BivariatePolynomial::new(shifted));
    }
    r
}

/// Greatest common divisor of two bivariate polynomials, normalized so the
/// lexicographically leading term has coefficient 1. Constant exactly when
/// the inputs share no common component.
///
/// # Panics
/// Panics when both inputs are zero.
pub fn bivariate_gcd(
    f: &BivariatePolynomial,
    g: &BivariatePolynomial,
) -> BivariatePolynomial {
    assert!(
        !(f.is_zero() && g.is_zero()),
        "gcd of two zero polynomials"
    );
    if f.is_zero() {
        return g.normalize_leading();
    }
    if g.is_zero() {
        return f.normalize_leading();
    }
    let content = poly_gcd(&content_in_x(f), &content_in_x(g));
    let mut a = primitive_part(f);
    let mut b = primitive_part(g);
    if a.degree_y() < b.degree_y() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    let pp = primitive_part(&a);
    pp.mul(&BivariatePolynomial::from_x_poly(content))
        .normalize_leading()
}

impl fmt::Display for BivariatePolynomial {
    /// Rows by ascending `y` power, e.g. `(x^2 - 1) + (2*x)*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, r) in self.rows.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = r.to_string().replace('z', "x");
            match j {
                0 => write!(f, "({coeff})")?,
                1 => write!(f, "({coeff})*y")?,
                _ => write!(f, "({coeff})*y^{j}")?,
            }
        }
        Ok(())
    }
}
