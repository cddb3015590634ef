//! Nowhere-zero rational functions kept in factored form: a nonzero scale
//! times a product of `(z − root)^multiplicity` with distinct roots and
//! nonzero integer multiplicities.
//!
//! Keeping the factorization explicit makes winding data, orders, and the
//! logarithmic derivative exact and cheap; nothing here ever expands unless
//! asked to.

use std::fmt;

use super::gaussian::GaussianRational;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// `scale · ∏ (z − rootᵢ)^{mᵢ}` with distinct roots, sorted for canonicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    scale: GaussianRational,
    factors: Vec<(GaussianRational, i64)>,
}

impl FactoredRational {
    /// Builds from a scale and `(root, multiplicity)` pairs. Repeated roots
    /// are merged by adding multiplicities and factors that cancel to
    /// multiplicity zero are dropped.
    pub fn new(
        scale: GaussianRational,
        factors: Vec<(GaussianRational, i64)>,
    ) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidParameter(
                "factored form with zero scale".into(),
            ));
        }
        let mut merged: Vec<(GaussianRational, i64)> = Vec::new();
        for (root, mult) in factors {
            match merged.iter_mut().find(|(r, _)| *r == root) {
                Some((_, m)) => *m += mult,
                None => merged.push((root, mult)),
            }
        }
        merged.retain(|(_, m)| *m != 0);
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(FactoredRational {
            scale,
            factors: merged,
        })
    }

    /// The constant function 1.
    pub fn one() -> Self {
        FactoredRational {
            scale: GaussianRational::one(),
            factors: Vec::new(),
        }
    }

    /// A nonzero constant.
    pub fn from_scale(scale: GaussianRational) -> Result<Self> {
        Self::new(scale, Vec::new())
    }

    pub fn scale(&self) -> &GaussianRational {
        &self.scale
    }

    /// Factors as `(root, multiplicity)`, roots distinct and sorted.
    pub fn factors(&self) -> &[(GaussianRational, i64)] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies in a single factor `(z − root)^mult`.
    pub fn mul_linear(&self, root: GaussianRational, mult: i64) -> Self {
        let mut factors = self.factors.clone();
        factors.push((root, mult));
        FactoredRational::new(self.scale.clone(), factors).expect("scale unchanged")
    }

    /// Product of two factored forms.
    pub fn mul(&self, rhs: &FactoredRational) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(rhs.factors.iter().cloned());
        FactoredRational::new(&self.scale * &rhs.scale, factors).expect("nonzero scales")
    }

    /// Integer power (negative inverts every factor and the scale).
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return FactoredRational::one();
        }
        let scale = self.scale.pow(e);
        let factors = self
            .factors
            .iter()
            .map(|(r, m)| (r.clone(), m * e))
            .collect();
        FactoredRational::new(scale, factors).expect("power of nonzero scale")
    }

    /// Multiplicity at `a`: positive at zeros, negative at poles, zero
    /// elsewhere.
    pub fn order_at(&self, a: &GaussianRational) -> i64 {
        self.factors
            .iter()
            .find(|(r, _)| r == a)
            .map_or(0, |(_, m)| *m)
    }

    /// Order of vanishing at infinity, `−Σ multiplicities`.
    pub fn order_at_infinity(&self) -> i64 {
        -self.factors.iter().map(|(_, m)| m).sum::<i64>()
    }

    /// Evaluates at `z`; `None` at a pole, exact zero at a zero.
    pub fn eval(&self, z: &GaussianRational) -> Option<GaussianRational> {
        let mut acc = self.scale.clone();
        for (root, mult) in &self.factors {
            let lin = z - root;
            if lin.is_zero() {
                if *mult < 0 {
                    return None;
                }
                return Some(GaussianRational::zero());
            }
            acc = &acc * &lin.pow(*mult);
        }
        Some(acc)
    }

    /// Expands into a reduced numerator/denominator pair.
    pub fn expand(&self) -> RationalFunction {
        let mut num = Polynomial::constant(self.scale.clone());
        let mut den = Polynomial::one();
        for (root, mult) in &self.factors {
            let lin = Polynomial::from_roots(std::slice::from_ref(root));
            let p = lin.pow(mult.unsigned_abs() as usize);
            if *mult > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        RationalFunction::new(num, den).expect("denominator is a product of linears")
    }

    /// Numerator of the logarithmic derivative: with roots `rᵢ` and
    /// multiplicities `mᵢ`, this is `Σᵢ mᵢ ∏_{j≠i} (z − rⱼ)`, so that
    /// `g′/g = N / ∏ (z − rⱼ)`. Away from the roots its zeros are exactly
    /// the critical points of `g`.
    pub fn log_derivative_numerator(&self) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (i, (_, mult)) in self.factors.iter().enumerate() {
            let others: Vec<GaussianRational> = self
                .factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, (r, _))| r.clone())
                .collect();
            let term = Polynomial::from_roots(&others)
                .scale(&GaussianRational::from_int(*mult));
            acc = &acc + &term;
        }
        acc
    }

    /// Monic product `∏ (z − rootᵢ)` over all distinct roots.
    pub fn root_product(&self) -> Polynomial {
        let roots: Vec<GaussianRational> =
            self.factors.iter().map(|(r, _)| r.clone()).collect();
        Polynomial::from_roots(&roots)
    }
}

impl fmt::Display for FactoredRational {
    /// For example `2*(z - 1)^2*(z - i)^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.scale.is_one() || self.factors.is_empty() {
            write!(f, "{}", self.scale)?;
            wrote = true;
        }
        for (root, mult) in &self.factors {
            if wrote {
                write!(f, "*")?;
            }
            wrote = true;
            let lin = Polynomial::from_roots(std::slice::from_ref(root));
            if *mult == 1 {
                write!(f, "({lin})")?;
            } else {
                write!(f, "({lin})^{mult}")?;
            }
        }
        Ok(())
    }
}
