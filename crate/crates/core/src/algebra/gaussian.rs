//! Gaussian rationals: complex numbers with rational real and imaginary
//! parts, the coefficient field for everything exact in this crate.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of `ℚ(i)`: `re + im·i` with both parts reduced fractions.
///
/// Denominators are kept strictly positive and fractions in lowest terms by
/// the underlying rational type, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    /// Builds from rational real and imaginary parts.
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    /// The rational integer `n`.
    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// The fraction `num/den` as a real Gaussian rational.
    ///
    /// # Panics
    /// Panics if `den` is zero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// `a + b·i` with integer parts.
    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²` as an exact rational; the workhorse of every disc-membership
    /// and modulus comparison (moduli themselves are usually irrational).
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics on zero; callers decide zero cases beforehand.
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "inverse of zero Gaussian rational");
        GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    /// Integer power, negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Scales by a plain rational.
    pub fn scale(&self, r: &BigRational) -> Self {
        GaussianRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Human form: `0`, `3/2`, `i`, `-i`, `2i`, `1/2-3/4i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_mag = self.im.abs();
        let im_part = if im_mag.is_one() {
            "i".to_string()
        } else {
            format!("{}i", fmt_rational(&im_mag))
        };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{im_part}");
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", fmt_rational(&self.re), sign, im_part)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim()).ok()?;
        let den = BigInt::from_str(d.trim()).ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        let num = BigInt::from_str(s).ok()?;
        Some(BigRational::from_integer(num))
    }
}

impl FromStr for GaussianRational {
    type Err = String;

    /// Parses the forms produced by `Display`, e.g. `-3/4`, `i`, `2-i`,
    /// `1/2+3/4i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty Gaussian rational".into());
        }
        // Split at the last +/- that is not the leading sign and not inside
        // a fraction; both parts of a Gaussian rational are sign-prefixed
        // terms, so scanning from the right is unambiguous.
        let bytes = s.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            if bytes[idx] == b'+' || bytes[idx] == b'-' {
                split = Some(idx);
                break;
            }
        }
        let (first, second) = match split {
            Some(idx) => (&s[..idx], &s[idx..]),
            None => (s.as_str(), ""),
        };
        let parse_term = |t: &str| -> Result<(BigRational, bool), String> {
            // Returns (value, is_imaginary).
            let imaginary = t.ends_with('i');
            let body = if imaginary { &t[..t.len() - 1] } else { t };
            let value = if imaginary && (body.is_empty() || body == "+" || body == "-") {
                let one = BigRational::one();
                if body == "-" {
                    -one
                } else {
                    one
                }
            } else {
                parse_rational(body).ok_or_else(|| format!("bad rational part {t:?}"))?
            };
            Ok((value, imaginary))
        };
        if second.is_empty() {
            let (v, imag) = parse_term(first)?;
            return Ok(if imag {
                GaussianRational::new(BigRational::zero(), v)
            } else {
                GaussianRational::new(v, BigRational::zero())
            });
        }
        let (v1, i1) = parse_term(first)?;
        let (v2, i2) = parse_term(second)?;
        if i1 == i2 {
            return Err(format!("two {} parts in {s:?}", if i1 { "imaginary" } else { "real" }));
        }
        let (re, im) = if i1 { (v2, v1) } else { (v1, v2) };
        Ok(GaussianRational::new(re, im))
    }
}

impl serde::Serialize for GaussianRational {
    /// Serializes as `{"re": "num/den", "im": "num/den"}` with exact
    /// rational strings, integers written without a denominator.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GaussianRational", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im", &self.im.to_string())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            re: String,
            im: String,
        }
        let raw = Raw::deserialize(d)?;
        let re: BigRational = raw
            .re
            .trim()
            .parse()
            .map_err(|e| serde::de::Error::custom(format!("bad re {:?}: {e}", raw.re)))?;
        let im: BigRational = raw
            .im
            .trim()
            .parse()
            .map_err(|e| serde::de::Error::custom(format!("bad im {:?}: {e}", raw.im)))?;
        Ok(GaussianRational::new(re, im))
    }
}
