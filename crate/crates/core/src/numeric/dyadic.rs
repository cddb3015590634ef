//! Arbitrary-precision dyadic numbers `mantissa · 2^exponent`.
//!
//! Addition, subtraction, and multiplication are exact; division, square
//! root, and rounding return a result together with a rigorous error bound
//! (always a power of two), which is what the ball layer consumes. The
//! mantissa is kept odd (or zero) so representations are canonical and
//! equality is structural.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact binary floating-point value of unbounded precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic {
                man,
                exp: 0,
            };
        }
        let shift = man.trailing_zeros().unwrap_or(0);
        Dyadic {
            man: man >> shift,
            exp: exp + shift as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// `2^k`.
    pub fn from_pow2(k: i64) -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: k,
        }
    }

    /// Exact conversion of a finite `f64` (every finite double is dyadic).
    ///
    /// # Panics
    /// Panics on NaN or infinity.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "dyadic from non-finite float");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (man, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | 0x0010_0000_0000_0000, raw_exp - 1075)
        };
        let mut man = BigInt::from(man);
        if negative {
            man = -man;
        }
        Dyadic::new(man, exp)
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    /// Bit length of the mantissa (0 for zero).
    pub fn bit_length(&self) -> u64 {
        self.man.bits()
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    /// Exact sum.
    pub fn add(&self, rhs: &Dyadic) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(rhs.exp);
        let a = &self.man << (self.exp - exp) as u64;
        let b = &rhs.man << (rhs.exp - exp) as u64;
        Dyadic::new(a + b, exp)
    }

    /// Exact difference.
    pub fn sub(&self, rhs: &Dyadic) -> Self {
        self.add(&rhs.neg())
    }

    /// Exact product.
    pub fn mul(&self, rhs: &Dyadic) -> Self {
        Dyadic::new(&self.man * &rhs.man, self.exp + rhs.exp)
    }

    /// Exact product with `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    /// Exact comparison.
    pub fn cmp_val(&self, rhs: &Dyadic) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self.man.sign(), rhs.man.sign()) {
            (Sign::Minus, Sign::NoSign | Sign::Plus) => return Ordering::Less,
            (Sign::NoSign, Sign::Plus) => return Ordering::Less,
            (Sign::Plus, Sign::NoSign | Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let exp = self.exp.min(rhs.exp);
        let a = &self.man << (self.exp - exp) as u64;
        let b = &rhs.man << (rhs.exp - exp) as u64;
        a.cmp(&b)
    }

    pub fn lt(&self, rhs: &Dyadic) -> bool {
        self.cmp_val(rhs) == std::cmp::Ordering::Less
    }

    pub fn le(&self, rhs: &Dyadic) -> bool {
        self.cmp_val(rhs) != std::cmp::Ordering::Greater
    }

    pub fn max_val(&self, rhs: &Dyadic) -> Dyadic {
        if self.lt(rhs) {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    /// Exact value as a rational number.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Rounds to `p` significant bits; returns the rounded value and an
    /// upper bound on the absolute rounding error (a power of two).
    pub fn round_nearest(&self, p: u32) -> (Dyadic, Dyadic) {
        let bits = self.bit_length();
        if bits <= p as u64 {
            return (self.clone(), Dyadic::zero());
        }
        let drop = (bits - p as u64) as i64;
        let half = BigInt::one() << (drop - 1) as u64;
        let shifted = if self.man.is_negative() {
            -((-&self.man + half) >> drop as u64)
        } else {
            (&self.man + half) >> drop as u64
        };
        (
            Dyadic::new(shifted, self.exp + drop),
            Dyadic::from_pow2(self.exp + drop - 1),
        )
    }

    /// Rounds a nonnegative value up to at most `p` significant bits; the
    /// result is always `≥ self`.
    ///
    /// # Panics
    /// Panics on negative input.
    pub fn round_up_abs(&self, p: u32) -> Dyadic {
        assert!(!self.is_negative(), "round_up_abs of negative value");
        let bits = self.bit_length();
        if bits <= p as u64 {
            return self.clone();
        }
        let drop = (bits - p as u64) as i64;
        Dyadic::new((&self.man >> drop as u64) + 1, self.exp + drop)
    }

    /// Quotient rounded toward zero with roughly `p` significant bits,
    /// together with an upper bound on the absolute error.
    ///
    /// # Panics
    /// Panics when dividing by zero.
    pub fn div_round(&self, d: &Dyadic, p: u32) -> (Dyadic, Dyadic) {
        assert!(!d.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let s = (p as i64 + d.bit_length() as i64 + 2 - self.bit_length() as i64)
            .max(0) as u64;
        let n = &self.man << s;
        let q = &n / &d.man;
        let exp = self.exp - d.exp - s as i64;
        let err = if (&n % &d.man).is_zero() {
            Dyadic::zero()
        } else {
            Dyadic::from_pow2(exp)
        };
        (Dyadic::new(q, exp), err)
    }

    /// Lower bound for the square root of a nonnegative value, accurate to
    /// roughly `p` significant bits.
    ///
    /// # Panics
    /// Panics on negative input.
    pub fn sqrt_lb(&self, p: u32) -> Dyadic {
        self.sqrt_directed(p).0
    }

    /// Upper bound for the square root of a nonnegative value.
    pub fn sqrt_ub(&self, p: u32) -> Dyadic {
        self.sqrt_directed(p).1
    }

    fn sqrt_directed(&self, p: u32) -> (Dyadic, Dyadic) {
        assert!(!self.is_negative(), "square root of negative value");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let mut s = (2 * p as i64 - self.bit_length() as i64).max(0);
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let scaled = &self.man << s as u64;
        let root = scaled.sqrt();
        let half_exp = (self.exp - s) / 2;
        (
            Dyadic::new(root.clone(), half_exp),
            Dyadic::new(root + 1, half_exp),
        )
    }

    /// Decimal rendering with exactly `frac_digits` digits after the point,
    /// rounded to nearest (ties away from zero). Deterministic.
    pub fn to_decimal_string(&self, frac_digits: usize) -> String {
        let pow10 = BigInt::from(10u32).pow(frac_digits as u32);
        let num = self.man.abs() * &pow10;
        let scaled = if self.exp >= 0 {
            num << self.exp as u64
        } else {
            let shift = (-self.exp) as u64;
            (num + (BigInt::one() << (shift - 1))) >> shift
        };
        let digits = scaled.to_string();
        let (int_part, frac_part) = if digits.len() > frac_digits {
            let split = digits.len() - frac_digits;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            (
                "0".to_string(),
                format!("{:0>width$}", digits, width = frac_digits),
            )
        };
        let sign = if self.man.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if frac_digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Nearest `f64` (for diagnostics only; may overflow to infinity).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (rounded, _) = self.round_nearest(53);
        let mant = i64::try_from(&rounded.man).expect("53-bit mantissa fits") as f64;
        mant * 2f64.powi(rounded.exp.clamp(-2000, 2000) as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: i64) -> Dyadic {
        Dyadic::from_int(n)
    }

    #[test]
    fn normalization_canonical() {
        assert_eq!(Dyadic::new(BigInt::from(8), 0), Dyadic::new(BigInt::from(1), 3));
        assert_eq!(Dyadic::new(BigInt::zero(), 57), Dyadic::zero());
    }

    #[test]
    fn exact_ring_ops() {
        let a = Dyadic::new(BigInt::from(3), -2); // 0.75
        let b = Dyadic::new(BigInt::from(5), -3); // 0.625
        assert_eq!(a.add(&b), Dyadic::new(BigInt::from(11), -3));
        assert_eq!(a.sub(&b), Dyadic::new(BigInt::from(1), -3));
        assert_eq!(a.mul(&b), Dyadic::new(BigInt::from(15), -5));
        assert!(b.lt(&a));
        assert_eq!(d(7).cmp_val(&d(7)), std::cmp::Ordering::Equal);
    }

    #[test]
    fn from_f64_exact() {
        assert_eq!(Dyadic::from_f64(0.5), Dyadic::from_pow2(-1));
        assert_eq!(Dyadic::from_f64(-3.0), d(-3));
        let x = Dyadic::from_f64(1e-10);
        // 1e-10 is not a power of two but must round-trip through rationals.
        assert_eq!(x.to_rational(), BigRational::from_float(1e-10).unwrap());
    }

    #[test]
    fn rounding_error_bounds() {
        let x = Dyadic::new(BigInt::from(0b101011), 0); // 43
        let (r, e) = x.round_nearest(3);
        // 43 on the 3-bit grid {…, 40, 48, …} rounds to 40, error ≤ 4.
        assert_eq!(r, d(40));
        assert!(x.sub(&r).abs().le(&e));

        let up = Dyadic::new(BigInt::from(0b100001), 0).round_up_abs(3);
        assert!(d(33).le(&up));
        assert_eq!(up, d(40)); // 100001₂ → (100₂+1)·2³
    }

    #[test]
    fn division_with_error_bound() {
        let (q, e) = d(1).div_round(&d(3), 60);
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        let err = (q.to_rational() - third).abs();
        assert!(err <= e.to_rational());
        assert!(e.to_rational() < BigRational::new(BigInt::one(), BigInt::from(1u64 << 58)));
    }

    #[test]
    fn sqrt_directed_bounds() {
        let two = d(2);
        let lo = two.sqrt_lb(80);
        let hi = two.sqrt_ub(80);
        assert!(lo.lt(&hi));
        assert!(lo.mul(&lo).le(&two));
        assert!(two.le(&hi.mul(&hi)));
        // Interval width shrinks below 2⁻⁷⁰.
        assert!(hi.sub(&lo).le(&Dyadic::from_pow2(-70)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(d(3).to_decimal_string(2), "3.00");
        assert_eq!(Dyadic::from_pow2(-1).to_decimal_string(3), "0.500");
        assert_eq!(Dyadic::from_pow2(-1).neg().to_decimal_string(3), "-0.500");
        // 1/8 = 0.125 rounds half away from zero at 2 digits → 0.13.
        assert_eq!(Dyadic::from_pow2(-3).to_decimal_string(2), "0.13");
        assert_eq!(Dyadic::zero().to_decimal_string(2), "0.00");
    }

    #[test]
    fn to_f64_roundtrip_small() {
        for v in [0.0, 1.5, -0.375, 1024.0] {
            assert_eq!(Dyadic::from_f64(v).to_f64(), v);
        }
    }
}
