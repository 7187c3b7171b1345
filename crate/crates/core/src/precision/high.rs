use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fixed;

/// Smallest working precision a [`HighReal`] is ever built with.
pub const MIN_DIGITS: u32 = 10;

/// Fractional bits carried beyond the decimal precision, so the last decimal
/// digit is always resolved.
const EXTRA_BITS: u32 = 8;

fn frac_bits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + EXTRA_BITS
}

/// Arbitrary-precision real number with an explicit decimal working precision.
///
/// Stored as binary fixed point: `mantissa / 2^bits`, where `bits` is a
/// function of `digits`. The error bound is absolute, about one unit in the
/// last working decimal place, which is what the residual checks here need.
/// Operands of different precision are combined at the larger one.
#[derive(Clone)]
pub struct HighReal {
    mant: BigInt,
    bits: u32,
    digits: u32,
}

impl HighReal {
    fn from_parts(mant: BigInt, digits: u32) -> Self {
        HighReal { mant, bits: frac_bits(digits), digits }
    }

    fn clamp(digits: u32) -> u32 {
        digits.max(MIN_DIGITS)
    }

    pub fn zero(digits: u32) -> Self {
        Self::from_parts(BigInt::zero(), Self::clamp(digits))
    }

    pub fn from_i64(n: i64, digits: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), digits)
    }

    pub fn from_bigint(n: &BigInt, digits: u32) -> Self {
        let digits = Self::clamp(digits);
        Self::from_parts(n << frac_bits(digits), digits)
    }

    pub fn from_ratio(r: &BigRational, digits: u32) -> Self {
        let digits = Self::clamp(digits);
        let mant = fixed::div(r.numer(), r.denom(), frac_bits(digits));
        Self::from_parts(mant, digits)
    }

    /// `num / den`. Panics if `den` is zero.
    pub fn from_fraction(num: i64, den: i64, digits: u32) -> Self {
        Self::from_ratio(&BigRational::new(num.into(), den.into()), digits)
    }

    /// The binary value of a finite `f64`, rounded to `digits`.
    pub fn from_f64(x: f64, digits: u32) -> Option<Self> {
        BigRational::from_float(x).map(|r| Self::from_ratio(&r, digits))
    }

    pub fn pi(digits: u32) -> Self {
        let digits = Self::clamp(digits);
        Self::from_parts(fixed::pi(frac_bits(digits)), digits)
    }

    /// Parses `[+-]digits[.digits][e[+-]digits]`.
    pub fn parse_decimal(text: &str, digits: u32) -> Option<Self> {
        parse_decimal_ratio(text).map(|r| Self::from_ratio(&r, digits))
    }

    /// `10^-exp`, used for tolerances.
    pub fn ten_pow_neg(exp: u32, digits: u32) -> Self {
        let den = num_traits::pow(BigInt::from(10), exp as usize);
        Self::from_ratio(&BigRational::new(BigInt::one(), den), digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        let digits = Self::clamp(digits);
        let bits = frac_bits(digits);
        HighReal { mant: fixed::rescale(&self.mant, self.bits, bits), bits, digits }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        self.map(self.mant.abs())
    }

    fn map(&self, mant: BigInt) -> Self {
        HighReal { mant, bits: self.bits, digits: self.digits }
    }

    pub fn int_like(&self, n: i64) -> Self {
        Self::from_i64(n, self.digits)
    }

    pub fn recip(&self) -> Self {
        self.int_like(1) / self
    }

    pub fn checked_div(&self, rhs: &HighReal) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    /// `None` for negative input.
    pub fn checked_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            None
        } else {
            Some(self.map(fixed::sqrt(&self.mant, self.bits)))
        }
    }

    /// Square root; panics on negative input.
    pub fn sqrt(&self) -> Self {
        self.checked_sqrt().unwrap_or_else(|| panic!("square root of negative value {self}"))
    }

    /// Real-branch cube root: `sign(x) * |x|^(1/3)`.
    pub fn cbrt(&self) -> Self {
        self.map(fixed::cbrt(&self.mant, self.bits))
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = fixed::sin_cos(&self.mant, self.bits);
        (self.map(s), self.map(c))
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn atan(&self) -> Self {
        self.map(fixed::atan(&self.mant, self.bits))
    }

    /// Integer power; negative exponents take the reciprocal first.
    pub fn powi(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut n = exp.unsigned_abs();
        let mut acc = self.int_like(1);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// One unit in the last binary place.
    pub fn ulp(&self) -> Self {
        self.map(BigInt::one())
    }

    /// Nearest integer (ties away from zero).
    pub fn round(&self) -> BigInt {
        let half = BigInt::one() << (self.bits - 1);
        let m = self.mant.abs();
        let r = (m + half) >> self.bits;
        if self.is_negative() {
            -r
        } else {
            r
        }
    }

    /// Exact value of the stored mantissa as a rational.
    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_ratio().to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal with exactly `places` digits after the point,
    /// rounded half to even.
    pub fn to_fixed_string(&self, places: u32) -> String {
        let scale = num_traits::pow(BigInt::from(10), places as usize);
        let num = &self.mant * scale;
        let den = BigInt::one() << self.bits;
        let (mut q, r) = num.div_mod_floor(&den);
        match (&r << 1u32).cmp(&den) {
            Ordering::Greater => q += 1,
            Ordering::Equal if q.is_odd() => q += 1,
            _ => {}
        }
        let negative = q.is_negative();
        let text = q.abs().to_string();
        let places = places as usize;
        let body = if places == 0 {
            text
        } else {
            let padded = format!("{text:0>width$}", width = places + 1);
            let (int_part, frac_part) = padded.split_at(padded.len() - places);
            format!("{int_part}.{frac_part}")
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }

    fn aligned<F>(&self, rhs: &HighReal, op: F) -> HighReal
    where
        F: FnOnce(&BigInt, &BigInt, u32) -> BigInt,
    {
        if self.bits == rhs.bits {
            return self.map(op(&self.mant, &rhs.mant, self.bits));
        }
        let digits = self.digits.max(rhs.digits);
        let bits = frac_bits(digits);
        let a = fixed::rescale(&self.mant, self.bits, bits);
        let b = fixed::rescale(&rhs.mant, rhs.bits, bits);
        HighReal { mant: op(&a, &b, bits), bits, digits }
    }

    fn cmp_value(&self, rhs: &HighReal) -> Ordering {
        if self.bits == rhs.bits {
            return self.mant.cmp(&rhs.mant);
        }
        let bits = self.bits.max(rhs.bits);
        let a: BigInt = &self.mant << (bits - self.bits);
        let b: BigInt = &rhs.mant << (bits - rhs.bits);
        a.cmp(&b)
    }
}

pub(crate) fn parse_decimal_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (negative, rest) = match text.as_bytes().first()? {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (mantissa, exponent) = match rest.find(['e', 'E']) {
        Some(i) => (&rest[..i], rest[i + 1..].parse::<i32>().ok()?),
        None => (rest, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Some(if negative { -value } else { value })
}

impl PartialEq for HighReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for HighReal {}

impl PartialOrd for HighReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HighReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for HighReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().map(|p| p as u32).unwrap_or(self.digits);
        f.pad(&self.to_fixed_string(places))
    }
}

impl fmt::Debug for HighReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HighReal({}, digits={})", self.to_fixed_string(self.digits.min(40)), self.digits)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $kernel:expr) => {
        impl<'a, 'b> $trait<&'b HighReal> for &'a HighReal {
            type Output = HighReal;
            fn $method(self, rhs: &'b HighReal) -> HighReal {
                self.aligned(rhs, $kernel)
            }
        }
        impl $trait<HighReal> for HighReal {
            type Output = HighReal;
            fn $method(self, rhs: HighReal) -> HighReal {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a HighReal> for HighReal {
            type Output = HighReal;
            fn $method(self, rhs: &'a HighReal) -> HighReal {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<HighReal> for &'a HighReal {
            type Output = HighReal;
            fn $method(self, rhs: HighReal) -> HighReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b, _| a + b);
forward_binop!(Sub, sub, |a, b, _| a - b);
forward_binop!(Mul, mul, fixed::mul);
forward_binop!(Div, div, |a, b, bits| {
    assert!(!b.is_zero(), "HighReal division by zero");
    fixed::div(a, b, bits)
});

impl AddAssign<&HighReal> for HighReal {
    fn add_assign(&mut self, rhs: &HighReal) {
        *self = &*self + rhs;
    }
}

impl AddAssign for HighReal {
    fn add_assign(&mut self, rhs: HighReal) {
        *self += &rhs;
    }
}

impl SubAssign<&HighReal> for HighReal {
    fn sub_assign(&mut self, rhs: &HighReal) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&HighReal> for HighReal {
    fn mul_assign(&mut self, rhs: &HighReal) {
        *self = &*self * rhs;
    }
}

impl Neg for HighReal {
    type Output = HighReal;
    fn neg(self) -> HighReal {
        HighReal { mant: -self.mant, ..self }
    }
}

impl Neg for &HighReal {
    type Output = HighReal;
    fn neg(self) -> HighReal {
        self.map(-&self.mant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hr(text: &str) -> HighReal {
        HighReal::parse_decimal(text, 50).unwrap()
    }

    #[test]
    fn fixed_string_rounds_half_even() {
        assert_eq!(hr("2.5").to_fixed_string(0), "2");
        assert_eq!(hr("3.5").to_fixed_string(0), "4");
        assert_eq!(hr("-2.5").to_fixed_string(0), "-2");
        assert_eq!(hr("0.125").to_fixed_string(2), "0.12");
        assert_eq!(hr("0.375").to_fixed_string(2), "0.38");
        assert_eq!(hr("-0.001").to_fixed_string(2), "0.00");
        assert_eq!(hr("-1.25").to_fixed_string(3), "-1.250");
    }

    #[test]
    fn parses_decimal_forms() {
        assert_eq!(hr("1e3"), HighReal::from_i64(1000, 50));
        assert_eq!(hr("-0.5"), HighReal::from_fraction(-1, 2, 50));
        assert_eq!(hr(".25"), HighReal::from_fraction(1, 4, 50));
        assert!(HighReal::parse_decimal("1.2.3", 50).is_none());
        assert!(HighReal::parse_decimal("", 50).is_none());
        assert!(HighReal::parse_decimal("abc", 50).is_none());
    }

    #[test]
    fn pi_to_fifty_digits() {
        assert_eq!(HighReal::pi(50).to_fixed_string(50), "3.14159265358979323846264338327950288419716939937511");
    }

    #[test]
    fn mixed_precision_uses_the_larger() {
        let a = HighReal::from_fraction(1, 3, 20);
        let b = HighReal::from_fraction(1, 3, 60);
        assert_eq!((&a + &b).digits(), 60);
        assert!((&a - &b).abs() < HighReal::ten_pow_neg(20, 60));
    }

    #[test]
    fn precision_is_clamped() {
        assert_eq!(HighReal::from_i64(1, 2).digits(), MIN_DIGITS);
    }

    #[test]
    fn powi_and_round() {
        let x = HighReal::from_fraction(3, 2, 40);
        assert_eq!(x.powi(3), HighReal::from_fraction(27, 8, 40));
        assert_eq!(x.powi(-1), HighReal::from_fraction(2, 3, 40));
        assert_eq!(HighReal::from_fraction(-5, 2, 40).round(), BigInt::from(-3));
        assert_eq!(HighReal::from_fraction(7, 3, 40).round(), BigInt::from(2));
    }

    #[test]
    fn trig_identities_hold() {
        let x = hr("0.73");
        let (s, c) = x.sin_cos();
        let one = x.int_like(1);
        assert!((&s * &s + &c * &c - one).abs() < HighReal::ten_pow_neg(48, 50));
        let four_atan_one = x.int_like(1).atan() * x.int_like(4);
        assert!((four_atan_one - HighReal::pi(50)).abs() < HighReal::ten_pow_neg(48, 50));
    }
}
