//! Scalar abstractions shared by the polynomial and root-finding code.
//!
//! [`Scalar`] is an ordered field with context-carrying constants; it is
//! implemented for `f64`, exact [`BigRational`] and [`HighReal`]. [`Real`]
//! adds the transcendental operations needed by the trigonometric root
//! formulas and is implemented for `f64` and [`HighReal`].
//!
//! Constants are built from an existing value (`x.int_like(3)`) rather than
//! from a global, because a [`HighReal`] carries its own working precision.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Signed, ToPrimitive, Zero};

use crate::precision::{HighReal, PrecisionPolicy};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The integer `n` in the same representation (and precision) as `self`.
    fn int_like(&self, n: i64) -> Self;

    fn ratio_like(&self, num: i64, den: i64) -> Self {
        self.int_like(num) / self.int_like(den)
    }

    fn zero_like(&self) -> Self {
        self.int_like(0)
    }

    fn one_like(&self) -> Self {
        self.int_like(1)
    }

    fn is_zero(&self) -> bool;

    fn abs(&self) -> Self {
        if *self < self.zero_like() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Real-branch cube root, or `None` when the representation cannot hold
    /// it exactly (a rational that is not a perfect cube).
    fn try_cbrt(&self) -> Option<Self>;

    /// True when `|self|` is below the policy tolerance. Exact types only
    /// accept zero.
    fn is_negligible(&self, policy: &PrecisionPolicy) -> bool;

    fn approx_eq(&self, other: &Self, policy: &PrecisionPolicy) -> bool {
        (self.clone() - other.clone()).is_negligible(policy)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn cube(&self) -> Self {
        self.clone() * self.clone() * self.clone()
    }
}

pub trait Real: Scalar {
    /// Square root of a non-negative value.
    fn sqrt(&self) -> Self;
    /// Real-branch cube root.
    fn cbrt(&self) -> Self;
    fn cos(&self) -> Self;
    fn sin(&self) -> Self;
    fn atan(&self) -> Self;
    fn pi_like(&self) -> Self;
    /// Smallest resolvable increment near `self`.
    fn ulp_like(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn int_like(&self, n: i64) -> Self {
        n as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        Float::abs(*self)
    }

    fn try_cbrt(&self) -> Option<Self> {
        Some(f64::cbrt(*self))
    }

    fn is_negligible(&self, policy: &PrecisionPolicy) -> bool {
        // f64 cannot honour more than about a dozen digits.
        let digits = policy.target_digits.min(10) as i32;
        Float::abs(*self) < 10f64.powi(-digits)
    }
}

impl Real for f64 {
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn cbrt(&self) -> Self {
        f64::cbrt(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn pi_like(&self) -> Self {
        std::f64::consts::PI
    }
    fn ulp_like(&self) -> Self {
        f64::EPSILON * Float::abs(*self).max(1.0)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

fn exact_icbrt(n: &BigInt) -> Option<BigInt> {
    let root = n.cbrt();
    (&root * &root * &root == *n).then_some(root)
}

impl Scalar for BigRational {
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn try_cbrt(&self) -> Option<Self> {
        let num = exact_icbrt(self.numer())?;
        let den = exact_icbrt(self.denom())?;
        Some(BigRational::new(num, den))
    }

    fn is_negligible(&self, _policy: &PrecisionPolicy) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for HighReal {
    fn int_like(&self, n: i64) -> Self {
        HighReal::int_like(self, n)
    }

    fn is_zero(&self) -> bool {
        HighReal::is_zero(self)
    }

    fn abs(&self) -> Self {
        HighReal::abs(self)
    }

    fn try_cbrt(&self) -> Option<Self> {
        Some(HighReal::cbrt(self))
    }

    fn is_negligible(&self, policy: &PrecisionPolicy) -> bool {
        HighReal::abs(self) < policy.tolerance()
    }
}

impl Real for HighReal {
    fn sqrt(&self) -> Self {
        HighReal::sqrt(self)
    }
    fn cbrt(&self) -> Self {
        HighReal::cbrt(self)
    }
    fn cos(&self) -> Self {
        HighReal::cos(self)
    }
    fn sin(&self) -> Self {
        HighReal::sin(self)
    }
    fn atan(&self) -> Self {
        HighReal::atan(self)
    }
    fn pi_like(&self) -> Self {
        HighReal::pi(self.digits())
    }
    fn ulp_like(&self) -> Self {
        self.ulp()
    }
    fn to_f64(&self) -> f64 {
        HighReal::to_f64(self)
    }
}

/// Converts an exact rational to any scalar, using `like` for context.
pub fn from_ratio_like<T: Scalar>(like: &T, r: &BigRational) -> T {
    let num = r.numer().to_i64();
    let den = r.denom().to_i64();
    match (num, den) {
        (Some(n), Some(d)) => like.ratio_like(n, d),
        _ => {
            let base = like.int_like(1 << 32);
            let lift = |n: &BigInt| -> T {
                let (sign, limbs) = n.to_u32_digits();
                let magnitude = limbs
                    .iter()
                    .rev()
                    .fold(like.zero_like(), |acc, limb| acc * base.clone() + like.int_like(i64::from(*limb)));
                if sign == num_bigint::Sign::Minus {
                    -magnitude
                } else {
                    magnitude
                }
            };
            lift(r.numer()) / lift(r.denom())
        }
    }
}
