//! Arbitrary-precision substrate: [`HighReal`], the precision policy, and the
//! real-branch conventions for cube roots and arctangents.

mod fixed;
mod high;

pub use high::{HighReal, MIN_DIGITS};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Target digits for equality checks plus guard digits for intermediate work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub target_digits: u32,
    pub guard_digits: u32,
}

impl PrecisionPolicy {
    pub const DEFAULT_GUARD: u32 = 20;

    pub fn new(target_digits: u32) -> Self {
        PrecisionPolicy { target_digits, guard_digits: Self::DEFAULT_GUARD }
    }

    pub fn with_guard(self, guard_digits: u32) -> Self {
        PrecisionPolicy { guard_digits, ..self }
    }

    pub fn working_digits(&self) -> u32 {
        (self.target_digits + self.guard_digits).max(MIN_DIGITS)
    }

    /// `10^-target_digits` at working precision.
    pub fn tolerance(&self) -> HighReal {
        HighReal::ten_pow_neg(self.target_digits, self.working_digits())
    }

    pub fn int(&self, n: i64) -> HighReal {
        HighReal::from_i64(n, self.working_digits())
    }

    pub fn ratio(&self, num: i64, den: i64) -> HighReal {
        HighReal::from_fraction(num, den, self.working_digits())
    }

    pub fn pi(&self) -> HighReal {
        HighReal::pi(self.working_digits())
    }

    /// Re-expresses `x` at working precision.
    pub fn lift(&self, x: &HighReal) -> HighReal {
        x.with_digits(self.working_digits())
    }

    /// `|a - b| < 10^-target_digits`.
    pub fn approx_eq(&self, a: &HighReal, b: &HighReal) -> bool {
        (a - b).abs() < self.tolerance()
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy::new(50)
    }
}

/// `sign(x) * |x|^(1/3)`.
pub fn real_cbrt<T: Real>(x: &T) -> T {
    x.cbrt()
}

/// `arctan(num/den)`, with `sign(num) * pi/2` when `den` is zero.
///
/// For `den < 0` this is still the principal value of the quotient; callers
/// that need the other half-plane apply their own sign split.
pub fn branch_arctan<T: Real>(num: &T, den: &T) -> Result<T> {
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Err(Error::DegenerateAngle),
        (_, true) => {
            let half_pi = num.pi_like() / num.int_like(2);
            Ok(if *num < num.zero_like() { -half_pi } else { half_pi })
        }
        _ => Ok((num.clone() / den.clone()).atan()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::new(40)
    }

    #[test]
    fn cbrt_of_exact_cubes() {
        let p = policy();
        assert_eq!(real_cbrt(&p.int(8)), p.int(2));
        assert_eq!(real_cbrt(&p.int(-1)), p.int(-1));
        assert_eq!(real_cbrt(&p.int(-27)), p.int(-3));
    }

    #[test]
    fn cbrt_of_minus_seven() {
        // mpmath, 45 digits: -cbrt(7)
        let expected = HighReal::parse_decimal("-1.91293118277238910119911683954876028286243905", 60).unwrap();
        let p = policy();
        assert!(p.approx_eq(&real_cbrt(&p.int(-7)), &expected));
    }

    #[test]
    fn arctan_branches() {
        let p = policy();
        let one = p.int(1);
        assert!(p.approx_eq(&branch_arctan(&one, &one).unwrap(), &(p.pi() / p.int(4))));
        let three_root3 = p.int(27).sqrt();
        assert!(p.approx_eq(&branch_arctan(&three_root3, &p.int(0)).unwrap(), &(p.pi() / p.int(2))));
        assert!(p.approx_eq(&branch_arctan(&-three_root3.clone(), &p.int(0)).unwrap(), &-(p.pi() / p.int(2))));
        // mpmath: atan(3*sqrt(3))
        let expected = HighReal::parse_decimal("1.38067072344842986149030521644476869813162352", 60).unwrap();
        assert!(p.approx_eq(&branch_arctan(&three_root3, &one).unwrap(), &expected));
        assert_eq!(branch_arctan(&p.int(0), &p.int(0)), Err(Error::DegenerateAngle));
        // den < 0 keeps the principal value of the quotient
        let neg = branch_arctan(&one, &p.int(-1)).unwrap();
        assert!(p.approx_eq(&neg, &-(p.pi() / p.int(4))));
    }

    #[test]
    fn policy_defaults() {
        let p = PrecisionPolicy::new(30);
        assert_eq!(p.guard_digits, 20);
        assert_eq!(p.working_digits(), 50);
        assert_eq!(p.tolerance(), HighReal::ten_pow_neg(30, 50));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cbrt_cubes_back(x in -1000.0f64..1000.0) {
            let p = policy();
            let x = HighReal::from_f64(x, p.working_digits()).unwrap();
            let c = real_cbrt(&x);
            prop_assert!(p.approx_eq(&(&c * &c * &c), &x));
            prop_assert_eq!(real_cbrt(&-x.clone()), -c);
        }

        #[test]
        fn complementary_arctangents(n in 0.001f64..500.0, d in 0.001f64..500.0, flip_n in any::<bool>(), flip_d in any::<bool>()) {
            let p = policy();
            let n = HighReal::from_f64(if flip_n { -n } else { n }, p.working_digits()).unwrap();
            let d = HighReal::from_f64(if flip_d { -d } else { d }, p.working_digits()).unwrap();
            let sum = branch_arctan(&n, &d).unwrap() + branch_arctan(&d, &n).unwrap();
            let half_pi = p.pi() / p.int(2);
            // sign of the quotient decides the sign of the sum
            let expected = if flip_n == flip_d { half_pi } else { -half_pi };
            prop_assert!(p.approx_eq(&sum, &expected));
        }
    }
}
