//! Numerical verification of cube-root identities for Ramanujan cubics and of
//! a small catalog of trigonometric identities.
//!
//! Every fractional power is the real-branch root: the sum-of-cube-roots
//! identity is false under the principal complex branch whenever a zero is
//! negative.

use std::fmt;

use crate::cubic::RcpParams;
use crate::error::{Error, Result};
use crate::expr::{parse_expression, Expression};
use crate::gaussian::{gaussian_periods, lehmer_prime};
use crate::precision::{HighReal, PrecisionPolicy};
use crate::roots::{rcp_zeros, ZeroTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Both sides of an identity, their absolute difference, and whether that
/// difference is below `10^-digits`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: HighReal,
    pub rhs: HighReal,
    pub residual: HighReal,
    pub digits: u32,
    pub verdict: Verdict,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, lhs: HighReal, rhs: HighReal, digits: u32) -> Self {
        let residual = (&lhs - &rhs).abs();
        let passed = residual < HighReal::ten_pow_neg(digits, residual.digits().max(digits));
        IdentityReport {
            name: name.into(),
            lhs,
            rhs,
            residual,
            digits,
            verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn working(digits: u32) -> u32 {
    PrecisionPolicy::new(digits).working_digits()
}

fn cbrt_sum(zeros: &ZeroTriple<HighReal>) -> HighReal {
    let [a, b, c] = zeros.zeros();
    a.cbrt() + b.cbrt() + c.cbrt()
}

/// `(-p - 6 r^(1/3) + 3 (9r - pq)^(1/3))^(1/3)` for `x^3 + p x^2 + q x + r`.
fn ramanujan_rhs(p: &HighReal, q: &HighReal, r: &HighReal) -> HighReal {
    let d = r.digits();
    let inner = -p - HighReal::from_i64(6, d) * r.cbrt()
        + HighReal::from_i64(3, d) * (HighReal::from_i64(9, d) * r - p * q).cbrt();
    inner.cbrt()
}

/// Sum of the real cube roots of the zeros of `rho(h, s, x)` against the
/// closed expression in its coefficients.
pub fn ramanujan_cbrt_sum_check(h: &HighReal, s: &HighReal, digits: u32) -> Result<IdentityReport> {
    let w = working(digits);
    let (h, s) = (h.with_digits(w), s.with_digits(w));
    let params = RcpParams::new(h.clone(), s.clone())?;
    let lhs = cbrt_sum(&rcp_zeros(&params));
    let p = &h * &s;
    let q = -(&h + HighReal::from_i64(3, w)) * &s * &s;
    let r = &s * &s * &s;
    let rhs = ramanujan_rhs(&p, &q, &r);
    Ok(IdentityReport::new(format!("ramanujan(h={h:.6}, s={s:.6})"), lhs, rhs, digits))
}

/// The cube-root identity for the cubic through `alpha` with scale `s`,
/// written entirely in `alpha` and `s`:
///
/// `alpha^(1/3) = -(s^2/(s-alpha))^(1/3) - (-s(s-alpha)/alpha)^(1/3)
///   + ((s^3 + 3s^2 alpha - 6s alpha^2 + alpha^3)/(alpha^2 - s alpha)
///      + 3(s^2 - s alpha + alpha^2)(s/(alpha^2 (s-alpha)^2))^(1/3))^(1/3)`.
pub fn extended_identity_check(alpha: &HighReal, s: &HighReal, digits: u32) -> Result<IdentityReport> {
    let w = working(digits);
    let (a, s) = (alpha.with_digits(w), s.with_digits(w));
    if s.is_zero() {
        return Err(Error::InvalidScale);
    }
    if a.is_zero() || (&s - &a).is_zero() {
        return Err(Error::PoleOfTransform);
    }
    let k = |n: i64| HighReal::from_i64(n, w);
    let gap = &s - &a;
    let lhs = a.cbrt();
    let bracket = (s.powi(3) + k(3) * &s * &s * &a - k(6) * &s * &a * &a + a.powi(3)) / (&a * &a - &s * &a)
        + k(3) * (&s * &s - &s * &a + &a * &a) * (&s / (&a * &a * &gap * &gap)).cbrt();
    let rhs = -(&s * &s / &gap).cbrt() - (-(&s * &gap) / &a).cbrt() + bracket.cbrt();
    Ok(IdentityReport::new(format!("extended(alpha={a:.6}, s={s:.6})"), lhs, rhs, digits))
}

/// Sum of the real cube roots of the Shanks zeros written through the
/// Gaussian periods of `p = tau(h)`, against `(6 + h - 3 p^(1/3))^(1/3)`.
pub fn gauss_period_cbrt_identity(h: i64, digits: u32) -> Result<IdentityReport> {
    let p = lehmer_prime(h)?;
    let policy = PrecisionPolicy::new(digits);
    let w = policy.working_digits();
    let periods = gaussian_periods(p, &policy)?;
    let lhs = periods
        .values()
        .iter()
        .map(|eta| {
            let zero = if h.rem_euclid(3) == 1 {
                HighReal::from_fraction(h - 1, 3, w) - eta
            } else {
                HighReal::from_fraction(h + 1, 3, w) + eta
            };
            zero.cbrt()
        })
        .fold(HighReal::zero(w), |acc, x| acc + x);
    let rhs = (HighReal::from_i64(6 + h, w) - HighReal::from_i64(3, w) * HighReal::from_i64(p as i64, w).cbrt()).cbrt();
    Ok(IdentityReport::new(format!("gauss(h={h}, p={p})"), lhs, rhs, digits))
}

/// A named identity as two expression texts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

pub const CATALOG: [CatalogEntry; 4] = [
    CatalogEntry { name: "cos2pi7", lhs: "2*cos(2*pi/7)", rhs: "(1/3)*(-1+2*sqrt(7)*cos((1/3)*arctan(3*sqrt(3))))" },
    CatalogEntry {
        name: "sqrt2",
        lhs: "1",
        rhs: "sqrt(7)*cos((1/3)*arctan(9*sqrt(3)/10)) - sqrt(21)*sin((1/3)*arctan(9*sqrt(3)/10))",
    },
    CatalogEntry {
        name: "pi_cos",
        lhs: "(2*pi-1)/(2*sqrt(pi^2-pi+1))",
        rhs: "cos((1/3)*arctan(3*sqrt(3)*(-1+pi)*pi/(2-3*pi-3*pi^2+2*pi^3)))",
    },
    CatalogEntry {
        name: "pi_cbrt",
        lhs: "pi",
        rhs: "1/cbrt(-1+pi^3) - cbrt(-1+pi^3)/pi \
              + cbrt(3*(1-pi^3+pi^6)/(pi^2*cbrt(-1+pi^3)^2) + (1+3*pi^3-6*pi^6+pi^9)/(-pi^3+pi^6))",
    },
];

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

pub fn verify_named(name: &str, digits: u32) -> Result<IdentityReport> {
    let entry = catalog_entry(name)?;
    let lhs = parse_expression(entry.lhs)?;
    let rhs = parse_expression(entry.rhs)?;
    let mut report = verify_expression(&lhs, &rhs, digits)?;
    report.name = entry.name.to_string();
    Ok(report)
}

pub fn verify_expression(lhs: &Expression, rhs: &Expression, digits: u32) -> Result<IdentityReport> {
    let w = working(digits);
    let l = lhs.evaluate(w)?;
    let r = rhs.evaluate(w)?;
    Ok(IdentityReport::new(format!("{lhs} == {rhs}"), l, r, digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::rcp_through;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hr(n: i64, d: i64) -> HighReal {
        HighReal::from_fraction(n, d, 70)
    }

    #[test]
    fn ramanujan_closed_instance() {
        let report = ramanujan_cbrt_sum_check(&hr(-1, 1), &hr(-1, 1), 50).unwrap();
        assert!(report.passed(), "{report:?}");
        let w = 70;
        let expected = (HighReal::from_i64(5, w) - HighReal::from_i64(3, w) * HighReal::from_i64(7, w).cbrt()).cbrt();
        assert!((&report.rhs - &expected).abs() < HighReal::ten_pow_neg(50, w));
        assert_eq!(report.lhs.to_fixed_string(6), "-0.904012");
    }

    #[test]
    fn ramanujan_edge_case() {
        let report = ramanujan_cbrt_sum_check(&hr(-3, 2), &hr(-1, 1), 50).unwrap();
        assert!(report.passed());
        assert_eq!(report.lhs.to_fixed_string(6), "-1.053622");
    }

    #[test]
    fn ramanujan_example_ten() {
        let root2 = HighReal::from_i64(2, 80).sqrt();
        let report = ramanujan_cbrt_sum_check(&hr(1, 6), &(&root2 * HighReal::from_i64(3, 80)), 50).unwrap();
        assert!(report.passed());
        assert_eq!(ramanujan_cbrt_sum_check(&hr(1, 6), &hr(0, 1), 50), Err(Error::InvalidScale));
    }

    #[test]
    fn ramanujan_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let h = rng.gen_range(-20_000..=20_000);
            let mut s = rng.gen_range(-5_000..=5_000);
            if s == 0 {
                s = 1;
            }
            let report = ramanujan_cbrt_sum_check(&hr(h, 1000), &hr(s, 1000), 40).unwrap();
            assert!(report.passed(), "h={h}/1000 s={s}/1000");
        }
    }

    #[test]
    fn extended_examples() {
        let pi = HighReal::pi(80);
        assert!(extended_identity_check(&pi.powi(3), &hr(1, 1), 50).unwrap().passed());
        let root2 = HighReal::from_i64(2, 80).sqrt();
        assert!(extended_identity_check(&root2, &(&root2 * HighReal::from_i64(3, 80)), 50).unwrap().passed());
        assert!(extended_identity_check(&hr(8, 1), &hr(1, 1), 50).unwrap().passed());
        assert_eq!(extended_identity_check(&hr(0, 1), &hr(1, 1), 50), Err(Error::PoleOfTransform));
        assert_eq!(extended_identity_check(&hr(2, 1), &hr(2, 1), 50), Err(Error::PoleOfTransform));
    }

    #[test]
    fn extended_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = hr(rng.gen_range(-9_000..=9_000), 997);
            let s = hr(rng.gen_range(1..=5_000), 1000) * hr(if rng.gen_bool(0.5) { 1 } else { -1 }, 1);
            if a.is_zero() || a == s {
                continue;
            }
            let report = extended_identity_check(&a, &s, 40).unwrap();
            assert!(report.passed(), "alpha={a} s={s}");
        }
    }

    #[test]
    fn extended_matches_ramanujan_form() {
        let (a, s) = (hr(7, 3), hr(-2, 1));
        let (h, _) = rcp_through(&a, &s).unwrap();
        let ext = extended_identity_check(&a, &s, 40).unwrap();
        let ram = ramanujan_cbrt_sum_check(&h, &s, 40).unwrap();
        // the last cube root of the extended form is the closed side of the sum identity
        let bracket = &ext.rhs + (&s * &s / (&s - &a)).cbrt() + (-(&s * (&s - &a)) / &a).cbrt();
        assert!((bracket - &ram.rhs).abs() < HighReal::ten_pow_neg(40, 60));
        assert!(ram.passed());
    }

    #[test]
    fn gauss_examples() {
        let report = gauss_period_cbrt_identity(-1, 50).unwrap();
        assert!(report.passed());
        assert_eq!(report.lhs.to_fixed_string(6), "-0.904012");
        for h in [1, 2, -2, 4, -4, -5, 7, 8, -10] {
            assert!(gauss_period_cbrt_identity(h, 50).unwrap().passed(), "h = {h}");
        }
        assert_eq!(gauss_period_cbrt_identity(3, 30), Err(Error::NotLehmerCase(3)));
        assert_eq!(gauss_period_cbrt_identity(5, 30), Err(Error::NotShanksPrime(49)));
    }

    #[test]
    fn catalog_passes_and_tightens() {
        for entry in &CATALOG {
            let coarse = verify_named(entry.name, 50).unwrap();
            let fine = verify_named(entry.name, 80).unwrap();
            assert!(coarse.passed() && fine.passed(), "{}", entry.name);
            assert!(fine.residual <= coarse.residual, "{}", entry.name);
        }
        assert_eq!(verify_named("nope", 50), Err(Error::UnknownIdentity("nope".into())));
    }

    #[test]
    fn expression_examples() {
        let e = |t: &str| parse_expression(t).unwrap();
        let r = verify_expression(&e("2*cos(2*pi/7)"), &e("(1/3)*(-1+2*sqrt(7)*cos((1/3)*arctan(3*sqrt(3))))"), 50);
        assert!(r.unwrap().passed());
        assert!(verify_expression(&e("cbrt(-8)"), &e("-2"), 50).unwrap().passed());
        let r = verify_expression(&e("pi"), &e("22/7"), 4).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(verify_expression(&e("sqrt(-1)"), &e("1"), 20), Err(Error::EvaluationDomainError(_))));
        assert!(matches!(verify_expression(&e("1/0"), &e("1"), 20), Err(Error::EvaluationDomainError(_))));
    }
}
