//! Cubic polynomials: Ramanujan cubics in the `(h, s)` parametrization,
//! Shanks cubics, the gamma-parametrized form, and the Shanks companion matrix.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::precision::PrecisionPolicy;
use crate::scalar::Scalar;

/// `a3 x^3 + a2 x^2 + a1 x + a0` with `a3 != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cubic<T> {
    pub a3: T,
    pub a2: T,
    pub a1: T,
    pub a0: T,
}

impl<T: Scalar> Cubic<T> {
    pub fn new(a3: T, a2: T, a1: T, a0: T) -> Result<Self> {
        if a3.is_zero() {
            return Err(Error::NotCubic);
        }
        Ok(Cubic { a3, a2, a1, a0 })
    }

    /// `x^3 + p x^2 + q x + r`.
    pub fn monic(p: T, q: T, r: T) -> Self {
        Cubic { a3: p.one_like(), a2: p, a1: q, a0: r }
    }

    /// Monic cubic with the given zeros.
    pub fn from_zeros(z: [&T; 3]) -> Self {
        let [a, b, c] = z.map(Clone::clone);
        let sum = a.clone() + b.clone() + c.clone();
        let pairs = a.clone() * b.clone() + a.clone() * c.clone() + b.clone() * c.clone();
        let product = a * b * c;
        Cubic::monic(-sum, pairs, -product)
    }

    pub fn monic_normalize(&self) -> Self {
        let lead = self.a3.clone();
        Cubic {
            a3: lead.one_like(),
            a2: self.a2.clone() / lead.clone(),
            a1: self.a1.clone() / lead.clone(),
            a0: self.a0.clone() / lead,
        }
    }

    pub fn is_monic(&self) -> bool {
        self.a3 == self.a3.one_like()
    }

    pub fn eval(&self, x: &T) -> T {
        ((self.a3.clone() * x.clone() + self.a2.clone()) * x.clone() + self.a1.clone()) * x.clone() + self.a0.clone()
    }

    pub fn eval_derivative(&self, x: &T) -> T {
        let three = x.int_like(3);
        let two = x.int_like(2);
        (three * self.a3.clone() * x.clone() + two * self.a2.clone()) * x.clone() + self.a1.clone()
    }

    /// `18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2`; positive exactly
    /// when there are three distinct real zeros.
    pub fn discriminant(&self) -> T {
        let (a, b, c, d) = (&self.a3, &self.a2, &self.a1, &self.a0);
        let k = |n: i64| a.int_like(n);
        k(18) * a.clone() * b.clone() * c.clone() * d.clone() - k(4) * b.cube() * d.clone() + b.square() * c.square()
            - k(4) * a.clone() * c.cube()
            - k(27) * a.square() * d.square()
    }

    pub fn coeffs(&self) -> [&T; 4] {
        [&self.a3, &self.a2, &self.a1, &self.a0]
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Cubic<U> {
        Cubic { a3: f(&self.a3), a2: f(&self.a2), a1: f(&self.a1), a0: f(&self.a0) }
    }

    /// Coefficient-wise comparison under `policy`.
    pub fn approx_eq(&self, other: &Self, policy: &PrecisionPolicy) -> bool {
        self.coeffs().iter().zip(other.coeffs()).all(|(a, b)| a.approx_eq(b, policy))
    }
}

impl<T: Scalar> fmt::Display for Cubic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = self.a3.zero_like();
        let one = self.a3.one_like();
        let mut first = true;
        for (coeff, power) in self.coeffs().into_iter().zip([3, 2, 1, 0]) {
            if coeff.is_zero() {
                continue;
            }
            let negative = *coeff < zero;
            let magnitude = coeff.abs();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = magnitude == one;
            match power {
                0 => write!(f, "{magnitude}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{magnitude}*x")?,
                _ if unit => write!(f, "x^{power}")?,
                _ => write!(f, "{magnitude}*x^{power}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The `(h, s)` parameters of `rho(h, s, x) = x^3 + h s x^2 - (h+3) s^2 x + s^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct RcpParams<T> {
    h: T,
    s: T,
}

impl<T: Scalar> RcpParams<T> {
    pub fn new(h: T, s: T) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::InvalidScale);
        }
        Ok(RcpParams { h, s })
    }

    pub fn h(&self) -> &T {
        &self.h
    }

    pub fn s(&self) -> &T {
        &self.s
    }

    /// The Shanks slice `s = -1` at the same `h`.
    pub fn shanks(&self) -> Self {
        RcpParams { h: self.h.clone(), s: -self.h.one_like() }
    }
}

/// `rho(h, s, x)`.
pub fn build_rcp<T: Scalar>(params: &RcpParams<T>) -> Cubic<T> {
    let (h, s) = (params.h.clone(), params.s.clone());
    let three = h.int_like(3);
    Cubic::monic(h.clone() * s.clone(), -(h + three) * s.square(), s.cube())
}

/// The Shanks cubic `x^3 - h x^2 - (h+3) x - 1`.
pub fn build_scp<T: Scalar>(h: &T) -> Cubic<T> {
    Cubic::monic(-h.clone(), -(h.clone() + h.int_like(3)), -h.one_like())
}

/// Checks `p r^(1/3) + 3 r^(2/3) + q = 0` with real-branch roots.
///
/// Only the coefficient relation is tested; reality of the zeros is the
/// roots module's concern.
pub fn is_rcp<T: Scalar>(p: &T, q: &T, r: &T, policy: &PrecisionPolicy) -> bool {
    if r.is_zero() {
        return false;
    }
    // An irrational cube root of a rational cannot satisfy a rational
    // quadratic relation with leading coefficient 3.
    let Some(c) = r.try_cbrt() else {
        return false;
    };
    let relation = p.clone() * c.clone() + r.int_like(3) * c.square() + q.clone();
    relation.is_negligible(policy)
}

/// Recovers `(h, s) = (p / r^(1/3), r^(1/3))`.
pub fn rcp_params_from_coeffs<T: Scalar>(p: &T, q: &T, r: &T, policy: &PrecisionPolicy) -> Result<RcpParams<T>> {
    if r.is_zero() {
        return Err(Error::NotAnRcp);
    }
    let s = r.try_cbrt().ok_or(Error::NotAnRcp)?;
    let h = p.clone() / s.clone();
    let expected_q = -(h.clone() + h.int_like(3)) * s.square();
    if !(q.clone() - expected_q).is_negligible(policy) {
        return Err(Error::NotAnRcp);
    }
    RcpParams::new(h, s)
}

/// Zeros of the gamma-form Ramanujan cubic:
/// `r^(1/3)/(2-gamma)`, `(gamma-1) r^(1/3)`, `(2-gamma)/(1-gamma) r^(1/3)`.
pub fn witula_zeros<T: Scalar>(gamma: &T, r: &T) -> Result<[T; 3]> {
    if *gamma == gamma.one_like() || *gamma == gamma.int_like(2) {
        return Err(Error::DegenerateGamma);
    }
    if r.is_zero() {
        return Err(Error::InvalidScale);
    }
    let c = r.try_cbrt().ok_or_else(|| Error::InexactCubeRoot(r.to_string()))?;
    let one = gamma.one_like();
    let two = gamma.int_like(2);
    let two_minus = two - gamma.clone();
    let one_minus = one.clone() - gamma.clone();
    Ok([c.clone() / two_minus.clone(), (gamma.clone() - one) * c.clone(), two_minus / one_minus * c])
}

/// The monic cubic with the three gamma-form zeros.
pub fn build_rcp_witula<T: Scalar>(gamma: &T, r: &T) -> Result<Cubic<T>> {
    let [a, b, c] = witula_zeros(gamma, r)?;
    Ok(Cubic::from_zeros([&a, &b, &c]))
}

/// `h^2 + 3h + 9`.
pub fn tau<T: Scalar>(h: &T) -> T {
    h.square() + h.int_like(3) * h.clone() + h.int_like(9)
}

/// 3x3 matrix of big integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix3 {
    pub entries: [[BigInt; 3]; 3],
}

impl IntegerMatrix3 {
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        IntegerMatrix3 { entries: rows.map(|row| row.map(BigInt::from)) }
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn trace(&self) -> BigInt {
        (0..3).map(|i| &self.entries[i][i]).sum()
    }

    pub fn det(&self) -> BigInt {
        let m = &self.entries;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Sum of the principal 2x2 minors, i.e. the trace of the adjugate.
    pub fn adjugate_trace(&self) -> BigInt {
        let m = &self.entries;
        let minor = |i: usize, j: usize| &m[i][i] * &m[j][j] - &m[i][j] * &m[j][i];
        minor(0, 1) + minor(0, 2) + minor(1, 2)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &IntegerMatrix3 {
    type Output = IntegerMatrix3;

    fn mul(self, rhs: &IntegerMatrix3) -> IntegerMatrix3 {
        let mut entries: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| &self.entries[i][k] * &rhs.entries[k][j]).sum();
            }
        }
        IntegerMatrix3 { entries }
    }
}

/// Companion matrix of the Shanks cubic: rows `(0,1,0), (0,0,1), (1, 3+h, h)`.
pub fn companion_matrix(h: &BigInt) -> IntegerMatrix3 {
    let zero = BigInt::zero;
    let one = BigInt::one;
    IntegerMatrix3 { entries: [[zero(), one(), zero()], [zero(), zero(), one()], [one(), h + 3, h.clone()]] }
}
