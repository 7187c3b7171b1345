//! Zeros of cubics in closed trigonometric form, the cyclic transform
//! `eta_s(z) = s^2 / (s - z)` that permutes them, and a bisection oracle.

use crate::cubic::{build_rcp, tau, Cubic, RcpParams};
use crate::error::{Error, Result};
use crate::precision::{branch_arctan, PrecisionPolicy};
use crate::scalar::{Real, Scalar};

/// Three real zeros in descending order.
///
/// `orbit_order`, when present, lists indices `[i, j, k]` with
/// `zeros[j] = eta_s(zeros[i])` and `zeros[k] = eta_s(zeros[j])`.
/// `branches` records which `k` in `{0, 2, 4}` of the trigonometric formula
/// produced each zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTriple<T> {
    zeros: [T; 3],
    orbit_order: Option<[usize; 3]>,
    branches: Option<[u8; 3]>,
}

impl<T: Scalar> ZeroTriple<T> {
    /// Sorts `values` descending, carrying `branches` along.
    pub fn from_values(values: [T; 3], branches: Option<[u8; 3]>) -> Self {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("comparable zeros"));
        ZeroTriple {
            zeros: idx.map(|i| values[i].clone()),
            orbit_order: None,
            branches: branches.map(|b| idx.map(|i| b[i])),
        }
    }

    /// Builds a triple from `[a, eta(a), eta^2(a)]`, recording the orbit.
    fn from_orbit(orbit: [T; 3]) -> Self {
        let mut triple = Self::from_values(orbit.clone(), None);
        let position = |x: &T| triple.zeros.iter().position(|z| z == x).expect("orbit member");
        triple.orbit_order = Some([position(&orbit[0]), position(&orbit[1]), position(&orbit[2])]);
        triple
    }

    pub fn zeros(&self) -> &[T; 3] {
        &self.zeros
    }

    pub fn into_zeros(self) -> [T; 3] {
        self.zeros
    }

    pub fn orbit_order(&self) -> Option<[usize; 3]> {
        self.orbit_order
    }

    pub fn branches(&self) -> Option<[u8; 3]> {
        self.branches
    }

    /// Zeros in orbit order `(alpha, eta(alpha), eta^2(alpha))`.
    pub fn orbit(&self) -> Option<[&T; 3]> {
        self.orbit_order.map(|o| o.map(|i| &self.zeros[i]))
    }

    pub fn map<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> ZeroTriple<U> {
        ZeroTriple::from_values(self.zeros.each_ref().map(f), self.branches)
    }

    /// Multiset equality under `policy` (both sides are sorted).
    pub fn approx_eq(&self, other: &ZeroTriple<T>, policy: &PrecisionPolicy) -> bool {
        self.zeros.iter().zip(&other.zeros).all(|(a, b)| a.approx_eq(b, policy))
    }

    /// Largest `|c(z)|` over the three zeros.
    pub fn max_residual(&self, c: &Cubic<T>) -> T {
        self.zeros.iter().map(|z| c.eval(z).abs()).reduce(|a, b| if b > a { b } else { a }).expect("three zeros")
    }

    /// Attaches the `eta_s` orbit, starting from the largest zero.
    pub(crate) fn with_orbit(mut self, s: &T) -> Self {
        let nearest = |x: &T| {
            (0..3)
                .min_by(|&a, &b| {
                    let da = (self.zeros[a].clone() - x.clone()).abs();
                    let db = (self.zeros[b].clone() - x.clone()).abs();
                    da.partial_cmp(&db).expect("comparable")
                })
                .expect("three zeros")
        };
        let Ok(next) = eta(s, &self.zeros[0]) else {
            return self;
        };
        let j = nearest(&next);
        let Ok(after) = eta(s, &self.zeros[j]) else {
            return self;
        };
        let k = nearest(&after);
        if j != 0 && k != 0 && j != k {
            self.orbit_order = Some([0, j, k]);
        }
        self
    }
}

/// Intermediate values of the Vieta-substitution solver.
///
/// The resolvent is `w^2 + f w - e^3/27`; when it has non-real zeros
/// `alpha +- i beta` (with `beta > 0`) the cubic has three real zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventData<T> {
    pub e: T,
    pub f: T,
    pub alpha: T,
    pub beta: T,
    /// `sqrt(alpha^2 + beta^2)`
    pub rho: T,
    /// `arctan(beta / alpha)`, `pi/2` when `alpha = 0`
    pub theta: T,
}

pub fn resolvent<T: Real>(c: &Cubic<T>) -> Result<ResolventData<T>> {
    let (a, b, cc, d) = (c.a3.clone(), c.a2.clone(), c.a1.clone(), c.a0.clone());
    if a.is_zero() {
        return Err(Error::NotCubic);
    }
    let k = |n: i64| a.int_like(n);
    let e = (cc.clone() - b.square() / (k(3) * a.clone())) / a.clone();
    let f = (d + k(2) * b.cube() / (k(27) * a.square()) - b * cc / (k(3) * a.clone())) / a.clone();
    let disc = f.square() + k(4) * e.cube() / k(27);
    if disc >= disc.zero_like() {
        return Err(Error::NotThreeRealRoots);
    }
    let alpha = -f.clone() / k(2);
    let beta = (-disc).sqrt() / k(2);
    let rho = (alpha.square() + beta.square()).sqrt();
    let theta = branch_arctan(&beta, &alpha)?;
    Ok(ResolventData { e, f, alpha, beta, rho, theta })
}

/// `(theta + k pi) / 3` for `k = 0, 2, 4`.
fn third_angles<T: Real>(theta: &T) -> [T; 3] {
    let pi = theta.pi_like();
    [0, 2, 4].map(|k| (theta.clone() + theta.int_like(k) * pi.clone()) / theta.int_like(3))
}

const BRANCHES: [u8; 3] = [0, 2, 4];

/// Three real zeros of a general cubic by the trigonometric form of the
/// Vieta substitution.
pub fn solve_cubic_trig<T: Real>(c: &Cubic<T>) -> Result<ZeroTriple<T>> {
    let r = resolvent(c)?;
    let shift = -c.a2.clone() / (c.a3.int_like(3) * c.a3.clone());
    let mut amplitude = r.rho.cbrt() * r.rho.int_like(2);
    if r.alpha < r.alpha.zero_like() {
        amplitude = -amplitude;
    }
    let zeros = third_angles(&r.theta).map(|angle| shift.clone() + amplitude.clone() * angle.cos());
    Ok(ZeroTriple::from_values(zeros, Some(BRANCHES)))
}

/// `(1/3)(h + sign * 2 sqrt(tau(h)) cos((theta + k pi)/3))`.
fn scp_zeros_branch<T: Real>(h: &T, sign: i64, theta: &T) -> [T; 3] {
    let amplitude = h.int_like(2 * sign) * tau(h).sqrt();
    third_angles(theta).map(|angle| (h.clone() + amplitude.clone() * angle.cos()) / h.int_like(3))
}

/// Zeros of the Shanks cubic `x^3 - h x^2 - (h+3) x - 1`.
///
/// The `+` form applies for `h >= -3/2` and the `-` form below; at
/// `h = -3/2` the angle is `pi/2` and the zeros are `1, -1/2, -2`.
pub fn scp_zeros<T: Real>(h: &T) -> ZeroTriple<T> {
    let three_root3 = h.int_like(27).sqrt();
    let den = h.int_like(3) + h.int_like(2) * h.clone();
    let theta = branch_arctan(&three_root3, &den).expect("numerator is nonzero");
    let sign = if den < den.zero_like() { -1 } else { 1 };
    let zeros = scp_zeros_branch(h, sign, &theta);
    ZeroTriple::from_values(zeros, Some(BRANCHES)).with_orbit(&-h.one_like())
}

/// Zeros of `rho(h, s, x)`: the Shanks zeros scaled by `-s`.
pub fn rcp_zeros<T: Real>(params: &RcpParams<T>) -> ZeroTriple<T> {
    let s = params.s();
    let scp = scp_zeros(params.h());
    scp.map(|z| -s.clone() * z.clone()).with_orbit(s)
}

/// `eta_s(z) = s^2 / (s - z)`.
pub fn eta<T: Scalar>(s: &T, z: &T) -> Result<T> {
    let gap = s.clone() - z.clone();
    if gap.is_zero() {
        return Err(Error::PoleOfTransform);
    }
    Ok(s.square() / gap)
}

/// `{alpha, s^2/(s - alpha), -s(s - alpha)/alpha}`.
pub fn orbit<T: Scalar>(s: &T, alpha: &T) -> Result<ZeroTriple<T>> {
    if alpha.is_zero() || (s.clone() - alpha.clone()).is_zero() {
        return Err(Error::PoleOfTransform);
    }
    let second = eta(s, alpha)?;
    let third = -s.clone() * (s.clone() - alpha.clone()) / alpha.clone();
    Ok(ZeroTriple::from_orbit([alpha.clone(), second, third]))
}

/// The Ramanujan cubic with scale `s` that has `alpha` as a zero:
/// `h = (s^3 - 3 s^2 alpha + alpha^3) / (s (s - alpha) alpha)`.
pub fn rcp_through<T: Scalar>(alpha: &T, s: &T) -> Result<(T, Cubic<T>)> {
    if s.is_zero() {
        return Err(Error::InvalidScale);
    }
    if alpha.is_zero() || (s.clone() - alpha.clone()).is_zero() {
        return Err(Error::PoleOfTransform);
    }
    let num = s.cube() - s.int_like(3) * s.square() * alpha.clone() + alpha.cube();
    let den = s.clone() * (s.clone() - alpha.clone()) * alpha.clone();
    let h = num / den;
    let cubic = build_rcp(&RcpParams::new(h.clone(), s.clone())?);
    Ok((h, cubic))
}

/// Index of the zero nearest `target`.
pub fn match_zero<T: Scalar>(zt: &ZeroTriple<T>, target: &T, policy: &PrecisionPolicy) -> Result<usize> {
    let dist: Vec<T> = zt.zeros.iter().map(|z| (z.clone() - target.clone()).abs()).collect();
    let best = (0..3).min_by(|&a, &b| dist[a].partial_cmp(&dist[b]).expect("comparable")).expect("three zeros");
    let tie = (0..3).any(|i| i != best && (dist[i].clone() - dist[best].clone()).is_negligible(policy));
    if tie {
        return Err(Error::AmbiguousMatch);
    }
    Ok(best)
}

/// Zeros by bracketing and bisection with a safeguarded Newton polish.
///
/// Uses only field operations and one square root, so it is independent of
/// the trigonometric formulas it is used to check.
pub fn oracle_roots<T: Real>(c: &Cubic<T>) -> Result<ZeroTriple<T>> {
    let m = c.monic_normalize();
    let zero = m.a3.zero_like();
    if m.discriminant() <= zero {
        return Err(Error::NotThreeRealRoots);
    }
    let k = |n: i64| m.a3.int_like(n);
    // critical points of x^3 + a2 x^2 + a1 x + a0
    let root = (m.a2.square() - k(3) * m.a1.clone()).sqrt();
    let lo_crit = (-m.a2.clone() - root.clone()) / k(3);
    let hi_crit = (-m.a2.clone() + root) / k(3);
    let bound =
        [&m.a2, &m.a1, &m.a0].into_iter().map(|x| x.abs()).fold(k(1), |acc, x| if x > acc { x } else { acc }) + k(1);
    let brackets = [(-bound.clone(), lo_crit.clone()), (lo_crit, hi_crit.clone()), (hi_crit, bound)];
    let zeros = brackets.map(|(lo, hi)| refine_root(&m, lo, hi));
    Ok(ZeroTriple::from_values(zeros, None))
}

fn refine_root<T: Real>(c: &Cubic<T>, mut lo: T, mut hi: T) -> T {
    const BISECTIONS: usize = 60;
    const NEWTON_STEPS: usize = 200;
    let zero = lo.zero_like();
    let two = lo.int_like(2);
    let rising = c.eval(&lo) < c.eval(&hi);
    // keep f(lo) <= 0 <= f(hi) in the rising orientation
    let step = |lo: &mut T, hi: &mut T, x: T| {
        let below = c.eval(&x) < zero;
        if below == rising {
            *lo = x;
        } else {
            *hi = x;
        }
    };
    for _ in 0..BISECTIONS {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if mid == lo || mid == hi || c.eval(&mid).is_zero() {
            return mid;
        }
        step(&mut lo, &mut hi, mid);
    }
    let mut x = (lo.clone() + hi.clone()) / two.clone();
    for _ in 0..NEWTON_STEPS {
        let fx = c.eval(&x);
        if fx.is_zero() {
            return x;
        }
        let slope = c.eval_derivative(&x);
        let candidate = if slope.is_zero() { None } else { Some(x.clone() - fx / slope) };
        let next = match candidate {
            Some(n) if n >= lo && n <= hi => n,
            _ => (lo.clone() + hi.clone()) / two.clone(),
        };
        let moved = (next.clone() - x.clone()).abs();
        step(&mut lo, &mut hi, next.clone());
        x = next;
        if moved <= x.ulp_like() * x.int_like(4) {
            break;
        }
    }
    x
}
