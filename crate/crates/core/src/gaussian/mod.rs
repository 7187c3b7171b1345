//! Cubic Gaussian periods and their relation to Shanks cubics.
//!
//! For a prime `p = 1 (mod 3)` the cubes form an index-3 subgroup `C0` of the
//! units mod `p`; with `g` the smallest primitive root the cosets are
//! `C0, g C0, g^2 C0` and the periods are the cosine sums over them. When
//! `p = h^2 + 3h + 9` with `3` not dividing `h`, the periods are affine images
//! of the Shanks cubic zeros.

mod prime;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cubic::{build_rcp, Cubic, RcpParams};
use crate::error::{Error, Result};
use crate::precision::{branch_arctan, HighReal, PrecisionPolicy};
use crate::roots::ZeroTriple;
use crate::scalar::{from_ratio_like, Scalar};

pub use prime::{is_prime, pow_mod, primitive_root};

/// Exact cubic with integer coefficients, stored as rationals.
pub type IntegerCubic = Cubic<BigRational>;

/// The three cubic Gaussian periods of a prime.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodSet {
    p: u64,
    g: u64,
    cosets: [Vec<u64>; 3],
    values: [HighReal; 3],
    h: Option<i64>,
    l: Option<i64>,
}

impl PeriodSet {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The primitive root used to label the cosets.
    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn cosets(&self) -> &[Vec<u64>; 3] {
        &self.cosets
    }

    pub fn values(&self) -> &[HighReal; 3] {
        &self.values
    }

    /// `h >= -1` with `tau(h) = p`, when `p` is a Shanks prime.
    pub fn h(&self) -> Option<i64> {
        self.h
    }

    /// `-(2h+3)` for `h = 1 (mod 3)`, `2h+3` for `h = 2 (mod 3)`.
    pub fn l(&self) -> Option<i64> {
        self.l
    }
}

/// Cyclic differences of the periods, oriented to be the roots of
/// `x^3 - p x + p`, alongside their trigonometric closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSet {
    p: u64,
    h: i64,
    deltas: [HighReal; 3],
    orientation: i8,
    closed_form: [HighReal; 3],
    branches: [u8; 3],
}

impl DeltaSet {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    /// `orientation * (eta0 - eta1, eta1 - eta2, eta2 - eta0)`.
    pub fn deltas(&self) -> &[HighReal; 3] {
        &self.deltas
    }

    /// `+1` when the coset labelling already gives roots of `x^3 - p x + p`,
    /// `-1` when the differences had to be negated.
    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// `2 sqrt(p/3) |cos((arctan((3+2h)/(3 sqrt 3)) + k pi)/3)|` with the sign
    /// of the matching difference, in the same order as [`Self::deltas`].
    pub fn closed_form(&self) -> &[HighReal; 3] {
        &self.closed_form
    }

    /// The `k` in `{0, 2, 4}` matched to each difference.
    pub fn branches(&self) -> [u8; 3] {
        self.branches
    }
}

fn check_cubic_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(Error::NoCubicCosets(p));
    }
    Ok(())
}

/// Coset label (0, 1 or 2) of every residue `1..p`; index 0 is unused.
fn coset_labels(p: u64, g: u64) -> Vec<u8> {
    let mut labels = vec![u8::MAX; p as usize];
    for x in 1..p {
        labels[pow_mod(x, 3, p) as usize] = 0;
    }
    let g2 = pow_mod(g, 2, p);
    for r in 1..p {
        if labels[r as usize] == 0 {
            labels[((r * g) % p) as usize] = 1;
            labels[((r * g2) % p) as usize] = 2;
        }
    }
    labels
}

/// `C0` (the cubes), `g C0` and `g^2 C0`, each sorted.
pub fn cubic_cosets(p: u64) -> Result<[Vec<u64>; 3]> {
    check_cubic_prime(p)?;
    let labels = coset_labels(p, primitive_root(p));
    let mut cosets: [Vec<u64>; 3] = Default::default();
    for r in 1..p {
        cosets[labels[r as usize] as usize].push(r);
    }
    Ok(cosets)
}

/// `h >= -1` with `3` not dividing `h` and `tau(h) = p`.
pub fn shanks_parameter(p: u64) -> Option<i64> {
    // h = (-3 + sqrt(4p - 27)) / 2
    let disc = (4 * p as u128).checked_sub(27)?;
    let root = disc.isqrt();
    if root * root != disc || root % 2 == 0 {
        return None;
    }
    let h = (root as i64 - 3) / 2;
    (h % 3 != 0 && is_prime(p)).then_some(h)
}

fn lehmer_l(h: i64) -> i64 {
    if h.rem_euclid(3) == 1 {
        -(2 * h + 3)
    } else {
        2 * h + 3
    }
}

/// `cos(2 pi j / p)` for `j = 0..=(p-1)/2`.
///
/// Successive values come from rotating by `2 pi / p`, re-anchored with a
/// direct evaluation every few steps to bound the accumulated rounding.
fn half_cosine_table(p: u64, digits: u32) -> Vec<HighReal> {
    const ANCHOR_EVERY: u64 = 64;
    let step = HighReal::pi(digits) * HighReal::from_i64(2, digits) / HighReal::from_i64(p as i64, digits);
    let (s1, c1) = step.sin_cos();
    let half = (p - 1) / 2;
    let mut table = Vec::with_capacity(half as usize + 1);
    let (mut s, mut c) = (HighReal::zero(digits), HighReal::from_i64(1, digits));
    table.push(c.clone());
    for j in 1..=half {
        if j % ANCHOR_EVERY == 0 {
            (s, c) = (&step * HighReal::from_i64(j as i64, digits)).sin_cos();
        } else {
            let next_c = &c * &c1 - &s * &s1;
            s = &s * &c1 + &c * &s1;
            c = next_c;
        }
        table.push(c.clone());
    }
    table
}

/// Periods `sum_{j in C_k} cos(2 pi j / p)` at the policy's working precision.
///
/// Each coset is closed under `j -> p - j`, so only `j <= (p-1)/2` is summed
/// and the result doubled.
pub fn gaussian_periods(p: u64, policy: &PrecisionPolicy) -> Result<PeriodSet> {
    check_cubic_prime(p)?;
    let digits = policy.working_digits();
    let g = primitive_root(p);
    let labels = coset_labels(p, g);
    let table = half_cosine_table(p, digits + 5);
    let mut sums: [HighReal; 3] = std::array::from_fn(|_| HighReal::zero(digits + 5));
    for (j, value) in table.iter().enumerate().skip(1) {
        sums[labels[j] as usize] += value;
    }
    let values = sums.map(|s| (s * HighReal::from_i64(2, digits + 5)).with_digits(digits));
    let mut cosets: [Vec<u64>; 3] = Default::default();
    for r in 1..p {
        cosets[labels[r as usize] as usize].push(r);
    }
    let h = shanks_parameter(p);
    Ok(PeriodSet { p, g, cosets, values, h, l: h.map(lehmer_l) })
}

/// Pairs `(h, tau(h))` with `h >= -1`, `3` not dividing `h` and `tau(h)` a
/// prime not above `limit`, in increasing order.
pub fn shanks_primes(limit: u64) -> Vec<(i64, u64)> {
    let tau = |h: i64| (h * h + 3 * h + 9) as u64;
    (-1i64..)
        .take_while(|&h| tau(h) <= limit)
        .filter(|&h| h % 3 != 0 && is_prime(tau(h)))
        .map(|h| (h, tau(h)))
        .collect()
}

/// Validates a Lehmer parameter and returns `tau(h)`.
pub fn lehmer_prime(h: i64) -> Result<u64> {
    if h % 3 == 0 {
        return Err(Error::NotLehmerCase(h));
    }
    let p = (h as i128) * (h as i128) + 3 * (h as i128) + 9;
    match u64::try_from(p) {
        Ok(p) if is_prime(p) => Ok(p),
        _ => Err(Error::NotShanksPrime(p)),
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Minimal polynomial of the periods of `tau(h)`:
/// `x^3 + x^2 - ((p-1)/3) x - ((L+3) p - 1)/27`.
pub fn period_minimal_poly(h: i64) -> Result<IntegerCubic> {
    let p = lehmer_prime(h)? as i64;
    let l = lehmer_l(h);
    let linear = -int(p - 1) / int(3);
    let constant = -(int(l + 3) * int(p) - int(1)) / int(27);
    debug_assert!(linear.is_integer() && constant.is_integer());
    Ok(Cubic::monic(int(1), linear, constant))
}

fn shanks_shift(h: i64, policy: &PrecisionPolicy) -> HighReal {
    let digits = policy.working_digits();
    if h.rem_euclid(3) == 1 {
        HighReal::from_fraction(h - 1, 3, digits)
    } else {
        HighReal::from_fraction(h + 1, 3, digits)
    }
}

/// Zeros of the Shanks cubic from the periods: `(h-1)/3 - eta` when
/// `h = 1 (mod 3)` and `(h+1)/3 + eta` when `h = 2 (mod 3)`.
pub fn scp_zeros_via_periods(h: i64, policy: &PrecisionPolicy) -> Result<ZeroTriple<HighReal>> {
    let p = lehmer_prime(h)?;
    let periods = gaussian_periods(p, policy)?;
    let shift = shanks_shift(h, policy);
    let zeros = periods.values.clone().map(|eta| if h.rem_euclid(3) == 1 { &shift - eta } else { &shift + eta });
    Ok(ZeroTriple::from_values(zeros, None).with_orbit(&HighReal::from_i64(-1, policy.working_digits())))
}

/// Zeros of `rho(h, s, x)` from the periods:
/// `-(s/3)(h - 1 - 3 eta)` when `h = 1 (mod 3)`, `-(s/3)(h + 1 + 3 eta)` when `h = 2`.
pub fn lrcp_zeros_via_periods(h: i64, s: &HighReal, policy: &PrecisionPolicy) -> Result<ZeroTriple<HighReal>> {
    if s.is_zero() {
        return Err(Error::InvalidScale);
    }
    let p = lehmer_prime(h)?;
    let periods = gaussian_periods(p, policy)?;
    let digits = policy.working_digits();
    let three = HighReal::from_i64(3, digits);
    let scale = -s / &three;
    let zeros = periods.values.clone().map(|eta| {
        let inner = if h.rem_euclid(3) == 1 {
            HighReal::from_i64(h - 1, digits) - &three * eta
        } else {
            HighReal::from_i64(h + 1, digits) + &three * eta
        };
        &scale * inner
    });
    Ok(ZeroTriple::from_values(zeros, None).with_orbit(s))
}

/// `|rho(h, s, x) - s^3 G(x/s + (h-1)/3)|` when `h = 1 (mod 3)` and
/// `|rho(h, s, x) + s^3 G(-x/s - (h+1)/3)|` when `h = 2 (mod 3)`, where `G` is
/// the period minimal polynomial.
pub fn verify_idscrp<T: Scalar>(h: i64, s: &T, x: &T) -> Result<T> {
    if s.is_zero() {
        return Err(Error::InvalidScale);
    }
    let g = period_minimal_poly(h)?.map(|c| from_ratio_like(s, c));
    let hh = s.int_like(h);
    let rho = build_rcp(&RcpParams::new(hh, s.clone())?).eval(x);
    let s3 = s.cube();
    let image = if h.rem_euclid(3) == 1 {
        s3 * g.eval(&(x.clone() / s.clone() + s.ratio_like(h - 1, 3)))
    } else {
        -s3 * g.eval(&(-x.clone() / s.clone() - s.ratio_like(h + 1, 3)))
    };
    Ok((rho - image).abs())
}

/// Oriented period differences and their closed forms.
pub fn period_differences(p: u64, policy: &PrecisionPolicy) -> Result<DeltaSet> {
    let h = shanks_parameter(p).ok_or(Error::NotShanksPrime(p as i128))?;
    let periods = gaussian_periods(p, policy)?;
    let [e0, e1, e2] = &periods.values;
    let raw = [e0 - e1, e1 - e2, e2 - e0];
    // roots of x^3 - p x + p multiply to -p
    let product = &raw[0] * &raw[1] * &raw[2];
    let orientation: i8 = if product.is_negative() { 1 } else { -1 };
    let deltas = raw.map(|d| if orientation == 1 { d } else { -d });

    let digits = policy.working_digits();
    let num = HighReal::from_i64(3 + 2 * h, digits);
    let den = HighReal::from_i64(27, digits).sqrt();
    let angle = branch_arctan(&num, &den)?;
    let radius = HighReal::from_i64(2, digits) * HighReal::from_fraction(p as i64, 3, digits).sqrt();
    let pi = HighReal::pi(digits);
    let magnitudes = [0u8, 2, 4].map(|k| {
        let a = (&angle + HighReal::from_i64(k as i64, digits) * &pi) / HighReal::from_i64(3, digits);
        (&radius * a.cos()).abs()
    });

    let mut closed_form: [HighReal; 3] = std::array::from_fn(|_| HighReal::zero(digits));
    let mut branches = [0u8; 3];
    let mut used = [false; 3];
    for (i, d) in deltas.iter().enumerate() {
        let target = d.abs();
        let best = (0..3)
            .filter(|&k| !used[k])
            .min_by(|&a, &b| (&magnitudes[a] - &target).abs().cmp(&(&magnitudes[b] - &target).abs()))
            .expect("an unused magnitude remains");
        used[best] = true;
        branches[i] = [0, 2, 4][best];
        closed_form[i] = if d.is_negative() { -&magnitudes[best] } else { magnitudes[best].clone() };
    }
    Ok(DeltaSet { p, h, deltas, orientation, closed_form, branches })
}
