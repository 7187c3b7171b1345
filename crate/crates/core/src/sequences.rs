//! Exact trace sequences of the Shanks companion matrix, closed walks on path
//! graphs, and the trigonometric closed form for the `P_6` walk counts.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cubic::companion_matrix;
use crate::error::{Error, Result};
use crate::precision::{HighReal, PrecisionPolicy};
use crate::scalar::Scalar;

/// A third-order linear recurrence
/// `a(n+3) = c2 a(n+2) - c1 a(n+1) + c0 a(n)`, i.e. characteristic polynomial
/// `x^3 - c2 x^2 + c1 x - c0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub char_coeffs: (BigInt, BigInt, BigInt),
    pub initial: [BigInt; 3],
}

impl RecurrenceSpec {
    pub fn new(char_coeffs: (i64, i64, i64), initial: [i64; 3]) -> Self {
        let (c2, c1, c0) = char_coeffs;
        RecurrenceSpec { char_coeffs: (c2.into(), c1.into(), c0.into()), initial: initial.map(BigInt::from) }
    }

    /// `x^3 - 5x^2 + 6x - 1` from `3, 5, 13` (closed walks of even length on `P_6`, halved).
    pub fn a198636() -> Self {
        Self::new((5, 6, 1), [3, 5, 13])
    }

    fn step(&self, window: &[BigInt; 3]) -> BigInt {
        let (c2, c1, c0) = &self.char_coeffs;
        c2 * &window[2] - c1 * &window[1] + c0 * &window[0]
    }

    /// The first `count` terms.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self.initial.iter().take(count).cloned().collect();
        let mut window = self.initial.clone();
        while out.len() < count {
            let next = self.step(&window);
            window = [window[1].clone(), window[2].clone(), next.clone()];
            out.push(next);
        }
        out
    }
}

/// Term `n` of the recurrence, by iteration.
pub fn recurrence_eval(spec: &RecurrenceSpec, n: u64) -> BigInt {
    if n < 3 {
        return spec.initial[n as usize].clone();
    }
    let mut window = spec.initial.clone();
    for _ in 3..=n {
        let next = spec.step(&window);
        window = [window[1].clone(), window[2].clone(), next];
    }
    window[2].clone()
}

/// `A(k, n) = Tr(M^(kn))` for the companion matrix `M` of the Shanks cubic
/// with parameter `h`; equals the sum of the `kn`-th powers of its zeros.
pub fn trace_power_sum(h: i64, k: u64, n: u64) -> BigInt {
    companion_matrix(&BigInt::from(h)).pow(k * n).trace()
}

/// Characteristic polynomial of `M^k` and the first three terms `A(k, 0..3)`.
///
/// Since `det M = 1`, the middle coefficient is the trace of the adjugate of `M^k`.
pub fn char_poly_of_power(h: i64, k: u64) -> RecurrenceSpec {
    let mk = companion_matrix(&BigInt::from(h)).pow(k);
    debug_assert!(mk.det().is_one());
    let initial = [BigInt::from(3), mk.trace(), mk.pow(2).trace()];
    RecurrenceSpec { char_coeffs: (mk.trace(), mk.adjugate_trace(), mk.det()), initial }
}

/// Dense square matrix of big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntegerMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        IntegerMatrix { n, entries }
    }
}

/// Adjacency matrix of the path `P_N` with a cache of its powers.
///
/// The cache is shared behind a lock: readers proceed concurrently and new
/// powers are inserted whole, so results never depend on interleaving.
#[derive(Debug)]
pub struct WalkTable {
    adjacency: IntegerMatrix,
    powers: RwLock<HashMap<u64, Arc<IntegerMatrix>>>,
}

impl WalkTable {
    /// Panics when `n` is zero.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a path needs at least one vertex");
        let mut adjacency = IntegerMatrix { n, entries: vec![BigInt::zero(); n * n] };
        for i in 0..n.saturating_sub(1) {
            adjacency.entries[i * n + i + 1] = BigInt::one();
            adjacency.entries[(i + 1) * n + i] = BigInt::one();
        }
        WalkTable { adjacency, powers: RwLock::new(HashMap::new()) }
    }

    pub fn vertices(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn adjacency(&self) -> &IntegerMatrix {
        &self.adjacency
    }

    /// `J_N^l`, by binary exponentiation over cached powers.
    pub fn power(&self, l: u64) -> Arc<IntegerMatrix> {
        if let Some(m) = self.powers.read().expect("walk cache poisoned").get(&l) {
            return Arc::clone(m);
        }
        let m = match l {
            0 => IntegerMatrix::identity(self.vertices()),
            1 => self.adjacency.clone(),
            _ => {
                let half = self.power(l / 2);
                let sq = half.mul(&half);
                if l % 2 == 1 {
                    sq.mul(&self.adjacency)
                } else {
                    sq
                }
            }
        };
        let mut cache = self.powers.write().expect("walk cache poisoned");
        Arc::clone(cache.entry(l).or_insert_with(|| Arc::new(m)))
    }

    /// Closed walks of length `l`: `Tr(J_N^l)`.
    pub fn walks(&self, l: u64) -> BigInt {
        self.power(l).trace()
    }
}

pub fn path_walks(n: usize, l: u64) -> BigInt {
    WalkTable::new(n).walks(l)
}

/// `2 cos(j pi / (N+1))` for `j = 1..=N`, the zeros of `S_N(x) = U_N(x/2)`.
pub fn chebyshev_path_eigenvalues(n: usize, policy: &PrecisionPolicy) -> Vec<HighReal> {
    let digits = policy.working_digits();
    let pi = HighReal::pi(digits);
    let two = HighReal::from_i64(2, digits);
    (1..=n as i64).map(|j| &two * (&pi * HighReal::from_fraction(j, n as i64 + 1, digits)).cos()).collect()
}

/// `S_N(x)` from `S_0 = 1`, `S_1 = x`, `S_(n+1) = x S_n - S_(n-1)`.
pub fn chebyshev_s<T: Scalar>(n: usize, x: &T) -> T {
    let mut prev = x.one_like();
    let mut cur = x.clone();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `4^n (cos^(2n)(pi/7) + cos^(2n)(2 pi/7) + cos^(2n)(3 pi/7))` at working precision.
pub fn jefferey_trig_sum(n: u64, policy: &PrecisionPolicy) -> HighReal {
    let digits = policy.working_digits();
    let pi = HighReal::pi(digits);
    let two = HighReal::from_i64(2, digits);
    (1..=3)
        .map(|j| (&two * (&pi * HighReal::from_fraction(j, 7, digits)).cos()).powi(2 * n as i64))
        .fold(HighReal::zero(digits), |acc, t| acc + t)
}

/// Checks, for every `n <= n_max`, that the A198636 recurrence, `A(2, n)` of
/// the `h = -1` companion matrix, half the closed walks of length `2n` on
/// `P_6`, and the rounded trigonometric sum all give the same integer.
///
/// The trigonometric sum must lie within `10^-(target - 10)` of an integer;
/// otherwise the precision is reported as insufficient.
pub fn jefferey_check(n_max: u64, policy: &PrecisionPolicy) -> Result<bool> {
    const MARGIN: u32 = 10;
    let spec = RecurrenceSpec::a198636();
    let walks = WalkTable::new(6);
    let window = HighReal::ten_pow_neg(policy.target_digits.saturating_sub(MARGIN).max(1), policy.working_digits());
    let terms = spec.terms(n_max as usize + 1);
    for (n, exact) in terms.iter().enumerate() {
        let n = n as u64;
        if trace_power_sum(-1, 2, n) != *exact || walks.walks(2 * n) != exact * 2 {
            return Ok(false);
        }
        let trig = jefferey_trig_sum(n, policy);
        let nearest = trig.round();
        let distance = (&trig - HighReal::from_bigint(&nearest, policy.working_digits())).abs();
        if distance >= window {
            return Err(Error::PrecisionExhausted(format!(
                "trigonometric sum for n = {n} is {distance} from the nearest integer"
            )));
        }
        if nearest != *exact {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::scp_zeros;

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn trace_examples() {
        let seq: Vec<BigInt> = (0..7).map(|n| trace_power_sum(-1, 2, n)).collect();
        assert_eq!(seq, big(&[3, 5, 13, 38, 117, 370, 1186]));
        let seq: Vec<BigInt> = (0..5).map(|n| trace_power_sum(-1, 1, n)).collect();
        assert_eq!(seq, big(&[3, -1, 5, -4, 13]));
        for h in [-9, 0, 4, 17] {
            assert_eq!(trace_power_sum(h, 1, 1), BigInt::from(h));
        }
    }

    #[test]
    fn traces_are_real_power_sums() {
        let policy = PrecisionPolicy::new(30);
        for h in [-4, -1, 2, 5] {
            let zeros = scp_zeros(&HighReal::from_i64(h, 60));
            for n in 0..12 {
                let sum = zeros.zeros().iter().fold(HighReal::zero(60), |acc, z| acc + z.powi(2 * n));
                assert_eq!(sum.round(), trace_power_sum(h, 2, n as u64));
                assert!((&sum - HighReal::from_bigint(&sum.round(), 60)).is_negligible(&policy));
            }
        }
    }

    #[test]
    fn char_poly_examples() {
        let spec = char_poly_of_power(-1, 2);
        assert_eq!(spec, RecurrenceSpec::a198636());
        let spec = char_poly_of_power(-1, 3);
        assert_eq!(spec.char_coeffs, (BigInt::from(-4), BigInt::from(-11), BigInt::from(1)));
        for h in [-5, 0, 3, 7] {
            let spec = char_poly_of_power(h, 1);
            assert_eq!(spec.char_coeffs, (BigInt::from(h), BigInt::from(-(h + 3)), BigInt::from(1)));
        }
    }

    #[test]
    fn recurrence_examples() {
        let spec = RecurrenceSpec::a198636();
        assert_eq!(recurrence_eval(&spec, 3), BigInt::from(38));
        assert_eq!(recurrence_eval(&spec, 6), BigInt::from(1186));
        assert_eq!(recurrence_eval(&spec, 10), trace_power_sum(-1, 2, 10));
        assert_eq!(spec.terms(7), big(&[3, 5, 13, 38, 117, 370, 1186]));
        assert_eq!(spec.terms(2), big(&[3, 5]));
    }

    #[test]
    fn shanks_recurrence_holds() {
        for h in -5..=5 {
            let a: Vec<BigInt> = (0..=33).map(|n| trace_power_sum(h, 1, n)).collect();
            for n in 0..=30 {
                assert_eq!(a[n + 3], h * &a[n + 2] + (h + 3) * &a[n + 1] + &a[n]);
            }
        }
    }

    #[test]
    fn power_recurrences_hold() {
        for h in -3..=3 {
            for k in 1..=4 {
                let spec = char_poly_of_power(h, k);
                assert!(companion_matrix(&BigInt::from(h)).pow(k).det().is_one());
                for n in 0..=20 {
                    assert_eq!(recurrence_eval(&spec, n), trace_power_sum(h, k, n), "h={h} k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn walk_examples() {
        assert_eq!(path_walks(6, 0), BigInt::from(6));
        assert_eq!(path_walks(6, 2), BigInt::from(10));
        assert_eq!(path_walks(6, 4), BigInt::from(26));
        assert_eq!(path_walks(6, 5), BigInt::zero());
        assert_eq!(path_walks(1, 0), BigInt::one());
        assert_eq!(path_walks(1, 3), BigInt::zero());
        let table = WalkTable::new(6);
        for n in 0..=25 {
            assert_eq!(table.walks(2 * n), 2 * trace_power_sum(-1, 2, n));
        }
    }

    #[test]
    fn walk_cache_is_shared_across_threads() {
        let table = Arc::new(WalkTable::new(7));
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let table = Arc::clone(&table);
                std::thread::spawn(move || (0..30).map(|l| table.walks((l * 7 + t) % 30)).collect::<Vec<_>>())
            })
            .collect();
        let fresh = WalkTable::new(7);
        for (t, handle) in handles.into_iter().enumerate() {
            let got = handle.join().unwrap();
            let expected: Vec<BigInt> = (0..30).map(|l| fresh.walks((l * 7 + t as u64) % 30)).collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let policy = PrecisionPolicy::new(30);
        let one = HighReal::from_i64(1, 50);
        let ev = chebyshev_path_eigenvalues(2, &policy);
        assert!(policy.approx_eq(&ev[0], &one) && policy.approx_eq(&ev[1], &-&one));
        let ev = chebyshev_path_eigenvalues(1, &policy);
        assert!(ev[0].is_negligible(&policy));
        let ev = chebyshev_path_eigenvalues(6, &policy);
        let pi = HighReal::pi(50);
        for j in 1..=3 {
            let lam = HighReal::from_i64(2, 50) * (&pi * HighReal::from_fraction(j, 7, 50)).cos();
            assert!(ev.iter().any(|e| policy.approx_eq(e, &lam)));
            assert!(ev.iter().any(|e| policy.approx_eq(e, &-&lam)));
        }
    }

    #[test]
    fn spectral_identity() {
        let policy = PrecisionPolicy::new(30).with_guard(20);
        for n in 1..=8 {
            let ev = chebyshev_path_eigenvalues(n, &policy);
            for e in &ev {
                assert!(chebyshev_s(n, e).is_negligible(&policy));
            }
            let table = WalkTable::new(n);
            for l in 0..=20 {
                let sum = ev.iter().fold(HighReal::zero(50), |acc, e| acc + e.powi(l));
                let exact = HighReal::from_bigint(&table.walks(l as u64), 50);
                assert!(policy.approx_eq(&sum, &exact), "N={n} l={l}");
            }
        }
    }

    #[test]
    fn chebyshev_small_cases() {
        assert_eq!(chebyshev_s(0, &3.0), 1.0);
        assert_eq!(chebyshev_s(1, &3.0), 3.0);
        assert_eq!(chebyshev_s(2, &3.0), 8.0);
        assert_eq!(chebyshev_s(3, &3.0), 21.0);
    }

    #[test]
    fn jefferey_examples() {
        assert_eq!(jefferey_check(6, &PrecisionPolicy::new(30)), Ok(true));
        assert_eq!(jefferey_check(0, &PrecisionPolicy::new(30)), Ok(true));
        assert_eq!(jefferey_check(25, &PrecisionPolicy::new(60)), Ok(true));
        assert_eq!(jefferey_trig_sum(0, &PrecisionPolicy::new(30)).round(), BigInt::from(3));
    }

    #[test]
    fn jefferey_reports_starved_precision() {
        // no guard digits and a 12-digit target cannot place 4^40 sums
        let starved = PrecisionPolicy::new(12).with_guard(0);
        assert!(matches!(jefferey_check(40, &starved), Err(Error::PrecisionExhausted(_))));
    }
}
