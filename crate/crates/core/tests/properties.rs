use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use cubicfields::cubic::{build_rcp, build_scp, companion_matrix, IntegerMatrix3};
use cubicfields::gaussian::{lehmer_prime, verify_idscrp};
use cubicfields::roots::{eta, oracle_roots, orbit, rcp_through, rcp_zeros, scp_zeros, solve_cubic_trig};
use cubicfields::sequences::{
    char_poly_of_power, chebyshev_path_eigenvalues, path_walks, recurrence_eval, trace_power_sum,
};
use cubicfields::{ExactRcpParams, FloatCubic, HighReal, PrecisionPolicy, Rational, RcpParams};

fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn float_closed_form_matches_oracle(h in -40.0f64..40.0, s in prop_oneof![-8.0f64..-0.25, 0.25f64..8.0]) {
        let params = RcpParams::new(h, s).unwrap();
        let c: FloatCubic = build_rcp(&params);
        let closed = rcp_zeros(&params);
        let oracle = oracle_roots(&c).unwrap();
        let scale = 1.0 + h.abs() * s.abs();
        for (a, b) in closed.zeros().iter().zip(oracle.zeros()) {
            prop_assert!((a - b).abs() < 1e-9 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn exact_orbit_stays_on_the_cubic(an in -60i64..60, ad in 1i64..12, sn in prop_oneof![-9i64..-1, 1i64..9]) {
        let (alpha, s) = (rat(an, ad), rat(sn, 1));
        prop_assume!(!alpha.is_zero() && alpha != s);
        let (h, c) = rcp_through(&alpha, &s).unwrap();
        prop_assert_eq!(&c, &build_rcp(&ExactRcpParams::new(h, s.clone()).unwrap()));
        let zeros = orbit(&s, &alpha).unwrap();
        for z in zeros.zeros() {
            prop_assert!(c.eval(z).is_zero());
        }
        let back = eta(&s, &eta(&s, &eta(&s, &alpha).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(back, alpha);
    }

    #[test]
    fn trace_sums_follow_their_recurrence(h in -6i64..6, k in 1u64..4) {
        let spec = char_poly_of_power(h, k);
        for n in 0..12 {
            prop_assert_eq!(recurrence_eval(&spec, n), trace_power_sum(h, k, n));
        }
    }

    #[test]
    fn period_polynomial_identity_is_exact(hi in 0usize..30, sn in prop_oneof![-7i64..-1, 1i64..7], xn in -50i64..50, xd in 1i64..9) {
        let hs: Vec<i64> = (-40i64..40).filter(|&h| lehmer_prime(h).is_ok()).collect();
        let h = hs[hi % hs.len()];
        let residual = verify_idscrp(h, &rat(sn, 1), &rat(xn, xd)).unwrap();
        prop_assert!(residual.is_zero(), "h={h}: {residual}");
    }
}

#[test]
fn generic_solver_agrees_across_scalars() {
    let policy = PrecisionPolicy::new(40);
    let w = policy.working_digits();
    for (n, d) in [(-7, 2), (-1, 1), (0, 1), (5, 3), (23, 1)] {
        let high = scp_zeros(&HighReal::from_fraction(n, d, w));
        let float = scp_zeros(&(n as f64 / d as f64));
        for (a, b) in high.zeros().iter().zip(float.zeros()) {
            assert!((a.to_f64() - b).abs() < 1e-12);
        }
        let trig = solve_cubic_trig(&build_scp(&HighReal::from_fraction(n, d, w))).unwrap();
        assert!(trig.approx_eq(&high, &policy));
    }
}

#[test]
fn higher_precision_refines_lower() {
    let lo = scp_zeros(&HighReal::from_fraction(17, 5, 60));
    let hi = scp_zeros(&HighReal::from_fraction(17, 5, 200));
    for (a, b) in lo.zeros().iter().zip(hi.zeros()) {
        assert_eq!(a.to_fixed_string(55), b.to_fixed_string(55));
    }
}

#[test]
fn walk_counts_equal_eigenvalue_power_sums() {
    let policy = PrecisionPolicy::new(40);
    for n in [1usize, 2, 5, 6, 11] {
        let eigen = chebyshev_path_eigenvalues(n, &policy);
        for l in 0..16u64 {
            let sum = eigen.iter().fold(HighReal::zero(policy.working_digits()), |acc, x| acc + x.powi(l as i64));
            assert_eq!(sum.round(), path_walks(n, l), "n={n}, l={l}");
        }
    }
}

#[test]
fn companion_matrix_powers_have_unit_determinant() {
    for h in [-5i64, -1, 0, 2, 9] {
        let m = companion_matrix(&BigInt::from(h));
        assert_eq!(m.pow(0), IntegerMatrix3::identity());
        for k in 1..6 {
            assert_eq!(m.pow(k).det(), BigInt::from(1));
            assert_eq!(m.pow(k).trace(), trace_power_sum(h, k, 1));
        }
    }
}
