use froberg_core::exactpoly::{rat, rat_int, Rational};
use froberg_core::gpoly::{
    build_g, certify_bound, check_d_minus_1_signs, coeff_via_symmetric, coeffs_via_symmetric, equiv_triple,
    scan_dprime, sign_change_profile, BoundMethod, ScanMode, Sign,
};
use froberg_core::ring::rs_params;
use froberg_core::Error;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn big(v: &num_bigint::BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v.clone()))
}

/// `C(x + a, m)` at rational `x` straight from the falling product.
fn shifted_binom(x: &Rational, a: i64, m: i64) -> Rational {
    let mut acc = rat_int(1);
    for i in 0..m {
        acc = acc * (x + rat_int(a - i)) / rat_int(i + 1);
    }
    acc
}

/// g from its defining quotient of binomials, independent of the library.
fn g_direct(d: u32, dp: u32, x: &Rational) -> Rational {
    let (d, dp) = (i64::from(d), i64::from(dp));
    let denom = shifted_binom(&rat_int(0), d + dp, d);
    shifted_binom(x, d + dp, d) / denom - shifted_binom(x, dp, dp)
}

#[test]
fn published_values_two_ways() {
    for &(d, n, want) in &[(3u32, 22i64, 7i64), (4, 6, 1), (5, 3, 0)] {
        let x = rat_int(n - 1);
        let g = build_g(d, 2).unwrap();
        assert_eq!(g.eval(&x), rat_int(want));
        let coeffs = coeffs_via_symmetric(d, 2).unwrap();
        let mut acc = Rational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        assert_eq!(acc, rat_int(want));
        assert_eq!(g_direct(d, 2, &x), rat_int(want));
    }
    assert_eq!(build_g(3, 2).unwrap().eval_int(20), rat_int(-1));
}

#[test]
fn coefficient_formulas_agree_up_to_12() {
    for d in 2..=12u32 {
        for dp in 1..d {
            let g = build_g(d, dp).unwrap();
            let sym = coeffs_via_symmetric(d, dp).unwrap();
            assert_eq!(g.coeffs(), &sym[..], "g_{{{d},{dp}}}");
            assert!(g.coeffs()[0].is_zero());
        }
    }
    assert_eq!(coeff_via_symmetric(3, 2, 4), Err(Error::IndexOutOfRange { index: 4, max: 3 }));
}

#[test]
fn value_at_n_minus_1_is_a_dimension_gap() {
    // g(n-1) * dim R_{d'} = dim R_{d+d'} - dim R_{d'}^2.
    for n in 1..=25u32 {
        for d in 2..=7u32 {
            for dp in 1..d {
                let p = rs_params(n, d, dp);
                let lhs = build_g(d, dp).unwrap().eval_int(i64::from(n) - 1) * big(&p.dim_dprime);
                let rhs = big(&p.dim_ddprime) - big(&p.dim_dprime) * big(&p.dim_dprime);
                assert_eq!(lhs, rhs, "n={n} d={d} d'={dp}");
            }
        }
    }
}

#[test]
fn sign_profile_matches_rational_coefficients() {
    for d in 2..=16u32 {
        for dp in 1..d {
            let g = build_g(d, dp).unwrap();
            let prof = sign_change_profile(d, dp).unwrap();
            let signs: Vec<Sign> = g.coeffs()[1..].iter().map(Sign::of).collect();
            assert_eq!(prof.signs, signs, "g_{{{d},{dp}}}");
        }
    }
}

#[test]
fn growth_in_n_needs_nonnegative_start() {
    // n (d - d') >= d'^2 holds here, but g(n-1) < 0 and g decreases.
    let g = build_g(5, 4).unwrap();
    assert!(g.eval_int(15).is_negative());
    assert!(g.eval_int(16) < g.eval_int(15));
}

#[test]
fn d_minus_1_pattern() {
    for d in 2..=30u32 {
        assert!(check_d_minus_1_signs(d).unwrap(), "d = {d}");
    }
    assert!(check_d_minus_1_signs(1).is_err());
}

#[test]
fn certify_examples() {
    let c = certify_bound(5, 2, 3).unwrap();
    assert!(c.holds);
    assert_eq!(c.g_at_nminus1, rat_int(0));
    assert_eq!(c.sign_changes, 1);
    assert_eq!(c.method, BoundMethod::OneSignChange);
    let f = certify_bound(3, 2, 21).unwrap();
    assert!(!f.holds);
    assert_eq!(f.method, BoundMethod::HypothesisFails);
}

#[test]
fn scan_modes_agree() {
    for dp in 1..=8 {
        let e = scan_dprime(dp, ScanMode::Exact);
        let f = scan_dprime(dp, ScanMode::IntervalFast);
        assert_eq!((e.max_d_checked, e.all_at_most_one), (f.max_d_checked, f.all_at_most_one));
        // The stop point is the first d with all coefficients non-negative.
        let d = e.max_d_checked;
        assert!(build_g(d, dp).unwrap().coeffs().iter().all(|c| !c.is_negative()));
        assert!(build_g(d - 1, dp).map_or(true, |g| g.coeffs().iter().any(|c| c.is_negative())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn library_g_matches_definition(d in 2u32..10, dp in 1u32..9, num in -50i64..200, den in 1i64..7) {
        prop_assume!(dp < d);
        let x = rat(num, den);
        prop_assert_eq!(build_g(d, dp).unwrap().eval(&x), g_direct(d, dp, &x));
    }

    #[test]
    fn coefficients_grow_with_d(d in 2u32..20, dp in 1u32..19) {
        prop_assume!(dp < d);
        let a = build_g(d, dp).unwrap();
        let b = build_g(d + 1, dp).unwrap();
        for (j, c) in a.coeffs().iter().enumerate() {
            prop_assert!(b.coeffs()[j] >= *c);
        }
    }

    #[test]
    fn linear_nonneg_forces_quadratic_nonneg(d in 3u32..40, dp in 2u32..39) {
        prop_assume!(dp < d);
        let c = build_g(d, dp).unwrap();
        if !c.coeffs()[1].is_negative() {
            prop_assert!(!c.coeffs()[2].is_negative());
        }
    }

    #[test]
    fn bound_propagates_to_larger_d(d in 2u32..9, dp in 1u32..8, n in 1u32..30) {
        prop_assume!(dp < d);
        let a = certify_bound(d, dp, n).unwrap();
        if a.holds {
            prop_assert!(certify_bound(d + 1, dp, n).unwrap().holds);
        }
    }

    #[test]
    fn growth_in_n(d in 2u32..9, dp in 1u32..8, n in 1u32..40) {
        prop_assume!(dp < d);
        prop_assume!(u64::from(n) * u64::from(d - dp) >= u64::from(dp * dp));
        let g = build_g(d, dp).unwrap();
        // The growth step scales g(n-1) by a factor above 1, so it needs g(n-1) >= 0.
        prop_assume!(!g.eval_int(i64::from(n) - 1).is_negative());
        prop_assert!(g.eval_int(i64::from(n)) >= g.eval_int(i64::from(n) - 1));
    }

    #[test]
    fn equivalent_conditions(d in 2u32..=10, dp in 1u32..10, n in 2u32..=25) {
        prop_assume!(dp < d);
        prop_assert!(equiv_triple(n, d, dp).unwrap().agree());
    }

    #[test]
    fn one_sign_change_bounds_on_grid(d in 2u32..8, dp in 1u32..7, n in 1u32..25) {
        prop_assume!(dp < d);
        let c = certify_bound(d, dp, n).unwrap();
        let g = build_g(d, dp).unwrap();
        if c.holds {
            for k in 0..(4 * (n as i64 - 1) + 1) {
                prop_assert!(g.eval(&rat(k, 4)) <= c.g_at_nminus1);
            }
        }
    }
}
