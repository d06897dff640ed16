use froberg_core::bounds::{audit_chain, dim_partition, macaulay_iterated_upper, macaulay_next_upper};
use froberg_core::exactpoly::{rat_int, RatInterval, Rational};
use froberg_core::gflinalg::PrimeField;
use froberg_core::gpoly::certify_bound;
use froberg_core::ring::{dim_graded, rs_params};
use froberg_core::verify::{hilbert_function, sample_forms};
use froberg_core::Error;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn as_rat(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v.clone()))
}

#[test]
fn full_ring_attains_the_bound() {
    for n in 1..=10u32 {
        for j in 1..=8u32 {
            let iv = macaulay_next_upper(&dim_graded(n, j), j);
            assert_eq!(iv, RatInterval::point(as_rat(&dim_graded(n, j + 1))), "n={n} j={j}");
        }
    }
}

#[test]
fn iterated_bound_for_full_ring() {
    // C(x, 2) = 10 gives x = 5, three steps give C(8, 5) = 56.
    assert_eq!(
        macaulay_iterated_upper(&BigUint::from(10u32), 2, 3),
        RatInterval::point(rat_int(56))
    );
    for n in 2..=8u32 {
        let iv = macaulay_iterated_upper(&dim_graded(n, 2), 2, 4);
        assert_eq!(iv, RatInterval::point(as_rat(&dim_graded(n, 6))));
    }
}

#[test]
fn audit_examples() {
    for &(n, d, dp) in &[(3u32, 5u32, 2u32), (22, 3, 2), (25, 3, 2), (30, 3, 2), (6, 4, 2)] {
        let a = audit_chain(n, d, dp).unwrap();
        assert!(a.concludes, "({n},{d},{dp})");
        assert_eq!(a.rows.len(), dim_graded(n, dp).to_usize().unwrap());
        assert!(a.rows.windows(2).all(|w| w[0].t + 1 == w[1].t));
    }
    let a = audit_chain(21, 3, 2).unwrap();
    assert!(!a.concludes);
    assert!(matches!(audit_chain(4, 2, 3), Err(Error::InvalidDegrees { .. })));
}

#[test]
fn audit_agrees_with_certificate() {
    let mut divergent = Vec::new();
    for d in 3..=6u32 {
        for dp in 1..d.min(4) {
            for n in 2..=12u32 {
                let audit = audit_chain(n, d, dp).unwrap();
                let cert = certify_bound(d, dp, n).unwrap();
                if audit.concludes {
                    assert!(cert.g_at_nminus1 >= rat_int(0), "({n},{d},{dp})");
                }
                if audit.concludes != cert.holds {
                    divergent.push((n, d, dp));
                }
            }
        }
    }
    assert!(divergent.is_empty(), "audit and certificate differ at {divergent:?}");
}

/// Counts rank-1 2x2 matrices over F_q (the affine cone over the rank-1
/// stratum with zero last row, for r = 3 and two columns).
fn count_rank_one(q: u64) -> u64 {
    let mut count = 0;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let nonzero = a + b + c + d > 0;
                    if nonzero && (a * d + q * q - b * c) % q == 0 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn synthetic_stratum_dimension() {
    // r = 3 rows, 2 columns (n = 2, d' = 1), t = 1: rank-1 matrices with
    // zero last row. The affine cone has q^3 + q^2 - q - 1 points, so the
    // projective dimension is 3 - 1 = 2.
    for q in [2u64, 3, 5] {
        assert_eq!(count_rank_one(q), q * q * q + q * q - q - 1);
    }
    let dims = dim_partition(2, 3, 1, 3, 1, 1, 0).unwrap();
    assert_eq!(dims.dim_yt, 2);
}

#[test]
fn stratum_formula_matches_closed_form() {
    let mut checked = 0;
    for n in 2..=8u32 {
        for d in 2..=5u32 {
            for dp in 1..d {
                let p = rs_params(n, d, dp);
                let (r, s, big_d) = (
                    p.r.to_i64().unwrap(),
                    p.s.to_i64().unwrap(),
                    p.dim_dprime.to_i64().unwrap(),
                );
                let dim_dd = p.dim_ddprime.to_i64().unwrap();
                if r <= big_d && !(r == big_d && s == big_d) {
                    assert!(matches!(
                        dim_partition(n, d, dp, r, s, 0, 0),
                        Err(Error::HypothesisViolation(_))
                    ));
                    continue;
                }
                for t in 0..big_d {
                    let dims = dim_partition(n, d, dp, r, s, t, 0).unwrap();
                    let want = dim_dd + t * (big_d - t - r) + (t - s).max(0) - 1;
                    assert_eq!(dims.dim_pt, want, "n={n} d={d} d'={dp} t={t}");
                    checked += 1;
                }
                assert_eq!(dim_partition(n, d, dp, r, s, 0, 0).unwrap().dim_pt, dim_dd - 1);
            }
        }
    }
    assert!(checked > 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hilbert_function_respects_growth_bound(
        n in 1u32..=4,
        degrees in prop::collection::vec(1u32..=3, 1..=4),
        seed in any::<u64>(),
    ) {
        let field = PrimeField::new(101).unwrap();
        let gens: Vec<_> = degrees
            .iter()
            .enumerate()
            .map(|(i, &deg)| sample_forms(n, deg, 1, field, seed.wrapping_add(i as u64)))
            .collect();
        let hf = hilbert_function(n, &gens, 7).unwrap();
        for j in 1..7u32 {
            let bound = macaulay_next_upper(&BigUint::from(hf[j as usize]), j);
            prop_assert!(rat_int(hf[j as usize + 1] as i64) <= bound.hi);
        }
    }
}
