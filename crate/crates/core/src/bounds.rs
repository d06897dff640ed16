//! Hilbert function growth bounds with real binomials, the dimensions of the
//! rank strata of `r x dim R_{d'}` matrices, and a row-by-row check of the
//! dimension count that shows the bad locus is a proper subset.
//!
//! For a standard graded algebra with `dim A_j = C(x, j)`, `x >= j - 1`,
//! the next graded piece has `dim A_{j+1} <= C(x+1, j+1)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_degrees, Error, Result};
use crate::exactpoly::{
    binom_real, rat_int, solve_binom_eq, width_from_bits, RatInterval, Rational, DEFAULT_WIDTH_BITS,
    MAX_WIDTH_BITS,
};
use crate::ring::{dim_graded, rs_params};

/// Encloses `C(x + steps, j + steps)` where `C(x, j) = t`, `x >= j - 1`,
/// refining `x` to width `2^-bits`.
fn grow_bound(t: &BigUint, j: u32, steps: u32, bits: u32) -> RatInterval {
    let t = Rational::from_integer(BigInt::from(t.clone()));
    let x = solve_binom_eq(&t, j, &width_from_bits(bits)).expect("t >= 0 and j >= 1");
    let shift = rat_int(i64::from(steps));
    // x + steps >= j + steps - 1, where C(., j + steps) is increasing.
    RatInterval {
        lo: binom_real(&(&x.lo + &shift), j + steps),
        hi: binom_real(&(&x.hi + &shift), j + steps),
    }
}

/// Encloses the largest `dim A_{j+1}` allowed by `dim A_j`.
pub fn macaulay_next_upper(dim_j: &BigUint, j: u32) -> RatInterval {
    assert!(j >= 1, "degree must be positive");
    grow_bound(dim_j, j, 1, DEFAULT_WIDTH_BITS)
}

/// `steps` applications of the growth bound starting from `dim A_{d'} = t`.
/// The bound at each step is attained by the real binomial itself, so the
/// iterate is `C(x + steps, d' + steps)`.
pub fn macaulay_iterated_upper(t: &BigUint, dprime: u32, steps: u32) -> RatInterval {
    assert!(dprime >= 1, "degree must be positive");
    grow_bound(t, dprime, steps, DEFAULT_WIDTH_BITS)
}

/// Dimensions of the rank strata of the projective space of
/// `r x dim R_{d'}` matrices whose last row lies in the first `s` columns
/// (shape of a generic product basis).
///
/// `dim_yt`: rank `dim R_{d'} - t`, last row zero. `dim_xth`: rank
/// `dim R_{d'} - t`, last row nonzero, last `dim R_{d'} - s` columns of rank
/// `h`. `dim_pt`: the whole rank stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDims {
    pub n: u32,
    pub d: u32,
    pub dprime: u32,
    pub t: i64,
    pub h: i64,
    /// Largest admissible `h`; `dim_xth_best` is taken there.
    pub h_max: i64,
    pub dim_yt: i64,
    pub dim_xth: i64,
    pub dim_xth_best: i64,
    pub dim_pt: i64,
}

fn to_i64(v: &BigUint, what: &str) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} = {v} is too large")))
}

/// Stratum dimensions for a given `t` and `h`.
///
/// Requires `r > dim R_{d'}`; the case `r = s = dim R_{d'}` is the full
/// matrix space, handled by the rank-locus formula `(r+t)(D-t) - 1`.
pub fn dim_partition(n: u32, d: u32, dprime: u32, r: i64, s: i64, t: i64, h: i64) -> Result<PartitionDims> {
    let big_d = to_i64(&dim_graded(n, dprime), "dim R_{d'}")?;
    if !(0..big_d).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} outside 0..{big_d}")));
    }
    if !(1..=big_d).contains(&s) {
        return Err(Error::InvalidArgument(format!("s = {s} outside 1..={big_d}")));
    }
    let equal_case = r == big_d && s == big_d;
    if r <= big_d && !equal_case {
        return Err(Error::HypothesisViolation(format!(
            "r = {r} must exceed dim R_{{d'}} = {big_d} unless r = s = dim R_{{d'}}"
        )));
    }
    let h_max = (big_d - t - 1).min(big_d - s);
    if !(0..=h_max).contains(&h) {
        return Err(Error::InvalidArgument(format!("h = {h} outside 0..={h_max}")));
    }
    let dim_yt = (r + t - 1) * (big_d - t) - 1;
    let x = |h: i64| (r + s + t - big_d) * (big_d - t) - 1 + (2 * big_d - s - t - 1) * h - h * h;
    let dim_pt = if equal_case {
        (r + t) * (big_d - t) - 1
    } else {
        dim_yt.max(x(h_max))
    };
    Ok(PartitionDims {
        n,
        d,
        dprime,
        t,
        h,
        h_max,
        dim_yt,
        dim_xth: x(h),
        dim_xth_best: x(h_max),
        dim_pt,
    })
}

/// One `t` of the dimension count: `x` solves `C(x, d') = t` and `lhs`
/// encloses `t (dim R_{d'} - t - r) + max(t - s, 0) + C(x + d, d + d')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub t: u64,
    pub x: RatInterval,
    pub macaulay_term: RatInterval,
    pub lhs: RatInterval,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: u32,
    pub d: u32,
    pub dprime: u32,
    /// `r > dim R_{d'}`, or `r = s = dim R_{d'}`.
    pub hypothesis: bool,
    pub rows: Vec<AuditRow>,
    pub concludes: bool,
}

impl AuditReport {
    /// Rows whose inequality could not be established.
    pub fn failing_rows(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows.iter().filter(|r| !r.satisfied)
    }
}

fn audit_row(t: u64, d: u32, dprime: u32, big_d: &BigInt, r: &BigInt, s: &BigInt) -> AuditRow {
    let tb = BigInt::from(t);
    let mut base = &tb * (big_d - &tb - r);
    if tb > *s {
        base += &tb - s;
    }
    let base = Rational::from_integer(base);
    let t_rat = Rational::from_integer(tb);
    let shift = rat_int(i64::from(d));
    let mut bits = DEFAULT_WIDTH_BITS;
    loop {
        let x = solve_binom_eq(&t_rat, dprime, &width_from_bits(bits)).expect("t >= 0 and d' >= 1");
        let term = RatInterval {
            lo: binom_real(&(&x.lo + &shift), d + dprime),
            hi: binom_real(&(&x.hi + &shift), d + dprime),
        };
        let lhs = term.add_scalar(&base);
        let zero = Rational::zero();
        let decided = lhs.hi <= zero || lhs.lo > zero;
        if decided || bits >= MAX_WIDTH_BITS {
            // Undecided at the cap counts as unsatisfied.
            let satisfied = lhs.hi <= zero;
            return AuditRow {
                t,
                x,
                macaulay_term: term,
                lhs,
                satisfied,
            };
        }
        bits = (bits * 2).min(MAX_WIDTH_BITS);
    }
}

/// Checks the inequality for every `t` in `0..dim R_{d'}`. `concludes` needs
/// the matrix-space hypothesis on `r` and every row satisfied.
pub fn audit_chain(n: u32, d: u32, dprime: u32) -> Result<AuditReport> {
    check_degrees(d, dprime)?;
    let params = rs_params(n, d, dprime);
    let big_d = params
        .dim_dprime
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("dim R_{d'} too large to enumerate".into()))?;
    let hypothesis =
        params.r > params.dim_dprime || (params.r == params.dim_dprime && params.s == params.dim_dprime);
    let (bd, r, s) = (
        BigInt::from(params.dim_dprime.clone()),
        BigInt::from(params.r.clone()),
        BigInt::from(params.s.clone()),
    );
    let rows: Vec<AuditRow> = crate::gflinalg::with_pool(|| {
        (0..big_d)
            .into_par_iter()
            .map(|t| audit_row(t, d, dprime, &bd, &r, &s))
            .collect()
    });
    let concludes = hypothesis && rows.iter().all(|r| r.satisfied);
    Ok(AuditReport {
        n,
        d,
        dprime,
        hypothesis,
        rows,
        concludes,
    })
}
