//! The polynomial
//!
//! ```text
//! g_{d,d'}(x) = C(x+d+d', d) / C(d+d', d) - C(x+d', d')
//! ```
//!
//! and the checks built on it. `g(n-1) >= 0` is equivalent to
//! `dim R_{d+d'} >= (dim R_{d'})^2`, and `g(x) <= g(n-1)` on `[0, n-1]`
//! is what the dimension count needs. At most one sign change among the
//! coefficients is a cheap sufficient condition for the latter.

mod dyadic;
mod scan;
pub mod symmetric;

pub use scan::{scan_dprime, scan_dprime_range, ScanMode, ScanReport};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_degrees, Error, Result};
use crate::exactpoly::{
    binom_shift_poly, certify_nonneg_on_interval, rat_int, sign_changes, RatInterval, RatPoly,
    Rational,
};
use crate::ring::{binomial, rs_params};
use symmetric::{low_signs, TopSymmetric};

/// `g_{d,d'}` with its exact coefficients. Degree `d`, `g(0) = 0`, positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoly {
    pub d: u32,
    pub dprime: u32,
    pub poly: RatPoly,
}

impl GPoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.poly.eval(x)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.poly.eval(&rat_int(x))
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.poly.coeffs()
    }
}

/// Expands `g_{d,d'}` from its defining binomials.
pub fn build_g(d: u32, dprime: u32) -> Result<GPoly> {
    check_degrees(d, dprime)?;
    let top = binom_shift_poly(i64::from(d + dprime), d);
    let norm = BigInt::from(binomial(u64::from(d + dprime), u64::from(d)));
    let first = top.scale(&Rational::new(BigInt::one(), norm));
    let second = binom_shift_poly(i64::from(dprime), dprime);
    Ok(GPoly {
        d,
        dprime,
        poly: &first - &second,
    })
}

/// `e_j` of a list of rationals by the recurrence `e_k += v * e_{k-1}`.
fn elementary_symmetric(values: impl Iterator<Item = Rational>, j: usize) -> Rational {
    let mut e = vec![Rational::zero(); j + 1];
    e[0] = Rational::one();
    for v in values {
        for k in (1..=j).rev() {
            let add = &e[k - 1] * &v;
            e[k] += add;
        }
    }
    e.swap_remove(j)
}

fn reciprocals(from: u32, to: u32) -> impl Iterator<Item = Rational> {
    (from..=to).map(|i| Rational::new(BigInt::one(), BigInt::from(i)))
}

/// Coefficient of `x^j` in `g_{d,d'}` as
/// `e_j(1/(d'+1), ..., 1/(d+d')) - e_j(1/1, ..., 1/d')`.
pub fn coeff_via_symmetric(d: u32, dprime: u32, j: u32) -> Result<Rational> {
    check_degrees(d, dprime)?;
    if j > d {
        return Err(Error::IndexOutOfRange { index: j, max: d });
    }
    let j = j as usize;
    Ok(elementary_symmetric(reciprocals(dprime + 1, d + dprime), j)
        - elementary_symmetric(reciprocals(1, dprime), j))
}

/// All coefficients `0..=d` by the symmetric-sum route.
pub fn coeffs_via_symmetric(d: u32, dprime: u32) -> Result<Vec<Rational>> {
    (0..=d).map(|j| coeff_via_symmetric(d, dprime, j)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        q.cmp(&Rational::zero()).into()
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// Number of alternations in a sign list, zeros skipped.
pub fn count_sign_changes(signs: &[Sign]) -> usize {
    let mut last = None;
    let mut changes = 0;
    for &s in signs.iter().filter(|&&s| s != Sign::Zero) {
        if last.is_some_and(|l| l != s) {
            changes += 1;
        }
        last = Some(s);
    }
    changes
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignProfile {
    pub changes: usize,
    /// Signs of the coefficients of `x^1 ..= x^d`.
    pub signs: Vec<Sign>,
}

/// Sign pattern of the coefficients of `x^1 ..= x^d` of `g_{d,d'}`.
///
/// Computed with integer symmetric sums; only `x^1 .. x^{d'}` can be
/// non-positive, the rest are products of positive reciprocals.
pub fn sign_change_profile(d: u32, dprime: u32) -> Result<SignProfile> {
    check_degrees(d, dprime)?;
    let upper = TopSymmetric::with_len(u64::from(dprime), dprime as usize, u64::from(d));
    let lower = TopSymmetric::with_len(0, dprime as usize, u64::from(dprime));
    let mut signs: Vec<Sign> = low_signs(&upper, &lower).into_iter().map(Sign::from).collect();
    signs.resize(d as usize, Sign::Pos);
    Ok(SignProfile {
        changes: count_sign_changes(&signs),
        signs,
    })
}

/// Which argument settled [`certify_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    /// At most one coefficient sign change and `g(n-1) >= 0`.
    OneSignChange,
    /// Exact Sturm certification of `g(n-1) - g >= 0` on `[0, n-1]`.
    SturmFallback,
    /// `g(n-1) < 0`; nothing can hold.
    HypothesisFails,
}

impl BoundMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMethod::OneSignChange => "one-sign-change",
            BoundMethod::SturmFallback => "sturm-fallback",
            BoundMethod::HypothesisFails => "hypothesis-fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub d: u32,
    pub dprime: u32,
    pub n: u32,
    pub holds: bool,
    pub method: BoundMethod,
    pub g_at_nminus1: Rational,
    pub sign_changes: usize,
    /// The bound then also holds for `g_{d+1,d'}` at the same `n`.
    pub propagates_in_d: bool,
    /// A point of `[0, n-1]` with `g(x) > g(n-1)` when the Sturm route fails.
    pub witness: Option<Rational>,
}

/// Decides `g(n-1) >= 0` and `g(x) <= g(n-1)` for all `x` in `[0, n-1]`.
pub fn certify_bound(d: u32, dprime: u32, n: u32) -> Result<BoundCertificate> {
    check_degrees(d, dprime)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let g = build_g(d, dprime)?;
    let top = g.eval_int(i64::from(n) - 1);
    let changes = sign_changes(&g.coeffs()[1..]);
    let mut cert = BoundCertificate {
        d,
        dprime,
        n,
        holds: false,
        method: BoundMethod::HypothesisFails,
        g_at_nminus1: top.clone(),
        sign_changes: changes,
        propagates_in_d: false,
        witness: None,
    };
    if top.is_negative() {
        return Ok(cert);
    }
    if changes <= 1 {
        cert.method = BoundMethod::OneSignChange;
        cert.holds = true;
    } else {
        let gap = &RatPoly::constant(top) - &g.poly;
        let iv = RatInterval::new(Rational::zero(), rat_int(i64::from(n) - 1))?;
        let res = certify_nonneg_on_interval(&gap, &iv)?;
        cert.method = BoundMethod::SturmFallback;
        cert.holds = res.nonneg;
        cert.witness = res.witness;
    }
    cert.propagates_in_d = cert.holds;
    Ok(cert)
}

/// True iff `g_{d,d-1}` has a positive top coefficient and every other
/// coefficient of `x^1 .. x^{d-1}` negative.
pub fn check_d_minus_1_signs(d: u32) -> Result<bool> {
    if d < 2 {
        return Err(Error::InvalidDegrees { d, dprime: d.saturating_sub(1) });
    }
    let profile = sign_change_profile(d, d - 1)?;
    let (top, rest) = profile.signs.split_last().unwrap();
    Ok(*top == Sign::Pos && rest.iter().all(|&s| s == Sign::Neg))
}

/// The three conditions that are equivalent for `d > d' >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivTriple {
    /// `g_{d,d'}(n-1) >= 0`
    pub g_nonneg: bool,
    /// `dim R_{d+d'} >= (dim R_{d'})^2`
    pub dim_sq: bool,
    /// `r >= dim R_{d'}` when `s = dim R_{d'}`, else `r > dim R_{d'}`
    pub r_cond: bool,
}

impl EquivTriple {
    pub fn agree(&self) -> bool {
        self.g_nonneg == self.dim_sq && self.dim_sq == self.r_cond
    }
}

pub fn equiv_triple(n: u32, d: u32, dprime: u32) -> Result<EquivTriple> {
    check_degrees(d, dprime)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let g = build_g(d, dprime)?;
    let params = rs_params(n, d, dprime);
    let dim_sq = params.dim_ddprime >= &params.dim_dprime * &params.dim_dprime;
    let r_cond = if params.s == params.dim_dprime {
        params.r >= params.dim_dprime
    } else {
        params.r > params.dim_dprime
    };
    Ok(EquivTriple {
        g_nonneg: !g.eval_int(i64::from(n) - 1).is_negative(),
        dim_sq,
        r_cond,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn build_g_examples() {
        let g = build_g(3, 2).unwrap();
        assert_eq!(
            g.coeffs(),
            &[rat(0, 1), rat(-43, 60), rat(-3, 10), rat(1, 60)]
        );
        assert_eq!(build_g(5, 2).unwrap().eval_int(2), rat_int(0));
        for (d, dp) in [(2, 1), (7, 3), (9, 8)] {
            assert!(build_g(d, dp).unwrap().eval_int(0).is_zero());
        }
        assert_eq!(build_g(2, 2), Err(Error::InvalidDegrees { d: 2, dprime: 2 }));
        assert!(build_g(3, 0).is_err());
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(coeff_via_symmetric(3, 2, 1).unwrap(), rat(-43, 60));
        assert_eq!(coeff_via_symmetric(3, 2, 2).unwrap(), rat(-3, 10));
        assert_eq!(coeff_via_symmetric(6, 4, 0).unwrap(), rat(0, 1));
        assert_eq!(
            coeff_via_symmetric(3, 2, 4),
            Err(Error::IndexOutOfRange { index: 4, max: 3 })
        );
    }

    #[test]
    fn profile_examples() {
        use Sign::*;
        let p = sign_change_profile(3, 2).unwrap();
        assert_eq!((p.changes, p.signs), (1, vec![Neg, Neg, Pos]));
        let p = sign_change_profile(2, 1).unwrap();
        assert_eq!((p.changes, p.signs), (1, vec![Neg, Pos]));
        let p = sign_change_profile(4, 3).unwrap();
        assert_eq!((p.changes, p.signs), (1, vec![Neg, Neg, Neg, Pos]));
    }

    #[test]
    fn certify_examples() {
        let c = certify_bound(5, 2, 3).unwrap();
        assert!(c.holds && c.propagates_in_d);
        assert_eq!(c.method, BoundMethod::OneSignChange);
        assert_eq!(c.g_at_nminus1, rat_int(0));

        let c = certify_bound(3, 2, 22).unwrap();
        assert!(c.holds);
        assert_eq!(c.g_at_nminus1, rat_int(7));

        let c = certify_bound(3, 2, 21).unwrap();
        assert!(!c.holds && !c.propagates_in_d);
        assert_eq!(c.method, BoundMethod::HypothesisFails);
        assert_eq!(c.g_at_nminus1, rat_int(-1));
    }

    #[test]
    fn d_minus_1_examples() {
        assert!(check_d_minus_1_signs(2).unwrap());
        assert!(check_d_minus_1_signs(3).unwrap());
        assert!(check_d_minus_1_signs(10).unwrap());
        assert!(check_d_minus_1_signs(1).is_err());
    }

    #[test]
    fn equiv_examples() {
        let all = |v: bool| EquivTriple {
            g_nonneg: v,
            dim_sq: v,
            r_cond: v,
        };
        assert_eq!(equiv_triple(3, 5, 2).unwrap(), all(true));
        assert_eq!(equiv_triple(3, 4, 2).unwrap(), all(false));
        assert_eq!(equiv_triple(6, 4, 2).unwrap(), all(true));
        assert_eq!(build_g(4, 2).unwrap().eval_int(5), rat_int(1));
    }
}
