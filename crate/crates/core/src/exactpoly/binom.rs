use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rat_int, RatInterval, RatPoly, Rational};
use crate::error::{Error, Result};

/// Bisection width `2^-64` used unless the caller asks for more.
pub const DEFAULT_WIDTH_BITS: u32 = 64;
/// Refinement below `2^-512` gives up with [`Error::PrecisionExhausted`].
pub const MAX_WIDTH_BITS: u32 = 512;

/// `2^-bits`.
pub fn width_from_bits(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits)
}

/// `C(x + a, m) = (x+a)(x+a-1)...(x+a-m+1) / m!` as a polynomial in `x`.
pub fn binom_shift_poly(a: i64, m: u32) -> RatPoly {
    let mut acc = RatPoly::constant(Rational::one());
    let mut fact = BigInt::one();
    for i in 0..i64::from(m) {
        acc = &acc * &RatPoly::linear_shift(rat_int(a - i));
        fact *= i + 1;
    }
    acc.scale(&Rational::new(BigInt::one(), fact))
}

/// Generalized binomial `C(x, m) = x(x-1)...(x-m+1)/m!` at a rational `x`.
pub fn binom_real(x: &Rational, m: u32) -> Rational {
    let mut num = Rational::one();
    let mut fact = BigInt::one();
    for i in 0..m {
        num *= x - rat_int(i64::from(i));
        fact *= i + 1;
    }
    num / Rational::from_integer(fact)
}

/// Encloses the unique `x >= j - 1` with `C(x, j) = t`.
///
/// `C(., j)` is strictly increasing on `[j-1, inf)`, so an integer search
/// followed by bisection works; exact hits collapse to a point interval.
/// `t = 0` gives the point `j - 1`.
pub fn solve_binom_eq(t: &Rational, j: u32, width: &Rational) -> Result<RatInterval> {
    if t.is_negative() {
        return Err(Error::NegativeInput);
    }
    if j == 0 {
        return Err(Error::DomainError("C(x, 0) = 1 is constant".into()));
    }
    if !width.is_positive() {
        return Err(Error::InvalidArgument("width must be positive".into()));
    }
    let base = i64::from(j) - 1;
    if t.is_zero() {
        return Ok(RatInterval::point(rat_int(base)));
    }
    let at = |k: i64| binom_real(&rat_int(k), j);

    // Largest integer k >= j-1 with C(k, j) <= t.
    let mut step = 1i64;
    while at(base + step) <= *t {
        step *= 2;
    }
    let (mut lo_k, mut hi_k) = (base + step / 2, base + step);
    if step == 1 {
        lo_k = base;
    }
    while hi_k - lo_k > 1 {
        let mid = lo_k + (hi_k - lo_k) / 2;
        if at(mid) <= *t {
            lo_k = mid;
        } else {
            hi_k = mid;
        }
    }
    if at(lo_k) == *t {
        return Ok(RatInterval::point(rat_int(lo_k)));
    }

    let (mut lo, mut hi) = (rat_int(lo_k), rat_int(hi_k));
    let two = rat_int(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let v = binom_real(&mid, j);
        if v == *t {
            return Ok(RatInterval::point(mid));
        }
        if v < *t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RatInterval { lo, hi })
}

/// Encloses `C(x, m)` for `x` in the interval, which must lie in the
/// monotone range `x >= m - 1`.
pub fn eval_generalized_binom(x: &RatInterval, m: u32) -> Result<RatInterval> {
    if m >= 1 && x.lo < rat_int(i64::from(m) - 1) {
        return Err(Error::DomainError(format!(
            "C(x, {m}) is only monotone for x >= {}",
            i64::from(m) - 1
        )));
    }
    Ok(RatInterval {
        lo: binom_real(&x.lo, m),
        hi: binom_real(&x.hi, m),
    })
}
