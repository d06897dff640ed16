//! Exact univariate polynomials over `Q`.
//!
//! Everything here is exact; signs decided by this module are certified.

mod binom;
mod poly;
mod sturm;

pub use binom::{
    binom_real, binom_shift_poly, eval_generalized_binom, solve_binom_eq, width_from_bits,
    DEFAULT_WIDTH_BITS, MAX_WIDTH_BITS,
};
pub use poly::{sign_changes, RatPoly};
pub use sturm::{certify_nonneg_on_interval, count_real_roots, NonnegCertificate, SturmChain};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats as `num/den`, or just `num` for integers.
pub fn rat_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints out of order: [{}, {}]",
                rat_to_string(&lo),
                rat_to_string(&hi)
            )));
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn point(v: Rational) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add_scalar(&self, v: &Rational) -> RatInterval {
        RatInterval {
            lo: &self.lo + v,
            hi: &self.hi + v,
        }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }
}
