//! Non-negative binary floats with directed rounding, for the fast scan.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::exactpoly::Rational;

/// `m * 2^e`, with `m` rounded to at most `prec` bits by whoever built it.
#[derive(Clone, Debug)]
pub struct Dyadic {
    m: BigUint,
    e: i64,
}

fn round(m: BigUint, e: i64, prec: u64, up: bool) -> Dyadic {
    let bits = m.bits();
    if bits <= prec {
        return Dyadic { m, e };
    }
    let k = bits - prec;
    let mut q = &m >> k;
    if up && (&q << k) != m {
        q += 1u32;
    }
    Dyadic { m: q, e: e + k as i64 }
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            m: BigUint::zero(),
            e: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            m: BigUint::one(),
            e: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// Exponent of the leading bit plus one.
    fn top(&self) -> i64 {
        self.m.bits() as i64 + self.e
    }

    /// Rounds a non-negative rational down or up.
    pub fn from_rational(q: &Rational, prec: u64, up: bool) -> Self {
        assert!(*q >= Rational::zero(), "dyadic values are non-negative");
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        if num.is_zero() {
            return Self::zero();
        }
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (n, d) = if shift >= 0 {
            (num << shift as u64, den.clone())
        } else {
            (num.clone(), den << (-shift) as u64)
        };
        let mut m = &n / &d;
        if up && &m * &d != n {
            m += 1u32;
        }
        round(m, -shift, prec, up)
    }

    pub fn add(&self, other: &Dyadic, prec: u64, up: bool) -> Dyadic {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        if big.top() - small.top() > prec as i64 + 2 {
            // `small` is below the last kept bit of `big`.
            if !up {
                return big.clone();
            }
            // 2^top(small) > small.
            let e = small.top().min(big.e);
            let m = (&big.m << (big.e - e) as u64) + (BigUint::one() << (small.top() - e) as u64);
            return round(m, e, prec, true);
        }
        let e = big.e.min(small.e);
        let m = (&big.m << (big.e - e) as u64) + (&small.m << (small.e - e) as u64);
        round(m, e, prec, up)
    }

    pub fn div_u64(&self, k: u64, prec: u64, up: bool) -> Dyadic {
        if self.is_zero() {
            return Self::zero();
        }
        let shift = prec + 64;
        let n = &self.m << shift;
        let mut q = &n / k;
        if up && &q * k != n {
            q += 1u32;
        }
        round(q, self.e - shift as i64, prec, up)
    }

    pub fn cmp_value(&self, other: &Dyadic) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match self.top().cmp(&other.top()) {
            Ordering::Equal => {}
            o => return o,
        }
        let e = self.e.min(other.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &other.m << (other.e - e) as u64;
        a.cmp(&b)
    }
}

/// `[lo, hi]` of non-negative dyadics.
#[derive(Clone, Debug)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyadicInterval {
    pub fn zero() -> Self {
        DyadicInterval {
            lo: Dyadic::zero(),
            hi: Dyadic::zero(),
        }
    }

    pub fn one() -> Self {
        DyadicInterval {
            lo: Dyadic::one(),
            hi: Dyadic::one(),
        }
    }

    pub fn from_rational(q: &Rational, prec: u64) -> Self {
        DyadicInterval {
            lo: Dyadic::from_rational(q, prec, false),
            hi: Dyadic::from_rational(q, prec, true),
        }
    }

    /// `self + other / k`
    pub fn add_div(&self, other: &DyadicInterval, k: u64, prec: u64) -> Self {
        DyadicInterval {
            lo: self.lo.add(&other.lo.div_u64(k, prec, false), prec, false),
            hi: self.hi.add(&other.hi.div_u64(k, prec, true), prec, true),
        }
    }

    /// `Some(ordering)` when the intervals are disjoint, `None` otherwise.
    pub fn compare(&self, other: &DyadicInterval) -> Option<Ordering> {
        if self.lo.cmp_value(&other.hi) == Ordering::Greater {
            Some(Ordering::Greater)
        } else if self.hi.cmp_value(&other.lo) == Ordering::Less {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use num_bigint::BigInt;

    fn to_rational(x: &Dyadic) -> Rational {
        let m = Rational::from_integer(BigInt::from(x.m.clone()));
        let two = Rational::from_integer(BigInt::from(2));
        if x.e >= 0 {
            m * num_traits::pow(two, x.e as usize)
        } else {
            m / num_traits::pow(two, (-x.e) as usize)
        }
    }

    #[test]
    fn directed_rounding_encloses() {
        for prec in [8u64, 64, 256] {
            let q = rat(1, 3);
            let iv = DyadicInterval::from_rational(&q, prec);
            assert!(to_rational(&iv.lo) <= q && q <= to_rational(&iv.hi));
            let sum = iv.add_div(&DyadicInterval::from_rational(&rat(5, 7), prec), 11, prec);
            let exact = q.clone() + rat(5, 77);
            assert!(to_rational(&sum.lo) <= exact && exact <= to_rational(&sum.hi));
        }
    }

    #[test]
    fn tiny_addend_is_rounded_outward() {
        let big = DyadicInterval::from_rational(&rat(1, 1), 16);
        let tiny = DyadicInterval::from_rational(&rat(1, 1 << 40), 16);
        let s = big.add_div(&tiny, 3, 16);
        let exact = rat(1, 1) + rat(1, 3 << 40);
        assert!(to_rational(&s.lo) <= exact && exact <= to_rational(&s.hi));
        assert!(to_rational(&s.hi) > rat(1, 1));
    }

    #[test]
    fn compare_disjoint_and_overlapping() {
        let a = DyadicInterval::from_rational(&rat(1, 3), 64);
        let b = DyadicInterval::from_rational(&rat(1, 2), 64);
        assert_eq!(a.compare(&b), Some(Ordering::Less));
        assert_eq!(b.compare(&a), Some(Ordering::Greater));
        assert_eq!(a.compare(&a.clone()), None);
    }
}
