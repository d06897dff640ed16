use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat_to_string, Rational};

/// Dense polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// The highest stored coefficient is nonzero; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x + a`
    pub fn linear_shift(a: Rational) -> Self {
        Self::new(vec![a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> RatPoly {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => RatPoly::zero(),
        }
    }

    /// Euclidean division, `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lc;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(rat_to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Number of sign alternations after deleting zeros (the Descartes count).
pub fn sign_changes(coeffs: &[Rational]) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    #[test]
    fn arithmetic_examples() {
        let a = RatPoly::from_ints(&[0, 1]);
        let b = RatPoly::from_ints(&[1]);
        assert_eq!(&a + &b, RatPoly::from_ints(&[1, 1]));
        let a = RatPoly::from_ints(&[-1, 1]);
        let b = RatPoly::from_ints(&[1, 1]);
        assert_eq!(&a * &b, RatPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(&a - &a, RatPoly::zero());
        assert_eq!(RatPoly::zero().degree(), None);
    }

    #[test]
    fn eval_g32_at_21() {
        let g = RatPoly::new(vec![rat(0, 1), rat(-43, 60), rat(-3, 10), rat(1, 60)]);
        assert_eq!(g.eval(&rat_int(21)), rat_int(7));
        assert_eq!(g.eval(&rat_int(20)), rat_int(-1));
    }

    #[test]
    fn sign_change_examples() {
        let v: Vec<_> = [1, -1, -1, 0, 1].iter().map(|&c| rat_int(c)).collect();
        assert_eq!(sign_changes(&v), 2);
        let g = [rat(0, 1), rat(-43, 60), rat(-3, 10), rat(1, 60)];
        assert_eq!(sign_changes(&g), 1);
        assert_eq!(sign_changes(&[]), 0);
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let p = RatPoly::from_ints(&[2, -3, 0, 1]);
        let (q, r) = p.div_rem(&RatPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, RatPoly::from_ints(&[-2, 1, 1]));
        assert_eq!(p.gcd(&p.derivative()), RatPoly::from_ints(&[-1, 1]));
        assert_eq!(p.squarefree_part().monic(), RatPoly::from_ints(&[-2, 1, 1]));
    }
}
