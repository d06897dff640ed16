//! Integer form of the elementary symmetric sums behind the coefficients
//! of `g_{d,d'}`.
//!
//! For `a = (o+1, ..., o+m)` we have `e_j(1/a) = e_{m-j}(a) / e_m(a)`, so the
//! top `depth + 1` elementary symmetric polynomials of `a` give
//! `e_j(1/a)` for `j <= depth` with only integer arithmetic. Appending the
//! next element `o+m+1` updates that window in `O(depth)` multiplications
//! by a small integer.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::exactpoly::Rational;

#[derive(Clone, Debug)]
pub struct TopSymmetric {
    offset: u64,
    len: u64,
    /// `window[j] = e_{len - j}(offset+1, ..., offset+len)`, zero when
    /// `j > len`.
    window: Vec<BigUint>,
}

impl TopSymmetric {
    pub fn new(offset: u64, depth: usize) -> Self {
        let mut window = vec![BigUint::zero(); depth + 1];
        window[0] = BigUint::one();
        TopSymmetric {
            offset,
            len: 0,
            window,
        }
    }

    /// Window after appending `len` elements.
    pub fn with_len(offset: u64, depth: usize, len: u64) -> Self {
        let mut w = Self::new(offset, depth);
        for _ in 0..len {
            w.push_next();
        }
        w
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn depth(&self) -> usize {
        self.window.len() - 1
    }

    /// Appends the element `offset + len + 1`.
    pub fn push_next(&mut self) {
        self.len += 1;
        let a = self.offset + self.len;
        for j in (1..self.window.len()).rev() {
            let prev = std::mem::take(&mut self.window[j - 1]);
            self.window[j] *= a;
            self.window[j] += &prev;
            self.window[j - 1] = prev;
        }
        self.window[0] *= a;
    }

    /// `e_m(a)`, the product of all elements.
    pub fn product(&self) -> &BigUint {
        &self.window[0]
    }

    /// `e_{len-j}(a)`, the numerator of `e_j(1/a)` over [`Self::product`].
    pub fn numerator(&self, j: usize) -> &BigUint {
        &self.window[j]
    }

    pub fn reciprocal_sum(&self, j: usize) -> Rational {
        Rational::new(
            BigInt::from(self.window[j].clone()),
            BigInt::from(self.window[0].clone()),
        )
    }
}

/// Signs of the coefficients of `x^1 .. x^{d'}` of `g_{d,d'}` given the
/// windows for `(d'+1 .. d'+d)` and `(1 .. d')`. Coefficients of higher
/// powers are always positive.
pub fn low_signs(upper: &TopSymmetric, lower: &TopSymmetric) -> Vec<std::cmp::Ordering> {
    let depth = lower.depth();
    (1..=depth)
        .map(|j| {
            let lhs = upper.numerator(j) * lower.product();
            let rhs = lower.numerator(j) * upper.product();
            lhs.cmp(&rhs)
        })
        .collect()
}
