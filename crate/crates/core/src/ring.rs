//! Combinatorics of the standard graded ring `R = k[x_1, ..., x_n]`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `dim_k R_e = C(n + e - 1, e)` for `n >= 1` variables.
pub fn dim_graded(n: u32, e: u32) -> BigUint {
    assert!(n >= 1, "the ring needs at least one variable");
    binomial(u64::from(n) + u64::from(e) - 1, u64::from(e))
}

/// [`dim_graded`] for callers that index arrays with it.
///
/// Panics if the dimension does not fit in `usize`.
pub fn dim_graded_usize(n: u32, e: u32) -> usize {
    dim_graded(n, e)
        .to_usize()
        .expect("graded dimension does not fit in usize")
}

/// Exact binomial coefficient `C(top, k)`, zero when `k > top`.
pub fn binomial(top: u64, k: u64) -> BigUint {
    if k > top {
        return BigUint::zero();
    }
    let k = k.min(top - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(top, i) here, so the division is exact.
        acc *= top - i;
        acc /= i + 1;
    }
    acc
}

/// A monomial `x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// True when only the first `k` variables occur.
    pub fn only_first_vars(&self, k: usize) -> bool {
        self.exponents.iter().skip(k).all(|&a| a == 0)
    }

    /// Graded lexicographic comparison with `x_1 > x_2 > ... > x_n`.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &a) in self.exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if wrote {
                f.write_str("*")?;
            }
            write!(f, "x{}", i + 1)?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of one degree, largest first in graded lex order.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub n: u32,
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }
}

/// Enumerates the degree-`e` monomials in `n` variables.
///
/// The list starts at `x_1^e` and is strictly decreasing in graded lex
/// order, so position in the list is the canonical index of a monomial.
pub fn monomial_basis(n: u32, e: u32) -> DegreeBasis {
    assert!(n >= 1, "the ring needs at least one variable");
    let mut monomials = Vec::with_capacity(dim_graded_usize(n, e));
    let mut current = vec![0u32; n as usize];
    fill_basis(&mut current, 0, e, &mut monomials);
    let index = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    DegreeBasis {
        n,
        degree: e,
        monomials,
        index,
    }
}

fn fill_basis(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.to_vec()));
        current[pos] = 0;
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill_basis(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

/// The frame `(n, d, d')` together with the derived dimensions and `r`, `s`.
///
/// `r` is the least integer with `r * dim R_{d'} >= dim R_{d+d'}` and
/// `s = dim R_{d+d'} - (r - 1) * dim R_{d'}`, so `1 <= s <= dim R_{d'}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingParams {
    pub n: u32,
    pub d: u32,
    pub dprime: u32,
    pub dim_ddprime: BigUint,
    pub dim_dprime: BigUint,
    pub r: BigUint,
    pub s: BigUint,
}

impl RingParams {
    pub fn dim_d(&self) -> BigUint {
        dim_graded(self.n, self.d)
    }

    pub fn r_usize(&self) -> usize {
        self.r.to_usize().expect("r does not fit in usize")
    }

    pub fn s_usize(&self) -> usize {
        self.s.to_usize().expect("s does not fit in usize")
    }
}

/// Computes `r` and `s`. Any `d, d' >= 1` is accepted here so that
/// parameters can be inspected; the verifier enforces `d > d'`.
pub fn rs_params(n: u32, d: u32, dprime: u32) -> RingParams {
    let dim_ddprime = dim_graded(n, d + dprime);
    let dim_dprime = dim_graded(n, dprime);
    let r = dim_ddprime.div_ceil(&dim_dprime);
    let s = &dim_ddprime - (&r - 1u32) * &dim_dprime;
    RingParams {
        n,
        d,
        dprime,
        dim_ddprime,
        dim_dprime,
        r,
        s,
    }
}

/// Coefficients `0..=max_deg` of `[prod_i (1 - t^{d_i}) / (1 - t)^n]`, where
/// the bracket zeroes the first non-positive coefficient and everything
/// after it.
pub fn conjectured_series(n: u32, degrees: &[u32], max_deg: u32) -> Vec<BigUint> {
    let len = max_deg as usize + 1;
    let mut series = vec![BigInt::zero(); len];
    series[0] = BigInt::one();
    // Multiply by each (1 - t^{d_i}), dropping terms past max_deg.
    for &di in degrees {
        let di = di as usize;
        if di >= len {
            continue;
        }
        for k in (di..len).rev() {
            let shifted = series[k - di].clone();
            series[k] -= shifted;
        }
    }
    // Dividing by (1 - t) is a prefix sum.
    for _ in 0..n {
        for k in 1..len {
            let prev = series[k - 1].clone();
            series[k] += prev;
        }
    }
    let mut out = Vec::with_capacity(len);
    let mut truncated = false;
    for c in series {
        if truncated || !c.is_positive() {
            truncated = true;
            out.push(BigUint::zero());
        } else {
            out.push(c.magnitude().clone());
        }
    }
    out
}
