//! Prime fields `F_p` (`p < 2^32`) and dense rank computation.

mod eliminate;
mod rng;

pub use rng::FieldSampler;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable capping the worker count (0 or unset: automatic).
pub const THREADS_ENV: &str = "FROBERG_THREADS";

static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();

/// Runs `f` on the crate's worker pool, sized from `FROBERG_THREADS`.
pub fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let pool = POOL.get_or_init(|| {
        let n = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .unwrap_or(0);
        if n == 0 {
            return None;
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()
    });
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

/// Trial division; `p < 2^32` keeps it under 2^16 steps.
fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    if p % 3 == 0 {
        return p == 3;
    }
    let mut i = 5u64;
    while i * i <= p {
        if p % i == 0 || p % (i + 2) == 0 {
            return false;
        }
        i += 6;
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) {
            return Err(Error::FieldTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "zero has no inverse");
        self.pow(a, u64::from(self.p) - 2)
    }

    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }
}

/// Rank and the lexicographically first set of pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Dense row-major matrix over `F_p`, entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FFMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", &self.row(r)[..self.cols.min(16)])?;
        }
        Ok(())
    }
}

impl FFMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FFMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds from row vectors; entries are reduced mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        let p = field.modulus();
        let data = rows.iter().flatten().map(|&v| v % p).collect();
        Ok(FFMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Wraps row-major data; every entry must already lie in `[0, p)`.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&v| v >= field.modulus()) {
            return Err(Error::InvalidArgument("entry not reduced mod p".into()));
        }
        Ok(FFMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1 % field.modulus());
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut t = FFMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::InvalidArgument("incompatible matrices".into()));
        }
        let p = u64::from(self.field.modulus());
        let mut out = FFMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = u64::from(self.get(i, k));
                if a == 0 {
                    continue;
                }
                for (j, v) in acc.iter_mut().enumerate() {
                    *v = (*v + a * u64::from(other.get(k, j))) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        Ok(out)
    }

    /// Matrix with i.i.d. uniform entries from the seeded sampler.
    pub fn random(field: PrimeField, rows: usize, cols: usize, seed: u64) -> Self {
        let mut m = FFMatrix::zeros(field, rows, cols);
        FieldSampler::new(field.modulus(), seed).fill(&mut m.data);
        m
    }

    /// Rank profile without touching `self`.
    pub fn rank_profile(&self) -> RankProfile {
        self.clone().into_rank_profile()
    }

    /// Rank profile, eliminating in place.
    pub fn into_rank_profile(mut self) -> RankProfile {
        let (rows, cols, p) = (self.rows, self.cols, self.field.modulus());
        with_pool(|| eliminate::rank_profile_in_place(&mut self.data, rows, cols, p))
    }

    pub fn rank(&self) -> usize {
        self.rank_profile().rank
    }
}

/// See [`FFMatrix::random`].
pub fn random_matrix(field: PrimeField, rows: usize, cols: usize, seed: u64) -> FFMatrix {
    FFMatrix::random(field, rows, cols, seed)
}

/// See [`FFMatrix::rank_profile`].
pub fn rank_profile(m: &FFMatrix) -> RankProfile {
    m.rank_profile()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(11).is_ok());
        assert!(PrimeField::new(4294967291).is_ok());
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(91), Err(Error::NotPrime(91)));
        assert_eq!(PrimeField::new(1 << 33), Err(Error::FieldTooLarge(1 << 33)));
    }

    #[test]
    fn field_ops() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce_i64(-1), 12);
        assert_eq!(f.neg(0), 0);
    }

    #[test]
    fn rank_examples() {
        let f7 = PrimeField::new(7).unwrap();
        let id = FFMatrix::identity(f7, 5);
        assert_eq!(
            id.rank_profile(),
            RankProfile {
                rank: 5,
                pivot_cols: vec![0, 1, 2, 3, 4]
            }
        );
        let f5 = PrimeField::new(5).unwrap();
        let m = FFMatrix::from_rows(f5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(
            m.rank_profile(),
            RankProfile {
                rank: 1,
                pivot_cols: vec![0]
            }
        );
        let empty = FFMatrix::zeros(f5, 0, 3);
        assert_eq!(empty.rank(), 0);
        let zero = FFMatrix::zeros(f5, 3, 3);
        assert_eq!(zero.rank_profile().pivot_cols, Vec::<usize>::new());
    }

    #[test]
    fn random_is_deterministic() {
        let f2 = PrimeField::new(2).unwrap();
        let a = FFMatrix::random(f2, 1, 1, 0);
        assert_eq!(a, FFMatrix::random(f2, 1, 1, 0));
        assert!(a.get(0, 0) < 2);
        let f11 = PrimeField::new(11).unwrap();
        let a = FFMatrix::random(f11, 3, 3, 42);
        assert_eq!(a, FFMatrix::random(f11, 3, 3, 42));
        assert_ne!(a, FFMatrix::random(f11, 3, 3, 43));
    }
}
