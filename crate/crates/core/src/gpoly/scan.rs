//! Scanning `d = d'+1, d'+2, ...` for coefficient sign changes of `g_{d,d'}`.
//!
//! Each coefficient of `g_{d,d'}` is non-decreasing in `d`, so once every
//! coefficient is non-negative no later `d` can produce a sign change and
//! the scan stops there.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dyadic::DyadicInterval;
use super::symmetric::{low_signs, TopSymmetric};
use super::{count_sign_changes, Sign};
use crate::exactpoly::Rational;

/// Starting precision of the fast mode, in bits.
pub const FAST_PREC: u64 = 256;
/// Highest precision tried before falling back to exact arithmetic.
const FAST_PREC_MAX: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    /// Integer symmetric sums, exact signs.
    Exact,
    /// Directed-rounding floats; ambiguous signs are re-decided exactly.
    IntervalFast,
}

impl ScanMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanMode::Exact => "exact",
            ScanMode::IntervalFast => "interval-fast",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub dprime: u32,
    pub mode: ScanMode,
    /// The first `d` at which all coefficients are non-negative.
    pub max_d_checked: u32,
    pub all_at_most_one: bool,
    /// Every `d` whose `g_{d,d'}` has two or more sign changes.
    pub failures: Vec<u32>,
    /// Signs the fast mode could not settle at its starting precision.
    pub escalations: usize,
}

/// Runs the scan for one `d'`.
pub fn scan_dprime(dprime: u32, mode: ScanMode) -> ScanReport {
    assert!(dprime >= 1, "d' must be positive");
    let mut failures = Vec::new();
    let mut escalations = 0;
    let mut record = |d: u32, signs: &[Sign]| -> bool {
        // Coefficients past x^{d'} are all positive.
        let mut full = signs.to_vec();
        full.push(Sign::Pos);
        let changes = count_sign_changes(&full);
        if changes > 1 {
            failures.push(d);
        }
        signs.iter().all(|&s| s != Sign::Neg)
    };

    let max_d = match mode {
        ScanMode::Exact => {
            let lower = TopSymmetric::with_len(0, dprime as usize, u64::from(dprime));
            let mut upper = TopSymmetric::with_len(u64::from(dprime), dprime as usize, u64::from(dprime));
            let mut d = dprime;
            loop {
                d += 1;
                upper.push_next();
                let signs: Vec<Sign> = low_signs(&upper, &lower).into_iter().map(Sign::from).collect();
                if record(d, &signs) {
                    break d;
                }
            }
        }
        ScanMode::IntervalFast => {
            let lower = TopSymmetric::with_len(0, dprime as usize, u64::from(dprime));
            let targets: Vec<Rational> = (0..=dprime as usize).map(|j| lower.reciprocal_sum(j)).collect();
            let fast = FastSums::new(dprime, FAST_PREC, &targets);
            let mut state = fast.start();
            let mut d = 0;
            loop {
                d += 1;
                fast.push(&mut state, d);
                if d <= dprime {
                    continue;
                }
                let mut signs = Vec::with_capacity(dprime as usize);
                for j in 1..=dprime as usize {
                    let sign = match state[j].compare(&fast.targets[j]) {
                        Some(o) => Sign::from(o),
                        None => {
                            escalations += 1;
                            resolve_sign(dprime, d, j, &targets)
                        }
                    };
                    signs.push(sign);
                }
                if record(d, &signs) {
                    break d;
                }
            }
        }
    };
    ScanReport {
        dprime,
        mode,
        max_d_checked: max_d,
        all_at_most_one: failures.is_empty(),
        failures,
        escalations,
    }
}

/// Scans every `d'` in the range, in parallel; results come back in
/// increasing `d'` regardless of the worker count.
pub fn scan_dprime_range(dprimes: std::ops::RangeInclusive<u32>, mode: ScanMode) -> Vec<ScanReport> {
    let list: Vec<u32> = dprimes.collect();
    crate::gflinalg::with_pool(|| list.par_iter().map(|&dp| scan_dprime(dp, mode)).collect())
}

/// Running enclosures of `e_j(1/(d'+1), ..., 1/(d'+d))` for `j <= d'`.
struct FastSums {
    dprime: u32,
    prec: u64,
    targets: Vec<DyadicInterval>,
}

impl FastSums {
    fn new(dprime: u32, prec: u64, exact_targets: &[Rational]) -> Self {
        FastSums {
            dprime,
            prec,
            targets: exact_targets
                .iter()
                .map(|q| DyadicInterval::from_rational(q, prec))
                .collect(),
        }
    }

    fn start(&self) -> Vec<DyadicInterval> {
        let mut s = vec![DyadicInterval::zero(); self.dprime as usize + 1];
        s[0] = DyadicInterval::one();
        s
    }

    /// Includes the element `1/(d' + d)`.
    fn push(&self, state: &mut [DyadicInterval], d: u32) {
        let a = u64::from(self.dprime) + u64::from(d);
        for j in (1..state.len()).rev() {
            let next = state[j].add_div(&state[j - 1], a, self.prec);
            state[j] = next;
        }
    }
}

/// Sign of coefficient `j` of `g_{d,d'}` after the base-precision enclosure
/// overlapped the target: retry at doubled precision, then exactly.
fn resolve_sign(dprime: u32, d: u32, j: usize, targets: &[Rational]) -> Sign {
    let mut prec = FAST_PREC * 2;
    while prec <= FAST_PREC_MAX {
        let fast = FastSums::new(dprime, prec, targets);
        let mut state = fast.start();
        for k in 1..=d {
            fast.push(&mut state, k);
        }
        if let Some(o) = state[j].compare(&fast.targets[j]) {
            return o.into();
        }
        prec *= 2;
    }
    let upper = TopSymmetric::with_len(u64::from(dprime), j, u64::from(d));
    upper.reciprocal_sum(j).cmp(&targets[j]).into()
}
