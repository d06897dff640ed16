//! Randomized rank checks: sample forms over `F_p`, expand the products
//! `f_i * m_j` in the monomial basis and test for full rank.
//!
//! A full-rank sample over `F_p` means some maximal minor is nonzero mod
//! `p`, hence nonzero over the integers, so the statement holds for generic
//! forms in characteristic zero. A rank-deficient sample proves nothing.

mod split;

pub use split::{check_split, reproduce_table1, split_plan, table1_plan, SplitDims, SplitPlan, TABLE1};

use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_degrees, Error, Result};
use crate::gflinalg::{with_pool, FFMatrix, FieldSampler, PrimeField};
use crate::ring::{monomial_basis, rs_params, DegreeBasis, Monomial, RingParams};

/// Trials used when the caller does not say.
pub const DEFAULT_TRIALS: u32 = 3;

/// Forms of one degree, each a coefficient vector over
/// `monomial_basis(n, degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSet {
    pub n: u32,
    pub degree: u32,
    pub field: PrimeField,
    pub forms: Vec<Vec<u32>>,
}

impl FormSet {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

fn draw_forms(sampler: &mut FieldSampler, n: u32, degree: u32, count: usize, field: PrimeField) -> FormSet {
    let len = monomial_basis(n, degree).len();
    let forms = (0..count)
        .map(|_| {
            let mut v = vec![0; len];
            sampler.fill(&mut v);
            v
        })
        .collect();
    FormSet {
        n,
        degree,
        field,
        forms,
    }
}

/// `count` forms with i.i.d. uniform coefficients. The forms are drawn in
/// order from one stream, so a smaller `count` gives a prefix.
pub fn sample_forms(n: u32, degree: u32, count: usize, field: PrimeField, seed: u64) -> FormSet {
    let mut sampler = FieldSampler::new(field.modulus(), seed);
    draw_forms(&mut sampler, n, degree, count, field)
}

/// Which products become rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    /// `f_i m_j` for `i < r` and all `j`, plus `f_r m_1, ..., f_r m_s`.
    Gcase { r: usize, s: usize },
    /// Every `f_i m_j`.
    All,
}

const DROPPED: u32 = u32::MAX;

/// Column of `basis[k] * mults[j]` at `k * mults.len() + j`, or `DROPPED`.
fn product_table(basis: &DegreeBasis, mults: &[Monomial], column: impl Fn(&Monomial) -> Option<usize>) -> Vec<u32> {
    let mut table = Vec::with_capacity(basis.len() * mults.len());
    for b in basis.iter() {
        for m in mults {
            table.push(column(&b.mul(m)).map_or(DROPPED, |c| c as u32));
        }
    }
    table
}

/// One row per `(form, multiplier)` pair.
fn assemble(
    field: PrimeField,
    forms: &[Vec<u32>],
    table: &[u32],
    num_mults: usize,
    specs: &[(usize, usize)],
    cols: usize,
) -> FFMatrix {
    let mut data = vec![0u32; specs.len() * cols];
    if cols > 0 {
        with_pool(|| {
            data.par_chunks_mut(cols).zip(specs.par_iter()).for_each(|(row, &(i, j))| {
                for (k, &c) in forms[i].iter().enumerate() {
                    let col = table[k * num_mults + j];
                    if col != DROPPED {
                        row[col as usize] = c;
                    }
                }
            });
        });
    }
    FFMatrix::from_data(field, specs.len(), cols, data).expect("entries come from reduced forms")
}

/// Rows `f_i * m_j` expanded over `monomial_basis(n, d + d')`.
pub fn build_product_matrix(forms: &FormSet, dprime: u32, selection: Selection) -> Result<FFMatrix> {
    check_degrees(forms.degree, dprime)?;
    let mults = monomial_basis(forms.n, dprime);
    let specs: Vec<(usize, usize)> = match selection {
        Selection::Gcase { r, s } => {
            if forms.len() != r {
                return Err(Error::SelectionMismatch(format!(
                    "gcase with r = {r} needs {r} forms, got {}",
                    forms.len()
                )));
            }
            if r == 0 || s == 0 || s > mults.len() {
                return Err(Error::SelectionMismatch(format!(
                    "need r >= 1 and 1 <= s <= {}, got r = {r}, s = {s}",
                    mults.len()
                )));
            }
            let mut v: Vec<(usize, usize)> = (0..r - 1).flat_map(|i| (0..mults.len()).map(move |j| (i, j))).collect();
            v.extend((0..s).map(|j| (r - 1, j)));
            v
        }
        Selection::All => (0..forms.len())
            .flat_map(|i| (0..mults.len()).map(move |j| (i, j)))
            .collect(),
    };
    let basis = monomial_basis(forms.n, forms.degree);
    let target = monomial_basis(forms.n, forms.degree + dprime);
    let table = product_table(&basis, &mults.monomials, |m| target.index_of(m));
    Ok(assemble(forms.field, &forms.forms, &table, mults.len(), &specs, target.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Verified,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Verified => "verified",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

/// One full-rank test inside a trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub name: String,
    pub trial: u32,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub full_rank: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: RingParams,
    pub prime: u32,
    pub seed: u64,
    pub trials: u32,
    /// Trials that ended without a full-rank result.
    pub failures: u32,
    pub outcome: Outcome,
    /// Dimensions and rank of the last matrix tested.
    pub matrix_dims: (usize, usize),
    pub rank: usize,
    pub stages: Vec<StageReport>,
    pub split: Option<SplitPlan>,
    pub elapsed_ms: u64,
}

/// Seed of trial `k`; trial 0 uses the caller's seed unchanged.
pub(crate) fn trial_seed(seed: u64, trial: u32) -> u64 {
    seed.wrapping_add(u64::from(trial).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub(crate) fn usize_of(v: &num_bigint::BigUint, what: &str) -> Result<usize> {
    v.to_usize()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} = {v} is too large")))
}

pub(crate) fn run_stage(name: &str, trial: u32, m: FFMatrix) -> StageReport {
    let (rows, cols) = (m.rows(), m.cols());
    let rank = m.into_rank_profile().rank;
    StageReport {
        name: name.to_string(),
        trial,
        rows,
        cols,
        rank,
        full_rank: rank == rows && rank == cols,
    }
}

/// Samples `r` forms of degree `d` and tests whether the generic product set
/// `{f_i m_j}_{i<r} ∪ {f_r m_1..m_s}` is a basis of `R_{d+d'}`.
pub fn check_gcase(n: u32, d: u32, dprime: u32, p: u64, seed: u64, trials: u32) -> Result<VerifyReport> {
    check_degrees(d, dprime)?;
    let field = PrimeField::new(p)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let start = Instant::now();
    let params = rs_params(n, d, dprime);
    let r = usize_of(&params.r, "r")?;
    let s = usize_of(&params.s, "s")?;
    let mut stages = Vec::new();
    let mut failures = 0;
    let mut outcome = Outcome::Inconclusive;
    for trial in 0..trials {
        let forms = sample_forms(n, d, r, field, trial_seed(seed, trial));
        let m = build_product_matrix(&forms, dprime, Selection::Gcase { r, s })?;
        let stage = run_stage("gcase", trial, m);
        let ok = stage.full_rank;
        stages.push(stage);
        if ok {
            outcome = Outcome::Verified;
            break;
        }
        failures += 1;
    }
    let last = stages.last().expect("at least one trial ran");
    Ok(VerifyReport {
        prime: field.modulus(),
        seed,
        trials,
        failures,
        outcome,
        matrix_dims: (last.rows, last.cols),
        rank: last.rank,
        stages: stages.clone(),
        split: None,
        params,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Hilbert function of `R / (generators)` in degrees `0..=max_deg`,
/// computed as `dim R_e - rank` of all products landing in degree `e`.
pub fn hilbert_function(n: u32, generators: &[FormSet], max_deg: u32) -> Result<Vec<u64>> {
    let field = match generators.first() {
        Some(g) => g.field,
        None => return Ok((0..=max_deg).map(|e| monomial_basis(n, e).len() as u64).collect()),
    };
    if generators.iter().any(|g| g.n != n || g.field != field) {
        return Err(Error::InvalidArgument("generators must share n and the field".into()));
    }
    let mut out = Vec::with_capacity(max_deg as usize + 1);
    for e in 0..=max_deg {
        let target = monomial_basis(n, e);
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for g in generators.iter().filter(|g| g.degree <= e) {
            let basis = monomial_basis(n, g.degree);
            let mults = monomial_basis(n, e - g.degree);
            let table = product_table(&basis, &mults.monomials, |m| target.index_of(m));
            let specs: Vec<(usize, usize)> = (0..g.len())
                .flat_map(|i| (0..mults.len()).map(move |j| (i, j)))
                .collect();
            let m = assemble(field, &g.forms, &table, mults.len(), &specs, target.len());
            rows.extend((0..m.rows()).map(|i| m.row(i).to_vec()));
        }
        let rank = if rows.is_empty() {
            0
        } else {
            FFMatrix::from_rows(field, &rows)?.rank()
        };
        out.push((target.len() - rank) as u64);
    }
    Ok(out)
}
