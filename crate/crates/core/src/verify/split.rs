//! Verifying a product basis in `n` variables from two smaller checks.
//!
//! Let `R' = k[x_1..x_{n'}]`. Stage 1 finds `l` forms `f_1..f_l` in `R'_d`
//! whose products with the degree-`d'` monomials of `R'` form a basis of
//! `R'_{d+d'}`. Stage 2 keeps those forms, adds `f_{l+1}..f_r` in `R_d`, and
//! checks that the remaining products form a basis of `R_{d+d'} / R'_{d+d'}`.
//! Both together give a basis of `R_{d+d'}` of the generic shape.

use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{
    assemble, draw_forms, product_table, run_stage, trial_seed, usize_of, Outcome, StageReport,
    VerifyReport, DEFAULT_TRIALS,
};
use crate::error::{check_degrees, Error, Result};
use crate::gflinalg::{FieldSampler, PrimeField};
use crate::ring::{dim_graded, monomial_basis, rs_params, Monomial, RingParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDims {
    pub sub_dprime: u64,
    pub sub_ddprime: u64,
    pub dim_dprime: u64,
    pub dim_ddprime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub n: u32,
    pub nprime: u32,
    pub d: u32,
    pub dprime: u32,
    /// `dim R'_{d+d'} / dim R'_{d'}`.
    pub l: u64,
    pub p: u32,
    pub dims: SplitDims,
    /// `dim R_{d+d'} - dim R'_{d+d'}`.
    pub quotient_dim: u64,
    pub r: u64,
    pub s: u64,
}

impl SplitPlan {
    /// Row count of the stage-2 matrix.
    pub fn stage2_rows(&self) -> u64 {
        let extra = self.dims.dim_dprime - self.dims.sub_dprime;
        self.l * extra + (self.r - 1 - self.l) * self.dims.dim_dprime + self.s
    }

    pub fn params(&self) -> RingParams {
        rs_params(self.n, self.d, self.dprime)
    }
}

fn u64_of(v: &num_bigint::BigUint, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} = {v} is too large")))
}

pub fn split_plan(n: u32, d: u32, dprime: u32, nprime: u32, p: u64) -> Result<SplitPlan> {
    check_degrees(d, dprime)?;
    if nprime == 0 || nprime >= n {
        return Err(Error::InvalidSplit(format!("need 1 <= n' < n, got n' = {nprime}, n = {n}")));
    }
    let field = PrimeField::new(p)?;
    let sub_dprime = dim_graded(nprime, dprime);
    let sub_ddprime = dim_graded(nprime, d + dprime);
    if &sub_ddprime % &sub_dprime != num_bigint::BigUint::from(0u32) {
        return Err(Error::NotDivisible {
            numerator: sub_ddprime.to_string(),
            denominator: sub_dprime.to_string(),
        });
    }
    let params = rs_params(n, d, dprime);
    let dims = SplitDims {
        sub_dprime: u64_of(&sub_dprime, "dim R'_{d'}")?,
        sub_ddprime: u64_of(&sub_ddprime, "dim R'_{d+d'}")?,
        dim_dprime: u64_of(&params.dim_dprime, "dim R_{d'}")?,
        dim_ddprime: u64_of(&params.dim_ddprime, "dim R_{d+d'}")?,
    };
    let l = dims.sub_ddprime / dims.sub_dprime;
    let r = u64_of(&params.r, "r")?;
    let s = u64_of(&params.s, "s")?;
    if l >= r {
        return Err(Error::InvalidSplit(format!("l = {l} must be below r = {r}")));
    }
    Ok(SplitPlan {
        n,
        nprime,
        d,
        dprime,
        l,
        p: field.modulus(),
        quotient_dim: dims.dim_ddprime - dims.sub_ddprime,
        dims,
        r,
        s,
    })
}

/// Pads a monomial in `n'` variables with zero exponents.
fn embed(m: &Monomial, n: u32) -> Monomial {
    let mut e = m.exponents.clone();
    e.resize(n as usize, 0);
    Monomial::new(e)
}

/// Runs stage 1 and, if it succeeds, stage 2 in each trial until both
/// succeed together.
pub fn check_split(plan: &SplitPlan, seed: u64, trials: u32) -> Result<VerifyReport> {
    // Re-derive everything so a hand-edited plan cannot skip a check.
    let fresh = split_plan(plan.n, plan.d, plan.dprime, plan.nprime, u64::from(plan.p))?;
    if fresh != *plan {
        return Err(Error::InvalidSplit("plan does not match its parameters".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let start = Instant::now();
    let field = PrimeField::new(u64::from(plan.p))?;
    let (n, np, d, dp) = (plan.n, plan.nprime, plan.d, plan.dprime);
    let l = usize_of(&plan.l.into(), "l")?;
    let r = usize_of(&plan.r.into(), "r")?;
    let s = usize_of(&plan.s.into(), "s")?;

    // Stage 1 shapes: all products inside R'.
    let sub_basis = monomial_basis(np, d);
    let sub_mults = monomial_basis(np, dp);
    let sub_target = monomial_basis(np, d + dp);
    let sub_table = product_table(&sub_basis, &sub_mults.monomials, |m| sub_target.index_of(m));
    let sub_specs: Vec<(usize, usize)> = (0..l).flat_map(|i| (0..sub_mults.len()).map(move |j| (i, j))).collect();

    // Stage 2 shapes: multipliers ordered m' (inside R') then m'', columns
    // restricted to monomials outside R'.
    let basis = monomial_basis(n, d);
    let full_mults = monomial_basis(n, dp);
    let npu = np as usize;
    let mut mults: Vec<Monomial> = full_mults.iter().filter(|m| m.only_first_vars(npu)).cloned().collect();
    let sub_count = mults.len();
    mults.extend(full_mults.iter().filter(|m| !m.only_first_vars(npu)).cloned());
    let target = monomial_basis(n, d + dp);
    let mut quotient_col = vec![None; target.len()];
    let mut next = 0;
    for (i, m) in target.iter().enumerate() {
        if !m.only_first_vars(npu) {
            quotient_col[i] = Some(next);
            next += 1;
        }
    }
    let table = product_table(&basis, &mults, |m| target.index_of(m).and_then(|i| quotient_col[i]));
    let mut specs: Vec<(usize, usize)> = Vec::with_capacity(plan.stage2_rows() as usize);
    for i in 0..l {
        specs.extend((sub_count..mults.len()).map(|j| (i, j)));
    }
    for i in l..r - 1 {
        specs.extend((0..mults.len()).map(|j| (i, j)));
    }
    specs.extend((0..s).map(|j| (r - 1, j)));
    let embed_index: Vec<usize> = sub_basis
        .iter()
        .map(|m| basis.index_of(&embed(m, n)).expect("sub-ring monomial is in the basis"))
        .collect();

    let mut stages: Vec<StageReport> = Vec::new();
    let mut failures = 0;
    let mut outcome = Outcome::Inconclusive;
    for trial in 0..trials {
        let mut sampler = FieldSampler::new(field.modulus(), trial_seed(seed, trial));
        let sub_forms = draw_forms(&mut sampler, np, d, l, field);
        let m1 = assemble(field, &sub_forms.forms, &sub_table, sub_mults.len(), &sub_specs, sub_target.len());
        let s1 = run_stage("stage1-subring", trial, m1);
        let ok1 = s1.full_rank;
        stages.push(s1);
        if !ok1 {
            failures += 1;
            continue;
        }
        let mut forms: Vec<Vec<u32>> = sub_forms
            .forms
            .iter()
            .map(|f| {
                let mut v = vec![0u32; basis.len()];
                for (k, &c) in f.iter().enumerate() {
                    v[embed_index[k]] = c;
                }
                v
            })
            .collect();
        forms.extend(draw_forms(&mut sampler, n, d, r - l, field).forms);
        let m2 = assemble(field, &forms, &table, mults.len(), &specs, next);
        let s2 = run_stage("stage2-quotient", trial, m2);
        let ok2 = s2.full_rank;
        stages.push(s2);
        if ok2 {
            outcome = Outcome::Verified;
            break;
        }
        failures += 1;
    }
    let last = stages.last().expect("at least one trial ran");
    Ok(VerifyReport {
        params: plan.params(),
        prime: plan.p,
        seed,
        trials,
        failures,
        outcome,
        matrix_dims: (last.rows, last.cols),
        rank: last.rank,
        stages: stages.clone(),
        split: Some(plan.clone()),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `(n, n', p, l)` rows of the published parameter table for `d = 3, d' = 2`.
pub const TABLE1: [(u32, u32, u64, u64); 6] = [
    (16, 13, 11, 68),
    (17, 13, 11, 68),
    (18, 16, 11, 114),
    (19, 17, 5, 133),
    (20, 18, 5, 154),
    (21, 18, 5, 154),
];

/// The plan for one table row, with the published `l` for comparison.
pub fn table1_plan(row_n: u32) -> Result<(SplitPlan, u64)> {
    let &(n, np, p, l) = TABLE1
        .iter()
        .find(|row| row.0 == row_n)
        .ok_or(Error::UnknownRow(row_n))?;
    Ok((split_plan(n, 3, 2, np, p)?, l))
}

/// Runs both stages for one table row.
pub fn reproduce_table1(row_n: u32, seed: u64) -> Result<VerifyReport> {
    let (plan, _) = table1_plan(row_n)?;
    check_split(&plan, seed, DEFAULT_TRIALS)
}
