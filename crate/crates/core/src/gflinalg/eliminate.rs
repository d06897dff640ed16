//! Blocked Gaussian elimination over `F_p` with delayed reduction.
//!
//! Columns are processed in panels of up to [`MAX_PANEL`] columns. Inside a
//! panel the pivots are found by ordinary elimination restricted to the
//! panel columns, and the multipliers are recorded. The trailing columns of
//! every row are then updated once per panel: the products of the panel's
//! pivot rows are summed in `u64` accumulators and reduced mod `p` once.
//! The panel width is capped so that `(p-1) + width * (p-1)^2` fits in
//! `u64`.
//!
//! Pivoting takes the first row with a nonzero entry, scanning columns left
//! to right, so the pivot columns are the lexicographically first maximal
//! independent set of columns. Rows below the panel are updated
//! independently of each other; the result does not depend on how they
//! are split across workers.

use rayon::prelude::*;

use super::RankProfile;

const MAX_PANEL: usize = 64;

fn panel_width(p: u32) -> usize {
    let pm1 = u64::from(p - 1);
    let budget = (u64::MAX - pm1) / (pm1 * pm1);
    usize::try_from(budget).unwrap_or(usize::MAX).clamp(1, MAX_PANEL)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let p64 = u64::from(p);
    let (mut base, mut exp, mut acc) = (u64::from(a), p64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        exp >>= 1;
    }
    acc as u32
}

/// `row += sum_k mults[k] * pivots[k]`, reduced mod `p` at the end.
#[inline]
fn apply_panel(row: &mut [u32], mults: &[u32], pivots: &[&[u32]], acc: &mut Vec<u64>, p: u64) {
    if mults.iter().all(|&m| m == 0) {
        return;
    }
    acc.clear();
    acc.extend(row.iter().map(|&v| u64::from(v)));
    for (&m, piv) in mults.iter().zip(pivots) {
        if m == 0 {
            continue;
        }
        let m = u64::from(m);
        for (a, &y) in acc.iter_mut().zip(piv.iter()) {
            *a = a.wrapping_add(m.wrapping_mul(u64::from(y)));
        }
    }
    for (x, &a) in row.iter_mut().zip(acc.iter()) {
        *x = (a % p) as u32;
    }
}

pub(super) fn rank_profile_in_place(data: &mut [u32], rows: usize, cols: usize, p: u32) -> RankProfile {
    debug_assert_eq!(data.len(), rows * cols);
    let width = panel_width(p);
    let p64 = u64::from(p);
    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    let mut mult: Vec<u32> = Vec::new();
    let mut col = 0;

    while col < cols && rank < rows {
        let pend = (col + width).min(cols);
        let start = rank;
        mult.clear();
        mult.resize((rows - start) * width, 0);
        let mut found = 0;

        for c in col..pend {
            if rank == rows {
                break;
            }
            let Some(i) = (rank..rows).find(|&i| data[i * cols + c] != 0) else {
                continue;
            };
            if i != rank {
                let (upper, lower) = data.split_at_mut(i * cols);
                upper[rank * cols..(rank + 1) * cols].swap_with_slice(&mut lower[..cols]);
                let (mu, ml) = mult.split_at_mut((i - start) * width);
                mu[(rank - start) * width..(rank - start + 1) * width]
                    .swap_with_slice(&mut ml[..width]);
            }
            let inv = u64::from(inv_mod(data[rank * cols + c], p));
            let seg: Vec<u64> = data[rank * cols + c..rank * cols + pend]
                .iter()
                .map(|&v| u64::from(v))
                .collect();
            for i in rank + 1..rows {
                let a = data[i * cols + c];
                if a == 0 {
                    continue;
                }
                let m = u64::from(p - a) * inv % p64;
                mult[(i - start) * width + found] = m as u32;
                for (x, &y) in data[i * cols + c..i * cols + pend].iter_mut().zip(&seg) {
                    *x = ((u64::from(*x) + m * y) % p64) as u32;
                }
            }
            pivot_cols.push(c);
            found += 1;
            rank += 1;
        }

        if found > 0 && pend < cols {
            let (piv_block, rest) = data[start * cols..].split_at_mut(found * cols);
            let mut acc = Vec::with_capacity(cols - pend);
            // Pivot rows first, in order: row k needs the final rows 0..k.
            for k in 1..found {
                let (done, cur) = piv_block.split_at_mut(k * cols);
                let pivots: Vec<&[u32]> = (0..k).map(|j| &done[j * cols + pend..(j + 1) * cols]).collect();
                apply_panel(&mut cur[pend..cols], &mult[k * width..k * width + k], &pivots, &mut acc, p64);
            }
            let piv_block: &[u32] = piv_block;
            let pivots: Vec<&[u32]> = (0..found).map(|j| &piv_block[j * cols + pend..(j + 1) * cols]).collect();
            let tw = cols - pend;
            rest.par_chunks_mut(cols)
                .zip(mult[found * width..].par_chunks(width))
                .for_each_init(
                    || Vec::with_capacity(tw),
                    |acc, (row, m)| apply_panel(&mut row[pend..], &m[..found], &pivots, acc, p64),
                );
        }
        col = pend;
    }
    RankProfile { rank, pivot_cols }
}
