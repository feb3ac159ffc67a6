//! Exact enumeration of valuation histograms over `K_m`.
//!
//! Only the first `r` rows of `k` influence the invariants `f_1..f_{n-1}`
//! of `k.x`, and the top invariant satisfies `|f_n(k.x)| = |f_n(x)|` for every
//! unit `k`. So we enumerate `r`-tuples of rows that are independent modulo
//! `p`, weight each by the number of ways it completes to an element of
//! `K_m`, and read the top valuation off the point itself.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hall_littlewood::Partition;

use super::cases::{det, CaseRealization, IntMatrix};
use super::histogram::{group_order, Cell, ValuationHistogram};
use super::ring::{Elem, PAdicConfig, ResidueRing};

pub type ProgressFn = Arc<dyn Fn(u64, u64) + Send + Sync>;

#[derive(Clone)]
pub struct EnumOptions {
    /// Largest number of row tuples we are willing to visit.
    pub max_tuples: u128,
    /// Called with `(done, total)` counts of first rows.
    pub progress: Option<ProgressFn>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { max_tuples: 100_000_000, progress: None }
    }
}

impl std::fmt::Debug for EnumOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EnumOptions").field("max_tuples", &self.max_tuples).finish()
    }
}

pub fn valuation_histogram(case: &CaseRealization, lambda: &Partition, cfg: &PAdicConfig) -> Result<ValuationHistogram> {
    valuation_histogram_with(case, lambda, cfg, &EnumOptions::default())
}

/// Histogram at `pi^lambda`. Negative parts are handled by translating
/// `lambda` and shifting `v(f_i)` by `i` times the translation.
pub fn valuation_histogram_with(
    case: &CaseRealization,
    lambda: &Partition,
    cfg: &PAdicConfig,
    opts: &EnumOptions,
) -> Result<ValuationHistogram> {
    if lambda.len() != case.n {
        return Err(Error::BadLength { expected: case.n, got: lambda.len() });
    }
    let c = lambda.parts().last().copied().unwrap_or(0).min(0);
    let x = case.representative(&lambda.translate(-c), cfg.p)?;
    let h = histogram_at_point(case, &x, cfg, opts)?;
    if c == 0 {
        return Ok(h);
    }
    let shift: Vec<i32> = (1..=case.n).map(|i| c * case.degree(i)).collect();
    Ok(h.shifted(&shift))
}

/// Histogram of `(v(f_1(k.x)), ..., v(f_n(k.x)))` over `k` in `K_m`.
pub fn histogram_at_point(
    case: &CaseRealization,
    x: &IntMatrix,
    cfg: &PAdicConfig,
    opts: &EnumOptions,
) -> Result<ValuationHistogram> {
    case.check_config(cfg)?;
    case.validate_point(x)?;
    let n = case.n;
    let size = case.matrix_size();
    let ring = cfg.ring();
    let q = cfg.residue_size();
    let total = group_order(size, q, cfg.m)?;
    let top = case.top_valuation(x, cfg)?;
    let r = case.rows_for(n - 1);
    let mut hist = ValuationHistogram::empty(cfg.p, cfg.m, q, total);
    if r == 0 {
        hist.add(vec![Some(top)], total);
        return Ok(hist);
    }

    let row_count = (ring.size() as u128).pow(size as u32);
    let tuples = row_count.checked_pow(r as u32).unwrap_or(u128::MAX);
    if tuples > opts.max_tuples {
        return Err(Error::UnsupportedCase(format!(
            "{tuples} row tuples exceed the enumeration budget of {}",
            opts.max_tuples
        )));
    }
    let row_count = row_count as u64;
    let weight = completion_count(size, r, q, cfg.m)?;
    let xr = x.reduce(&ring);
    let field = ring.residue_field();
    let done = AtomicU64::new(0);

    let merged = (0..row_count)
        .into_par_iter()
        .fold(BTreeMap::<Cell, u128>::new, |mut acc, first| {
            let row = decode_row(&ring, first, size);
            if !ring.is_unit_vector(&row) {
                return acc;
            }
            let mut rows = vec![row];
            extend_rows(case, &ring, &field, &xr, row_count, size, r, top, &mut rows, &mut acc);
            let d = done.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(cb) = &opts.progress {
                if d.is_multiple_of(4096) || d == row_count {
                    cb(d, row_count);
                }
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (c, k) in b {
                *a.entry(c).or_insert(0) += k;
            }
            a
        });
    for (cell, k) in merged {
        hist.add(cell, k * weight);
    }
    debug_assert!(hist.is_complete());
    if hist.counts.keys().all(|c| c[..n - 1].iter().all(|v| v.is_none())) {
        return Err(Error::LevelTooSmall(cfg.m));
    }
    Ok(hist)
}

trait UnitVector {
    fn is_unit_vector(&self, v: &[Elem]) -> bool;
}

impl UnitVector for ResidueRing {
    fn is_unit_vector(&self, v: &[Elem]) -> bool {
        v.iter().any(|&e| self.is_unit(e))
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_rows(
    case: &CaseRealization,
    ring: &ResidueRing,
    field: &ResidueRing,
    x: &[Vec<Elem>],
    row_count: u64,
    size: usize,
    r: usize,
    top: i32,
    rows: &mut Vec<Vec<Elem>>,
    acc: &mut BTreeMap<Cell, u128>,
) {
    if rows.len() == r {
        let y = case.act(ring, rows, x);
        let y: Vec<Vec<Elem>> = y.into_iter().map(|row| row[..r].to_vec()).collect();
        let mut cell: Cell = case
            .invariants(ring, &y, case.n - 1)
            .into_iter()
            .map(|f| ring.val(f).map(|v| v as i32))
            .collect();
        cell.push(Some(top));
        *acc.entry(cell).or_insert(0) += 1;
        return;
    }
    for idx in 0..row_count {
        let row = decode_row(ring, idx, size);
        rows.push(row);
        if independent_mod_p(field, rows) {
            extend_rows(case, ring, field, x, row_count, size, r, top, rows, acc);
        }
        rows.pop();
    }
}

fn decode_row(ring: &ResidueRing, mut idx: u64, size: usize) -> Vec<Elem> {
    let s = ring.size();
    (0..size)
        .map(|_| {
            let e = ring.element(idx % s);
            idx /= s;
            e
        })
        .collect()
}

/// Whether the rows are linearly independent over the residue field.
fn independent_mod_p(field: &ResidueRing, rows: &[Vec<Elem>]) -> bool {
    let mut m: Vec<Vec<Elem>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| Elem { a: e.a % field.p, b: e.b % field.p }).collect())
        .collect();
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| !field.is_zero(m[i][c])) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = field.inv(m[rank][c]).expect("nonzero in a field");
        for i in 0..m.len() {
            if i != rank && !field.is_zero(m[i][c]) {
                let f = field.mul(m[i][c], inv);
                for j in 0..cols {
                    let t = field.mul(f, m[rank][j]);
                    m[i][j] = field.sub(m[i][j], t);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            return true;
        }
    }
    rank == m.len()
}

/// Number of ways to complete `r` rows, independent mod `p`, to an element
/// of `GL_N(R/p^m)`.
pub fn completion_count(size: usize, r: usize, q: u64, m: u32) -> Result<u128> {
    let q = q as u128;
    let overflow = || Error::UnsupportedCase("completion count overflows".into());
    let qn = q.checked_pow(size as u32).ok_or_else(overflow)?;
    let mut w: u128 = 1;
    for j in r..size {
        w = w.checked_mul(qn - q.pow(j as u32)).ok_or_else(overflow)?;
    }
    let lifts = q.checked_pow(size as u32 * (m - 1) * (size - r) as u32).ok_or_else(overflow)?;
    w.checked_mul(lifts).ok_or_else(overflow)
}

/// Plain enumeration of every matrix over `R/p^m`, keeping the invertible
/// ones and computing all invariants modulo `p^m`. Used to cross-check the
/// fibered enumeration on small cases.
pub fn brute_force_histogram(case: &CaseRealization, x: &IntMatrix, cfg: &PAdicConfig) -> Result<ValuationHistogram> {
    case.check_config(cfg)?;
    let size = case.matrix_size();
    let ring = cfg.ring();
    let entries = size * size;
    let count = (ring.size() as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    if count > 50_000_000 {
        return Err(Error::UnsupportedCase("brute force too large".into()));
    }
    let xr = x.reduce(&ring);
    let total = group_order(size, cfg.residue_size(), cfg.m)?;
    let merged = (0..count as u64)
        .into_par_iter()
        .fold(BTreeMap::<Cell, u128>::new, |mut acc, idx| {
            let flat = decode_row(&ring, idx, entries);
            let g: Vec<Vec<Elem>> = flat.chunks(size).map(|c| c.to_vec()).collect();
            if !ring.is_unit(det(&ring, &g)) {
                return acc;
            }
            let y = case.act(&ring, &g, &xr);
            let cell = case
                .invariants(&ring, &y, case.n)
                .into_iter()
                .map(|f| ring.val(f).map(|v| v as i32))
                .collect();
            *acc.entry(cell).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (c, k) in b {
                *a.entry(c).or_insert(0) += k;
            }
            a
        });
    let mut h = ValuationHistogram::empty(cfg.p, cfg.m, cfg.residue_size(), total);
    for (c, k) in merged {
        h.add(c, k);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case::CaseTag;

    fn lam(p: &[i32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_rank_two_residue_field() {
        let c = CaseRealization::new(CaseTag::Symmetric, 2).unwrap();
        let cfg = c.config(3, 1).unwrap();
        let h = valuation_histogram(&c, &lam(&[0, 0]), &cfg).unwrap();
        assert_eq!(h.total, 48);
        assert_eq!(h.counts.len(), 1);
        assert_eq!(h.counts[&vec![Some(0), Some(0)]], 48);
    }

    #[test]
    fn fibered_matches_brute_force() {
        for (tag, n, m, parts) in [
            (CaseTag::Symmetric, 2, 1, vec![0, 0]),
            (CaseTag::Symmetric, 2, 2, vec![1, 0]),
            (CaseTag::Hermitian, 2, 1, vec![0, 0]),
            (CaseTag::Symmetric, 2, 2, vec![0, 0]),
        ] {
            let c = CaseRealization::new(tag, n).unwrap();
            let cfg = c.config(3, m).unwrap();
            let x = c.representative(&lam(&parts), 3).unwrap();
            let fib = histogram_at_point(&c, &x, &cfg, &EnumOptions::default()).unwrap();
            let brute = brute_force_histogram(&c, &x, &cfg).unwrap();
            assert_eq!(fib, brute, "{tag} {parts:?} m={m}");
        }
    }

    #[test]
    fn rank_one_cases_are_single_cells() {
        for tag in [CaseTag::Alternating, CaseTag::Hermitian, CaseTag::Symmetric] {
            let c = CaseRealization::new(tag, 1).unwrap();
            for m in 1..=3 {
                let cfg = c.config(3, m).unwrap();
                let h = valuation_histogram(&c, &lam(&[2]), &cfg).unwrap();
                assert_eq!(h.counts.len(), 1);
                assert_eq!(h.counts[&vec![Some(2)]], h.total);
            }
        }
    }

    #[test]
    fn negative_parts_shift() {
        let c = CaseRealization::new(CaseTag::Hermitian, 2).unwrap();
        let cfg = c.config(3, 1).unwrap();
        let h0 = valuation_histogram(&c, &lam(&[1, 0]), &cfg).unwrap();
        let h1 = valuation_histogram(&c, &lam(&[0, -1]), &cfg).unwrap();
        assert_eq!(h0.shifted(&[-1, -2]), h1);
    }

    #[test]
    fn budget_is_enforced() {
        let c = CaseRealization::new(CaseTag::Symmetric, 2).unwrap();
        let cfg = c.config(3, 2).unwrap();
        let opts = EnumOptions { max_tuples: 10, progress: None };
        assert!(matches!(
            valuation_histogram_with(&c, &lam(&[0, 0]), &cfg, &opts),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn completion_counts() {
        // first rows of GL_2(F_3): 8, completions 6
        assert_eq!(completion_count(2, 1, 3, 1).unwrap(), 6);
        assert_eq!(completion_count(2, 0, 3, 1).unwrap(), 48);
    }
}
