//! Valuation histograms and their truncated series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{LaurentExpr, Rational};
use crate::error::{Error, Result};

/// A valuation vector; `None` marks a valuation `>= m`.
pub type Cell = Vec<Option<i32>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationHistogram {
    pub p: u64,
    pub m: u32,
    /// Residue field cardinality of the group's ring (`p` or `p^2`).
    pub residue_size: u64,
    pub counts: BTreeMap<Cell, u128>,
    pub total: u128,
}

impl ValuationHistogram {
    pub fn empty(p: u64, m: u32, residue_size: u64, total: u128) -> Self {
        ValuationHistogram { p, m, residue_size, counts: BTreeMap::new(), total }
    }

    pub fn add(&mut self, cell: Cell, count: u128) {
        if count > 0 {
            *self.counts.entry(cell).or_insert(0) += count;
        }
    }

    /// Pointwise sum; associative and commutative.
    pub fn merge(mut self, other: &Self) -> Self {
        for (c, &k) in &other.counts {
            self.add(c.clone(), k);
        }
        self
    }

    pub fn mass(&self) -> u128 {
        self.counts.values().sum()
    }

    pub fn is_complete(&self) -> bool {
        self.mass() == self.total
    }

    pub fn rank(&self) -> usize {
        self.counts.keys().next().map_or(0, |c| c.len())
    }

    pub fn is_determined(cell: &Cell) -> bool {
        cell.iter().all(|v| v.is_some())
    }

    pub fn undetermined_mass(&self) -> u128 {
        self.counts.iter().filter(|(c, _)| !Self::is_determined(c)).map(|(_, k)| k).sum()
    }

    /// Collapses to level `level < m`: valuations `>= level` become `None`,
    /// except in `exact_slots`, which are never truncated. Counts are
    /// rescaled to the group order `total` of the lower level.
    pub fn push_down(&self, level: u32, exact_slots: &[usize], total: u128) -> Result<Self> {
        let bad = || Error::UnsupportedCase("push-down total does not divide".into());
        if total == 0 || !self.total.is_multiple_of(total) {
            return Err(bad());
        }
        let factor = self.total / total;
        let mut out = Self::empty(self.p, level, self.residue_size, total);
        for (cell, &k) in &self.counts {
            let c: Cell = cell
                .iter()
                .enumerate()
                .map(|(i, v)| match v {
                    Some(x) if exact_slots.contains(&i) || *x < level as i32 => Some(*x),
                    _ => None,
                })
                .collect();
            out.add(c, k);
        }
        for k in out.counts.values_mut() {
            if *k % factor != 0 {
                return Err(bad());
            }
            *k /= factor;
        }
        Ok(out)
    }

    /// Shifts every determined valuation in slot `i` by `shift[i]`.
    pub fn shifted(&self, shift: &[i32]) -> Self {
        let mut out = Self::empty(self.p, self.m, self.residue_size, self.total);
        for (cell, &k) in &self.counts {
            let c = cell.iter().zip(shift).map(|(v, s)| v.map(|x| x + s)).collect();
            out.add(c, k);
        }
        out
    }
}

/// Truncated series in `u_i = q^{-s_i}` plus the undetermined tail mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistogramSeries {
    /// Variables `u_1..u_n` in the `x` slots; the base slot is unused.
    pub series: LaurentExpr,
    pub tail: Rational,
}

pub fn histogram_series(h: &ValuationHistogram) -> HistogramSeries {
    let n = h.rank();
    let total = BigInt::from(h.total);
    let mut series = LaurentExpr::zero(n);
    let mut tail = Rational::from_integer(0.into());
    for (cell, &k) in &h.counts {
        let w = Rational::new(BigInt::from(k), total.clone());
        if ValuationHistogram::is_determined(cell) {
            let mut exps = vec![0i32; n + 1];
            for (i, v) in cell.iter().enumerate() {
                exps[i + 1] = v.expect("determined");
            }
            series = &series + &LaurentExpr::monomial(exps, w);
        } else {
            tail += w;
        }
    }
    HistogramSeries { series, tail }
}

/// `|GL_n(R/p^m)|` where the residue field has `q` elements.
pub fn group_order(n: usize, q: u64, m: u32) -> Result<u128> {
    let q = q as u128;
    let mut acc: u128 = 1;
    let qn = q.checked_pow(n as u32).ok_or_else(overflow)?;
    for i in 0..n as u32 {
        acc = acc.checked_mul(qn - q.pow(i)).ok_or_else(overflow)?;
    }
    let lift = q.checked_pow((n * n) as u32 * (m - 1)).ok_or_else(overflow)?;
    acc.checked_mul(lift).ok_or_else(overflow)
}

fn overflow() -> Error {
    Error::UnsupportedCase("group order overflows u128".into())
}

#[derive(Serialize, Deserialize)]
struct Repr {
    p: u64,
    m: u32,
    residue_size: u64,
    total: String,
    counts: Vec<(Vec<Option<i32>>, String)>,
}

impl Serialize for ValuationHistogram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            p: self.p,
            m: self.m,
            residue_size: self.residue_size,
            total: self.total.to_string(),
            counts: self.counts.iter().map(|(c, k)| (c.clone(), k.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ValuationHistogram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = Repr::deserialize(d)?;
        let parse = |s: &str| s.parse::<u128>().map_err(D::Error::custom);
        let mut counts = BTreeMap::new();
        for (c, k) in r.counts {
            counts.insert(c, parse(&k)?);
        }
        Ok(ValuationHistogram { p: r.p, m: r.m, residue_size: r.residue_size, counts, total: parse(&r.total)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn group_orders() {
        assert_eq!(group_order(2, 3, 1).unwrap(), 48);
        assert_eq!(group_order(2, 3, 2).unwrap(), 48 * 81);
        assert_eq!(group_order(1, 9, 3).unwrap(), 8 * 81);
        assert_eq!(group_order(3, 3, 1).unwrap(), 26 * 24 * 18);
    }

    #[test]
    fn series_and_tail() {
        let mut h = ValuationHistogram::empty(3, 1, 3, 48);
        h.add(vec![Some(0), Some(0)], 48);
        let s = histogram_series(&h);
        assert!(s.series.is_one());
        assert_eq!(s.tail, rat(0, 1));

        let mut h = ValuationHistogram::empty(3, 1, 3, 10);
        h.add(vec![Some(0), Some(1)], 6);
        h.add(vec![None, Some(1)], 4);
        let s = histogram_series(&h);
        assert_eq!(s.series.coefficient(&[0, 0, 1]), rat(3, 5));
        assert_eq!(s.tail, rat(2, 5));
    }

    #[test]
    fn serde_roundtrip() {
        let mut h = ValuationHistogram::empty(3, 2, 9, 1u128 << 100);
        h.add(vec![Some(0), None], 1u128 << 99);
        h.add(vec![Some(1), Some(2)], 1u128 << 99);
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.contains("\"633825300114114700748351602688\""));
        let back: ValuationHistogram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn push_down_collapses() {
        let mut h = ValuationHistogram::empty(3, 2, 3, 10);
        h.add(vec![Some(0), Some(3)], 4);
        h.add(vec![Some(1), Some(3)], 6);
        let d = h.push_down(1, &[1], 5).unwrap();
        assert_eq!(d.counts[&vec![None, Some(3)]], 3);
        assert_eq!(d.counts[&vec![Some(0), Some(3)]], 2);
    }
}
