//! Matrix realizations of the three cases: the acting group, the point
//! `x`, and the relative invariants `f_i`.
//!
//! * symmetric: `GL_n(O)` on symmetric `x`, `g.x = g x g^t`, `f_i = d_i`;
//! * alternating: `GL_2n(O)` on alternating `x`, `g.x = g x g^t`,
//!   `f_i = pf_i` (Pfaffian of the leading `2i x 2i` block);
//! * hermitian: `GL_n(O')` on hermitian `x`, `g.x = g x g^*`, `f_i = d_i`.

use crate::case::CaseTag;
use crate::error::{Error, Result};
use crate::hall_littlewood::Partition;

use super::ring::{Elem, Extension, PAdicConfig, ResidueRing};

/// An element `a + b*sqrt(rho)` of the integers of the extension (or of `O`
/// when `b = 0`), with integer coordinates.
pub type IntElem = (i128, i128);

/// Integral matrix point, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub rows: Vec<Vec<IntElem>>,
}

impl IntMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, ring: &ResidueRing) -> Vec<Vec<Elem>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(a, b)| ring.from_int(a, b)).collect())
            .collect()
    }

    pub fn from_residues(ring: &ResidueRing, m: &[Vec<Elem>]) -> Self {
        IntMatrix {
            rows: m.iter().map(|r| r.iter().map(|&e| ring.lift(e)).collect()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseRealization {
    pub tag: CaseTag,
    /// Number of invariants.
    pub n: usize,
}

impl CaseRealization {
    pub fn new(tag: CaseTag, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedCase("rank must be positive".into()));
        }
        Ok(CaseRealization { tag, n })
    }

    pub fn matrix_size(&self) -> usize {
        match self.tag {
            CaseTag::Alternating => 2 * self.n,
            _ => self.n,
        }
    }

    pub fn extension(&self) -> Extension {
        match self.tag {
            CaseTag::Hermitian => Extension::UnramifiedQuadratic,
            _ => Extension::None,
        }
    }

    pub fn config(&self, p: u64, m: u32) -> Result<PAdicConfig> {
        PAdicConfig::new(p, m, self.extension())
    }

    pub fn check_config(&self, cfg: &PAdicConfig) -> Result<()> {
        if cfg.extension != self.extension() {
            return Err(Error::UnsupportedCase(format!(
                "the {} case needs extension {:?}",
                self.tag,
                self.extension()
            )));
        }
        Ok(())
    }

    /// Rows of `k` that the invariant `f_i` depends on.
    pub fn rows_for(&self, i: usize) -> usize {
        match self.tag {
            CaseTag::Alternating => 2 * i,
            _ => i,
        }
    }

    /// Degree of `f_i` in `x`; scaling `x` by `p^c` shifts `v(f_i)` by `c`
    /// times this.
    pub fn degree(&self, i: usize) -> i32 {
        i as i32
    }

    /// The diagonal (or 2x2-block diagonal) representative `pi^lambda` at
    /// the prime `p`; requires nonnegative parts.
    pub fn representative(&self, lambda: &Partition, p: u64) -> Result<IntMatrix> {
        if lambda.len() != self.n {
            return Err(Error::BadLength { expected: self.n, got: lambda.len() });
        }
        if lambda.parts().iter().any(|&l| l < 0) {
            return Err(Error::UnsupportedCase("representative needs nonnegative parts".into()));
        }
        let size = self.matrix_size();
        let mut rows = vec![vec![(0i128, 0i128); size]; size];
        for (i, &l) in lambda.parts().iter().enumerate() {
            let pl = (p as i128).pow(l as u32);
            match self.tag {
                CaseTag::Alternating => {
                    rows[2 * i][2 * i + 1] = (pl, 0);
                    rows[2 * i + 1][2 * i] = (-pl, 0);
                }
                _ => rows[i][i] = (pl, 0),
            }
        }
        Ok(IntMatrix { rows })
    }

    /// Checks the symmetry type of `x`.
    pub fn validate_point(&self, x: &IntMatrix) -> Result<()> {
        let size = self.matrix_size();
        if x.size() != size || x.rows.iter().any(|r| r.len() != size) {
            return Err(Error::BadLength { expected: size, got: x.size() });
        }
        for i in 0..size {
            for j in 0..size {
                let (a, b) = x.rows[i][j];
                let (c, d) = x.rows[j][i];
                let ok = match self.tag {
                    CaseTag::Symmetric => a == c && b == 0 && d == 0,
                    CaseTag::Alternating => a == -c && b == 0 && d == 0,
                    CaseTag::Hermitian => a == c && b == -d,
                };
                if !ok {
                    return Err(Error::UnsupportedCase(format!(
                        "point is not {} at ({i},{j})",
                        self.tag
                    )));
                }
            }
        }
        Ok(())
    }

    /// `g . x` over the residue ring.
    pub fn act(&self, ring: &ResidueRing, g: &[Vec<Elem>], x: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let gx = mat_mul(ring, g, x);
        let gt: Vec<Vec<Elem>> = transpose(g)
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| if self.tag == CaseTag::Hermitian { ring.conj(e) } else { e })
                    .collect()
            })
            .collect();
        mat_mul(ring, &gx, &gt)
    }

    /// `f_i(y)` for `i = 1..=count` over the residue ring.
    pub fn invariants(&self, ring: &ResidueRing, y: &[Vec<Elem>], count: usize) -> Vec<Elem> {
        (1..=count)
            .map(|i| match self.tag {
                CaseTag::Alternating => pfaffian(ring, &leading_block(y, 2 * i)),
                _ => det(ring, &leading_block(y, i)),
            })
            .collect()
    }

    /// Exact valuation of the top invariant `f_n(x)`, which does not change
    /// along `K`-orbits.
    pub fn top_valuation(&self, x: &IntMatrix, cfg: &PAdicConfig) -> Result<i32> {
        let v = self.exact_invariant(x, self.n, cfg.rho());
        int_valuation(v, cfg.p).ok_or(Error::NotInOpenOrbit(self.n))
    }

    /// `f_i(x)` computed exactly over `Z[sqrt(rho)]`.
    pub fn exact_invariant(&self, x: &IntMatrix, i: usize, rho: u64) -> IntElem {
        let k = self.rows_for(i);
        let block: Vec<Vec<IntElem>> = x.rows[..k].iter().map(|r| r[..k].to_vec()).collect();
        match self.tag {
            CaseTag::Alternating => int_pfaffian(&block),
            _ => int_det(&block, rho as i128),
        }
    }

    /// `g . x` computed exactly over `Z[sqrt(rho)]`.
    pub fn exact_act(&self, g: &IntMatrix, x: &IntMatrix, rho: u64) -> IntMatrix {
        let rho = rho as i128;
        let size = x.size();
        let mul = |a: &[Vec<IntElem>], b: &[Vec<IntElem>]| -> Vec<Vec<IntElem>> {
            (0..a.len())
                .map(|i| {
                    (0..size)
                        .map(|j| {
                            (0..size).fold((0, 0), |acc, k| {
                                let t = int_mul(a[i][k], b[k][j], rho);
                                (acc.0 + t.0, acc.1 + t.1)
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let herm = self.tag == CaseTag::Hermitian;
        let gstar: Vec<Vec<IntElem>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        let (a, b) = g.rows[j][i];
                        if herm {
                            (a, -b)
                        } else {
                            (a, b)
                        }
                    })
                    .collect()
            })
            .collect();
        IntMatrix { rows: mul(&mul(&g.rows, &x.rows), &gstar) }
    }
}

pub fn leading_block(y: &[Vec<Elem>], k: usize) -> Vec<Vec<Elem>> {
    y[..k].iter().map(|r| r[..k].to_vec()).collect()
}

pub fn transpose(a: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(ring: &ResidueRing, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(ring.zero(), |acc, (&x, brow)| ring.add(acc, ring.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

fn minor(a: &[Vec<Elem>], skip_row: usize, skip_col: usize) -> Vec<Vec<Elem>> {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion (sizes here are at most 4).
pub fn det(ring: &ResidueRing, a: &[Vec<Elem>]) -> Elem {
    match a.len() {
        0 => ring.one(),
        1 => a[0][0],
        2 => ring.sub(ring.mul(a[0][0], a[1][1]), ring.mul(a[0][1], a[1][0])),
        n => {
            let mut acc = ring.zero();
            for j in 0..n {
                let term = ring.mul(a[0][j], det(ring, &minor(a, 0, j)));
                acc = if j % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
            }
            acc
        }
    }
}

/// Pfaffian of an alternating matrix of even size by expansion along the
/// first row.
pub fn pfaffian(ring: &ResidueRing, a: &[Vec<Elem>]) -> Elem {
    let n = a.len();
    if n == 0 {
        return ring.one();
    }
    if n == 2 {
        return a[0][1];
    }
    let mut acc = ring.zero();
    for j in 1..n {
        let rest: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let sub: Vec<Vec<Elem>> = rest.iter().map(|&r| rest.iter().map(|&c| a[r][c]).collect()).collect();
        let term = ring.mul(a[0][j], pfaffian(ring, &sub));
        // sign (-1)^(j+1) for 0-based j counting from the first row
        acc = if j % 2 == 1 { ring.add(acc, term) } else { ring.sub(acc, term) };
    }
    acc
}

fn int_mul(x: IntElem, y: IntElem, rho: i128) -> IntElem {
    (x.0 * y.0 + rho * x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

/// Exact determinant over `Z[sqrt(rho)]` by cofactor expansion.
pub fn int_det(a: &[Vec<IntElem>], rho: i128) -> IntElem {
    match a.len() {
        0 => (1, 0),
        1 => a[0][0],
        n => {
            let mut acc = (0i128, 0i128);
            for j in 0..n {
                let sub: Vec<Vec<IntElem>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &e)| e).collect())
                    .collect();
                let t = int_mul(a[0][j], int_det(&sub, rho), rho);
                if j % 2 == 0 {
                    acc = (acc.0 + t.0, acc.1 + t.1);
                } else {
                    acc = (acc.0 - t.0, acc.1 - t.1);
                }
            }
            acc
        }
    }
}

pub fn int_pfaffian(a: &[Vec<IntElem>]) -> IntElem {
    let n = a.len();
    if n == 0 {
        return (1, 0);
    }
    if n == 2 {
        return a[0][1];
    }
    let mut acc = (0i128, 0i128);
    for j in 1..n {
        let rest: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let sub: Vec<Vec<IntElem>> = rest.iter().map(|&r| rest.iter().map(|&c| a[r][c]).collect()).collect();
        let t = int_mul(a[0][j], int_pfaffian(&sub), 0);
        if j % 2 == 1 {
            acc = (acc.0 + t.0, acc.1 + t.1);
        } else {
            acc = (acc.0 - t.0, acc.1 - t.1);
        }
    }
    acc
}

fn int_val_scalar(mut c: i128, p: u64) -> Option<i32> {
    if c == 0 {
        return None;
    }
    let p = p as i128;
    let mut k = 0;
    while c % p == 0 {
        c /= p;
        k += 1;
    }
    Some(k)
}

/// `min(v(a), v(b))`, or `None` for zero.
pub fn int_valuation(x: IntElem, p: u64) -> Option<i32> {
    match (int_val_scalar(x.0, p), int_val_scalar(x.1, p)) {
        (None, None) => None,
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (Some(a), Some(b)) => Some(a.min(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(p: &[i32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn representatives() {
        let c = CaseRealization::new(CaseTag::Alternating, 2).unwrap();
        let x = c.representative(&lam(&[2, 1]), 3).unwrap();
        assert_eq!(x.rows[0][1], (9, 0));
        assert_eq!(x.rows[3][2], (-3, 0));
        c.validate_point(&x).unwrap();
        assert_eq!(c.top_valuation(&x, &c.config(3, 1).unwrap()).unwrap(), 3);
        let h = CaseRealization::new(CaseTag::Hermitian, 2).unwrap();
        let y = h.representative(&lam(&[1, 0]), 5).unwrap();
        h.validate_point(&y).unwrap();
        assert_eq!(h.top_valuation(&y, &h.config(5, 1).unwrap()).unwrap(), 1);
        assert!(h.representative(&lam(&[0, -1]), 5).is_err());
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let cfg = PAdicConfig::new(5, 2, Extension::None).unwrap();
        let r = cfg.ring();
        let vals = [3i128, -7, 11, 2, 5, -1];
        let mut a = vec![vec![r.zero(); 4]; 4];
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                a[i][j] = r.from_int(vals[k], 0);
                a[j][i] = r.from_int(-vals[k], 0);
                k += 1;
            }
        }
        let pf = pfaffian(&r, &a);
        assert_eq!(r.mul(pf, pf), det(&r, &a));
    }

    #[test]
    fn action_preserves_type() {
        let c = CaseRealization::new(CaseTag::Hermitian, 2).unwrap();
        let cfg = c.config(3, 2).unwrap();
        let r = cfg.ring();
        let x = c.representative(&lam(&[1, 0]), 3).unwrap().reduce(&r);
        let g = vec![vec![r.from_int(1, 2), r.from_int(4, 0)], vec![r.from_int(0, 1), r.from_int(2, 2)]];
        let y = c.act(&r, &g, &x);
        c.validate_point(&IntMatrix::from_residues(&r, &y)).unwrap();
        let gi = IntMatrix::from_residues(&r, &g);
        let xi = IntMatrix::from_residues(&r, &x);
        let exact = c.exact_act(&gi, &xi, cfg.rho());
        assert_eq!(exact.reduce(&r), y);
    }
}
