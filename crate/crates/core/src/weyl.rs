//! Symmetric-group combinatorics: permutations acting on x1..xn, lengths,
//! the Poincare polynomial, split c-functions and the affine coordinate
//! changes between the s- and z-parametrizations.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{LaurentExpr, RatFunc, Rational, Var};
use crate::case::CaseTag;
use crate::error::{Error, Result};

/// A permutation `i -> perm[i]` of `{0, ..., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::BadPermutation(perm));
            }
            seen[p] = true;
        }
        Ok(WeylElement { perm })
    }

    /// From the images of `1..=n`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::BadPermutation(images.to_vec()));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        WeylElement { perm: (0..n).collect() }
    }

    pub fn longest(n: usize) -> Self {
        WeylElement { perm: (0..n).rev().collect() }
    }

    /// The transposition of `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        WeylElement { perm }
    }

    /// All of S_n in lexicographic order of the image vectors.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(WeylElement { perm: current.clone() });
            // next permutation in lex order
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|i| i + 1).collect()
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        WeylElement {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.rank()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        WeylElement { perm: inv }
    }

    /// Pairs `i < j` with `perm[i] > perm[j]`, 0-based.
    pub fn inversion_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.perm[i] > self.perm[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        self.inversion_pairs().len()
    }

    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Permutes a coordinate vector: `(sigma v)_{sigma(i)} = v_i`.
    pub fn act_on_vector<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = x.clone();
        }
        out
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement{:?}", self.one_based())
    }
}

/// `sigma . e` with `x_i -> x_{sigma(i)}`; a left action.
pub fn weyl_act(sigma: &WeylElement, e: &RatFunc) -> RatFunc {
    assert_eq!(sigma.rank(), e.nvars(), "permutation rank differs from nvars");
    e.permute_x(sigma.perm())
}

pub fn weyl_act_laurent(sigma: &WeylElement, e: &LaurentExpr) -> LaurentExpr {
    e.permute_x(sigma.perm())
}

/// `sum_{sigma in S_n} t^{length(sigma)}`.
pub fn poincare_sum(n: usize, t: &LaurentExpr) -> LaurentExpr {
    // Product formula prod_{i=1}^{n} (1 + t + ... + t^{i-1}); the direct sum
    // over S_n is used as a test oracle.
    let one = LaurentExpr::one(t.nvars());
    let mut out = one.clone();
    for i in 1..=n {
        let mut qint = LaurentExpr::zero(t.nvars());
        let mut p = one.clone();
        for _ in 0..i {
            qint = &qint + &p;
            p = &p * t;
        }
        out = &out * &qint;
    }
    out
}

/// The split c-factor `(1 - tX)/(1 - X)`.
pub fn c_factor(t: &RatFunc, x: &RatFunc) -> Result<RatFunc> {
    let one = RatFunc::one(x.nvars());
    let den = &one - x;
    if den.is_zero() {
        return Err(crate::algebra::AlgebraError::SpecializationPole.into());
    }
    Ok((&one - &(t * x)).checked_div(&den)?)
}

/// `x_j / x_i` for the positive root `(i, j)`, 0-based.
pub fn root_ratio(n: usize, i: usize, j: usize) -> RatFunc {
    let mut e = vec![0; n + 1];
    e[j + 1] += 1;
    e[i + 1] -= 1;
    RatFunc::from_laurent(LaurentExpr::monomial(e, Rational::from_integer(1.into())))
}

/// Widens a parameter in the base variable to `n` x-slots.
pub fn param(t: &LaurentExpr, n: usize) -> RatFunc {
    assert!(
        t.used_slots().iter().skip(1).all(|u| !u),
        "the parameter may only involve the base variable"
    );
    let narrowed = t.narrow(0).expect("only the base variable");
    RatFunc::from_laurent(narrowed.widen(n))
}

/// `prod_{i<j} (1 - t x_j/x_i) / (1 - x_j/x_i)`.
pub fn gamma_product(n: usize, t: &LaurentExpr) -> RatFunc {
    c_sigma(&WeylElement::longest(n), n, t)
}

/// Product of c-factors over the inversion pairs of `sigma`.
pub fn c_sigma(sigma: &WeylElement, n: usize, t: &LaurentExpr) -> RatFunc {
    assert_eq!(sigma.rank(), n);
    let tt = param(t, n);
    let mut num = LaurentExpr::one(n);
    let mut den = LaurentExpr::one(n);
    // Each factor is (x_i - t x_j)/(x_i - x_j); multiply out and normalize once.
    for (i, j) in sigma.inversion_pairs() {
        let xi = LaurentExpr::x(i + 1, n);
        let xj = LaurentExpr::x(j + 1, n);
        let tn = tt.as_laurent().expect("parameter is Laurent");
        num = &num * &(&xi - &(&tn * &xj));
        den = &den * &(&xi - &xj);
    }
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// Affine change of coordinates `s = A z + b` for a case, with `A` upper
/// bidiagonal with `-1` on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableMap {
    pub case: CaseTag,
    pub matrix: Vec<Vec<i64>>,
    pub offset: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ZToS,
    SToZ,
}

impl VariableMap {
    pub fn new(case: CaseTag, n: usize) -> Result<Self> {
        let mut matrix = vec![vec![0i64; n]; n];
        let mut offset = vec![Rational::zero(); n];
        for i in 0..n {
            matrix[i][i] = -1;
            if i + 1 < n {
                matrix[i][i + 1] = 1;
            }
        }
        match case {
            CaseTag::Alternating => {
                for (i, o) in offset.iter_mut().enumerate() {
                    *o = if i + 1 < n {
                        Rational::from_integer((-2).into())
                    } else {
                        Rational::from_integer((n as i64 - 1).into())
                    };
                }
            }
            CaseTag::Hermitian => {}
            CaseTag::Symmetric => return Err(Error::NoClosedForm("symmetric")),
        }
        Ok(VariableMap { case, matrix, offset })
    }

    pub fn rank(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, direction: Direction, v: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.rank();
        if v.len() != n {
            return Err(Error::BadLength { expected: n, got: v.len() });
        }
        Ok(match direction {
            Direction::ZToS => (0..n)
                .map(|i| {
                    let mut acc = self.offset[i].clone();
                    for (j, x) in v.iter().enumerate() {
                        acc += x * Rational::from_integer(self.matrix[i][j].into());
                    }
                    acc
                })
                .collect(),
            Direction::SToZ => {
                // back substitution on the triangular system A z = s - b
                let mut z = vec![Rational::zero(); n];
                for i in (0..n).rev() {
                    let mut rhs = &v[i] - &self.offset[i];
                    for j in i + 1..n {
                        rhs -= &z[j] * Rational::from_integer(self.matrix[i][j].into());
                    }
                    z[i] = rhs / Rational::from_integer(self.matrix[i][i].into());
                }
                z
            }
        })
    }
}

/// Convenience for `variable_map(case, direction, vector)`.
pub fn variable_map(case: CaseTag, direction: Direction, v: &[Rational]) -> Result<Vec<Rational>> {
    VariableMap::new(case, v.len())?.apply(direction, v)
}

/// The symbolic base variable, rendered `t` in Hall-Littlewood output.
pub fn t_symbol() -> LaurentExpr {
    LaurentExpr::var(Var::Q, 0)
}
