//! Sparse multivariate Laurent polynomials over Q in the variables q, x1..xn.
//!
//! Exponent vectors have one slot per variable: slot 0 is the base variable
//! (usually `q`, rendered as `t` when it stands for a free Hall-Littlewood
//! parameter), slots 1..=n are `x1..xn`. Terms live in a `BTreeMap`, so
//! iteration is in lexicographic order with the base variable most
//! significant, and the last entry is the lex-leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

pub type Rational = BigRational;
pub type Exponents = Vec<i32>;

/// Builds the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A variable slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// The base variable (slot 0).
    Q,
    /// `x_i`, 1-based.
    X(usize),
}

impl Var {
    pub fn slot(self) -> usize {
        match self {
            Var::Q => 0,
            Var::X(i) => {
                assert!(i >= 1, "x-variables are 1-based");
                i
            }
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        if slot == 0 {
            Var::Q
        } else {
            Var::X(slot)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentExpr {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl LaurentExpr {
    pub fn zero(nvars: usize) -> Self {
        LaurentExpr {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rational::one(), nvars)
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        let mut e = Self::zero(nvars);
        if !c.is_zero() {
            e.terms.insert(vec![0; nvars + 1], c);
        }
        e
    }

    pub fn from_int(c: i64, nvars: usize) -> Self {
        Self::constant(int(c), nvars)
    }

    /// The single term `coef * vars^exps`.
    pub fn monomial(exps: Exponents, coef: Rational) -> Self {
        assert!(!exps.is_empty(), "exponent vector needs the base slot");
        let nvars = exps.len() - 1;
        let mut e = Self::zero(nvars);
        if !coef.is_zero() {
            e.terms.insert(exps, coef);
        }
        e
    }

    pub fn var(v: Var, nvars: usize) -> Self {
        Self::var_pow(v, 1, nvars)
    }

    pub fn var_pow(v: Var, k: i32, nvars: usize) -> Self {
        let slot = v.slot();
        assert!(slot <= nvars, "variable {v:?} out of range for nvars={nvars}");
        let mut exps = vec![0; nvars + 1];
        exps[slot] = k;
        Self::monomial(exps, Rational::one())
    }

    /// `q^k` with `nvars` x-slots.
    pub fn q_pow(k: i32, nvars: usize) -> Self {
        Self::var_pow(Var::Q, k, nvars)
    }

    /// `x_i` (1-based).
    pub fn x(i: usize, nvars: usize) -> Self {
        Self::var(Var::X(i), nvars)
    }

    /// Builds an expression from `(exponents, coefficient)` pairs, merging
    /// repeated exponent vectors.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut e = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars + 1 {
                return Err(AlgebraError::Malformed(format!(
                    "exponent vector {exps:?} does not have {} slots",
                    nvars + 1
                )));
            }
            e.add_term(exps, c);
        }
        Ok(e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the expression is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&a| a == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some((exps, coef))` for a single nonzero term.
    pub fn as_monomial(&self) -> Option<(&Exponents, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Lex-leading term, base variable most significant.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_vars(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_vars(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_vars(other)?;
        Ok(self * other)
    }

    pub(crate) fn same_vars(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(AlgebraError::VarMismatch(self.nvars, other.nvars))
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentExpr {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `vars^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars + 1);
        LaurentExpr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(shift).map(|(x, s)| x + s).collect(), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative exponents are only defined for monomials.
    pub fn powi(&self, k: i32) -> Option<Self> {
        if k >= 0 {
            return Some(self.pow(k as u32));
        }
        let (e, c) = self.as_monomial()?;
        let inv = LaurentExpr::monomial(e.iter().map(|a| -a).collect(), c.recip());
        Some(inv.pow((-k) as u32))
    }

    /// Adds `extra` x-slots (zero exponents) at the end. Expressions in `q`
    /// alone are widened this way before meeting expressions in x1..xn.
    pub fn widen(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars, "cannot narrow {} to {}", self.nvars, nvars);
        LaurentExpr {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars + 1, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Drops trailing x-slots, which must carry only zero exponents.
    pub fn narrow(&self, nvars: usize) -> Option<Self> {
        if nvars > self.nvars {
            return None;
        }
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            if e[nvars + 1..].iter().any(|&a| a != 0) {
                return None;
            }
            out.terms.insert(e[..=nvars].to_vec(), c.clone());
        }
        Some(out)
    }

    /// Applies `x_i -> x_{perm[i-1]+1}` where `perm` is a 0-based permutation
    /// of the x-slots. The base variable is untouched.
    pub fn permute_x(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        LaurentExpr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut out = vec![0; self.nvars + 1];
                    out[0] = e[0];
                    for (i, &target) in perm.iter().enumerate() {
                        out[target + 1] = e[i + 1];
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero
    /// expression).
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars + 1];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn max_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars + 1];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).max(*b);
            }
        }
        m
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a >= 0))
    }

    /// Variables that occur with a nonzero exponent in some term.
    pub fn used_slots(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars + 1];
        for e in self.terms.keys() {
            for (u, &a) in used.iter_mut().zip(e) {
                if a != 0 {
                    *u = true;
                }
            }
        }
        used
    }

    /// Invariance under all permutations of x1..xn, checked on transpositions
    /// of adjacent slots (which generate the symmetric group).
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            self.permute_x(&perm) == *self
        })
    }

    /// Evaluates the base variable at a rational, keeping the x-slots.
    pub fn eval_q(&self, value: &Rational) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[0];
            if k < 0 && value.is_zero() {
                return None;
            }
            let f = if k >= 0 {
                num_traits::pow(value.clone(), k as usize)
            } else {
                num_traits::pow(value.recip(), (-k) as usize)
            };
            let mut e = e.clone();
            e[0] = 0;
            out.add_term(e, c * f);
        }
        Some(out)
    }

    /// Largest absolute numerator or denominator among coefficients; handy
    /// when logging coefficient growth.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs().max(c.denom().abs()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentExpr({})", super::render::to_text(self, "q"))
    }
}

impl fmt::Display for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::to_text(self, "q"))
    }
}

impl<'a> Add<&'a LaurentExpr> for &'a LaurentExpr {
    type Output = LaurentExpr;

    /// Panics if the variable counts differ; use `checked_add` otherwise.
    fn add(self, rhs: &'a LaurentExpr) -> LaurentExpr {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch in add");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for LaurentExpr {
    type Output = LaurentExpr;
    fn add(self, rhs: LaurentExpr) -> LaurentExpr {
        &self + &rhs
    }
}

impl<'a> Sub<&'a LaurentExpr> for &'a LaurentExpr {
    type Output = LaurentExpr;
    fn sub(self, rhs: &'a LaurentExpr) -> LaurentExpr {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch in sub");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Sub for LaurentExpr {
    type Output = LaurentExpr;
    fn sub(self, rhs: LaurentExpr) -> LaurentExpr {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentExpr> for &'a LaurentExpr {
    type Output = LaurentExpr;
    fn mul(self, rhs: &'a LaurentExpr) -> LaurentExpr {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch in mul");
        let mut out = LaurentExpr::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentExpr {
    type Output = LaurentExpr;
    fn mul(self, rhs: LaurentExpr) -> LaurentExpr {
        &self * &rhs
    }
}

impl Neg for &LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        LaurentExpr {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentExpr {
        LaurentExpr::x(i, 2)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(1) + &x(2)) * &(&x(1) - &x(2));
        let expected = &x(1).pow(2) - &x(2).pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = &x(1) - &x(1);
        assert!(a.is_zero());
        assert_eq!(a.as_constant(), Some(Rational::zero()));
    }

    #[test]
    fn mismatched_vars_rejected() {
        let a = LaurentExpr::x(1, 1);
        let b = LaurentExpr::x(1, 2);
        assert_eq!(a.checked_add(&b), Err(AlgebraError::VarMismatch(1, 2)));
    }

    #[test]
    fn permutation_moves_slots() {
        // x1^2 x2 under x1 -> x2, x2 -> x1
        let m = &x(1).pow(2) * &x(2);
        let swapped = m.permute_x(&[1, 0]);
        assert_eq!(swapped, &x(2).pow(2) * &x(1));
    }

    #[test]
    fn negative_powers_of_monomials() {
        let m = LaurentExpr::monomial(vec![1, 2, 0], int(3));
        let inv = m.powi(-1).unwrap();
        assert!((&m * &inv).is_one());
        assert!((&x(1) + &x(2)).powi(-1).is_none());
    }

    #[test]
    fn widen_then_narrow() {
        let a = &LaurentExpr::q_pow(-2, 0) + &LaurentExpr::one(0);
        let w = a.widen(3);
        assert_eq!(w.nvars(), 3);
        assert_eq!(w.narrow(0).unwrap(), a);
        assert!(x(2).narrow(1).is_none());
    }
}
