//! Exact arithmetic in `Q(zeta)` for `zeta` a primitive `p^e`-th root of
//! unity, stored as coefficient vectors over `zeta^0 .. zeta^{p^e - 1}` and
//! kept reduced modulo the cyclotomic relations.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{serial::rational_string, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    p: u64,
    e: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(p: u64, e: u32) -> Self {
        Cyclotomic { p, e, coeffs: vec![Rational::zero(); p.pow(e) as usize] }
    }

    pub fn rational(p: u64, e: u32, c: Rational) -> Self {
        let mut z = Self::zero(p, e);
        z.coeffs[0] = c;
        z
    }

    pub fn one(p: u64, e: u32) -> Self {
        Self::rational(p, e, Rational::one())
    }

    /// `c * zeta^k`.
    pub fn root_power(p: u64, e: u32, k: i64, c: Rational) -> Self {
        let mut z = Self::zero(p, e);
        let n = z.order() as i64;
        z.coeffs[k.rem_euclid(n) as usize] = c;
        z.reduce();
        z
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    /// Rewrites `zeta^j` for `j` in the top block `[(p-1)p^{e-1}, p^e)` using
    /// `sum_{k<p} zeta^{r + k p^{e-1}} = 0`, leaving the standard basis.
    fn reduce(&mut self) {
        if self.e == 0 {
            return;
        }
        let step = self.p.pow(self.e - 1) as usize;
        let top = (self.p as usize - 1) * step;
        for r in 0..step {
            let c = std::mem::take(&mut self.coeffs[top + r]);
            if c.is_zero() {
                continue;
            }
            for k in 0..self.p as usize - 1 {
                self.coeffs[r + k * step] -= &c;
            }
        }
    }

    /// Coefficients in the reduced basis `zeta^j`, `j < (p-1) p^{e-1}`
    /// (higher slots are zero).
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert!(self.p == other.p && self.e == other.e, "cyclotomic fields differ");
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// `self += c * zeta^k * other`.
    pub fn add_scaled_rotated(&mut self, other: &Self, c: &Rational, k: u64) {
        self.check(other);
        let n = self.order();
        for (j, b) in other.coeffs.iter().enumerate() {
            if !b.is_zero() {
                let idx = ((j as u64 + k) % n) as usize;
                self.coeffs[idx] += b * c;
            }
        }
        self.reduce();
    }

    /// `self += c * zeta^k`.
    pub fn add_root(&mut self, c: &Rational, k: u64) {
        let n = self.order();
        self.coeffs[(k % n) as usize] += c;
        self.reduce();
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Cyclotomic { p: self.p, e: self.e, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.p, self.e);
        let n = self.order() as usize;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out.reduce();
        out
    }

    /// The same number inside `Q(zeta_{p^e2})`, `e2 >= e`.
    pub fn embed(&self, e2: u32) -> Self {
        assert!(e2 >= self.e);
        let factor = self.p.pow(e2 - self.e) as usize;
        let mut out = Self::zero(self.p, e2);
        for (j, a) in self.coeffs.iter().enumerate() {
            out.coeffs[j * factor] = a.clone();
        }
        out.reduce();
        out
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let n = self.order() as usize;
        let mut out = Self::zero(self.p, self.e);
        for (j, a) in self.coeffs.iter().enumerate() {
            out.coeffs[(n - j) % n] += a;
        }
        out.reduce();
        out
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| if j == 0 { rational_string(a) } else { format!("{}*z^{j}", rational_string(a)) })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn roots_sum_to_zero() {
        for (p, e) in [(3, 1), (3, 2), (5, 1)] {
            let mut s = Cyclotomic::zero(p, e);
            for k in 0..p.pow(e) {
                s.add_root(&rat(1, 1), k);
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn multiplication_of_roots() {
        let z = Cyclotomic::root_power(3, 2, 4, rat(1, 1));
        let w = Cyclotomic::root_power(3, 2, 7, rat(1, 1));
        assert_eq!(z.mul(&w), Cyclotomic::root_power(3, 2, 2, rat(1, 1)));
        let zn = (0..9).fold(Cyclotomic::one(3, 2), |acc, _| acc.mul(&z));
        assert_eq!(zn, Cyclotomic::one(3, 2));
    }

    #[test]
    fn gauss_sum_squared() {
        // (sum_k (k/3) zeta_3^k)^2 = -3
        let g = Cyclotomic::root_power(3, 1, 1, rat(1, 1)).sub(&Cyclotomic::root_power(3, 1, 2, rat(1, 1)));
        assert_eq!(g.mul(&g).as_rational(), Some(rat(-3, 1)));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let a = Cyclotomic::root_power(3, 1, 1, rat(2, 1));
        let b = Cyclotomic::root_power(3, 1, 2, rat(-1, 5));
        assert_eq!(a.mul(&b).embed(2), a.embed(2).mul(&b.embed(2)));
        assert_eq!(a.embed(2), Cyclotomic::root_power(3, 2, 3, rat(2, 1)));
    }
}
