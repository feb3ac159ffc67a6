//! Residue rings `O/p^m` and `O'/p^m`, where `O'` is the ring of integers of
//! the unramified quadratic extension, realized as pairs `a + b*sqrt(rho)`
//! with `rho` a quadratic non-residue mod `p`.

use crate::error::{Error, Result};

/// `a + b*sqrt(rho)`; `b` is always zero in the unextended ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    None,
    UnramifiedQuadratic,
}

/// Level data: prime, level and extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PAdicConfig {
    pub p: u64,
    pub m: u32,
    pub extension: Extension,
    rho: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Legendre symbol of `a` modulo the odd prime `p` (0, 1 or -1).
pub fn legendre(a: i128, p: u64) -> i32 {
    let a = a.rem_euclid(p as i128) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

impl PAdicConfig {
    pub fn new(p: u64, m: u32, extension: Extension) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        if m == 0 {
            return Err(Error::UnsupportedCase("level must be at least 1".into()));
        }
        if (p as u128).checked_pow(2 * m).is_none_or(|v| v > u64::MAX as u128 / 4) {
            return Err(Error::UnsupportedCase(format!("p^m too large for p={p}, m={m}")));
        }
        let rho = (2..p).find(|&r| legendre(r as i128, p) == -1).expect("odd primes have non-residues");
        debug_assert_eq!(legendre(rho as i128, p), -1);
        Ok(PAdicConfig { p, m, extension, rho })
    }

    pub fn rho(&self) -> u64 {
        self.rho
    }

    pub fn with_level(&self, m: u32) -> Result<Self> {
        Self::new(self.p, m, self.extension)
    }

    pub fn ring(&self) -> ResidueRing {
        ResidueRing::new(self)
    }

    /// Cardinality of the residue field of the ring being enumerated.
    pub fn residue_size(&self) -> u64 {
        match self.extension {
            Extension::None => self.p,
            Extension::UnramifiedQuadratic => self.p * self.p,
        }
    }
}

/// Arithmetic in `O/p^m` or `O'/p^m`.
#[derive(Clone, Copy, Debug)]
pub struct ResidueRing {
    pub p: u64,
    pub m: u32,
    pub modulus: u64,
    pub rho: u64,
    pub quadratic: bool,
}

impl ResidueRing {
    pub fn new(cfg: &PAdicConfig) -> Self {
        ResidueRing {
            p: cfg.p,
            m: cfg.m,
            modulus: cfg.p.pow(cfg.m),
            rho: cfg.rho,
            quadratic: cfg.extension == Extension::UnramifiedQuadratic,
        }
    }

    /// The same ring at level 1 (the residue field).
    pub fn residue_field(&self) -> Self {
        ResidueRing {
            m: 1,
            modulus: self.p,
            ..*self
        }
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        if self.quadratic {
            self.modulus * self.modulus
        } else {
            self.modulus
        }
    }

    pub fn residue_size(&self) -> u64 {
        if self.quadratic {
            self.p * self.p
        } else {
            self.p
        }
    }

    /// The `i`-th element in a fixed enumeration order.
    pub fn element(&self, i: u64) -> Elem {
        Elem {
            a: i % self.modulus,
            b: i / self.modulus,
        }
    }

    pub fn zero(&self) -> Elem {
        Elem { a: 0, b: 0 }
    }

    pub fn one(&self) -> Elem {
        Elem { a: 1 % self.modulus, b: 0 }
    }

    pub fn from_int(&self, a: i128, b: i128) -> Elem {
        let m = self.modulus as i128;
        Elem {
            a: a.rem_euclid(m) as u64,
            b: if self.quadratic { b.rem_euclid(m) as u64 } else { 0 },
        }
    }

    fn mulm(&self, x: u64, y: u64) -> u64 {
        (x as u128 * y as u128 % self.modulus as u128) as u64
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem {
            a: (x.a + y.a) % self.modulus,
            b: (x.b + y.b) % self.modulus,
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        Elem {
            a: (self.modulus - x.a) % self.modulus,
            b: (self.modulus - x.b) % self.modulus,
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if !self.quadratic {
            return Elem { a: self.mulm(x.a, y.a), b: 0 };
        }
        let a = (self.mulm(x.a, y.a) + self.mulm(self.rho, self.mulm(x.b, y.b))) % self.modulus;
        let b = (self.mulm(x.a, y.b) + self.mulm(x.b, y.a)) % self.modulus;
        Elem { a, b }
    }

    /// The nontrivial automorphism of the quadratic extension (identity
    /// otherwise).
    pub fn conj(&self, x: Elem) -> Elem {
        Elem {
            a: x.a,
            b: (self.modulus - x.b) % self.modulus,
        }
    }

    /// `a^2 - rho*b^2`.
    pub fn norm(&self, x: Elem) -> u64 {
        (self.mulm(x.a, x.a) + self.modulus - self.mulm(self.rho, self.mulm(x.b, x.b))) % self.modulus
    }

    pub fn is_zero(&self, x: Elem) -> bool {
        x.a == 0 && x.b == 0
    }

    /// Valuation, or `None` for zero (valuation at least `m`).
    pub fn val(&self, x: Elem) -> Option<u32> {
        let v = |c: u64| -> Option<u32> {
            if c == 0 {
                return None;
            }
            let mut c = c;
            let mut k = 0;
            while c.is_multiple_of(self.p) {
                c /= self.p;
                k += 1;
            }
            Some(k)
        };
        match (v(x.a), v(x.b)) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.val(x) == Some(0)
    }

    /// Inverse of a unit.
    pub fn inv(&self, x: Elem) -> Option<Elem> {
        if !self.is_unit(x) {
            return None;
        }
        let n = self.norm(x);
        // phi(p^m) = p^(m-1)(p-1)
        let phi = self.modulus / self.p * (self.p - 1);
        let ninv = pow_mod(n, phi - 1, self.modulus);
        let c = self.conj(x);
        Some(Elem {
            a: self.mulm(c.a, ninv),
            b: self.mulm(c.b, ninv),
        })
    }

    /// Reduction to the residue field.
    pub fn reduce(&self, x: Elem) -> Elem {
        Elem {
            a: x.a % self.p,
            b: x.b % self.p,
        }
    }

    /// Symmetric integer lift `(a, b)` with entries in `(-p^m/2, p^m/2]`.
    pub fn lift(&self, x: Elem) -> (i128, i128) {
        let s = |c: u64| {
            let c = c as i128;
            let m = self.modulus as i128;
            if 2 * c > m {
                c - m
            } else {
                c
            }
        };
        (s(x.a), s(x.b))
    }
}
