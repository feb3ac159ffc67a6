//! Step functions on `k^d` supported in `(pi^-L O)^d` and constant on cosets
//! of `(pi^m O)^d`, with values in `Q(zeta_{p^{L+m}})`.
//!
//! A coordinate index `t` in `[0, p^{L+m})` stands for the coset of
//! `t * pi^-L`. The additive character is `eta(x) = zeta^{p^{L+m}-adic
//! fractional part}`, trivial on `O` and not on `pi^-1 O`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::Rational;
use crate::error::{Error, Result};

use super::cyclotomic::Cyclotomic;

/// Largest table on which we run the quadratic-time transform.
const MAX_CELLS: u64 = 1 << 13;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    pub p: u64,
    /// Support in `pi^-window O` per coordinate.
    pub window: u32,
    /// Constant on cosets of `pi^level O` per coordinate.
    pub level: u32,
    pub dim: usize,
    values: Vec<Cyclotomic>,
}

impl StepFunction {
    pub fn zero(p: u64, window: u32, level: u32, dim: usize) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::UnsupportedCase("step functions live on k or k^2".into()));
        }
        let side = p.checked_pow(window + level).ok_or_else(|| overflow(window, level))?;
        let cells = side.checked_pow(dim as u32).ok_or_else(|| overflow(window, level))?;
        if cells > MAX_CELLS {
            return Err(overflow(window, level));
        }
        let e = window + level;
        Ok(StepFunction { p, window, level, dim, values: vec![Cyclotomic::zero(p, e); cells as usize] })
    }

    /// Indicator of `(pi^a O)^d` (`a` may be negative), on the given window.
    pub fn indicator_ball(p: u64, a: i32, window: u32, level: u32, dim: usize) -> Result<Self> {
        if a < -(window as i32) || a > level as i32 {
            return Err(Error::WindowOverflow(format!("ball pi^{a} O does not fit window ({window}, {level})")));
        }
        let mut f = Self::zero(p, window, level, dim)?;
        let e = window + level;
        for idx in 0..f.values.len() {
            if f.coords(idx).iter().all(|&t| f.coset_valuation(t) >= a) {
                f.values[idx] = Cyclotomic::one(p, e);
            }
        }
        Ok(f)
    }

    /// Indicator of the units `O^x` (one-dimensional).
    pub fn indicator_units(p: u64, window: u32, level: u32) -> Result<Self> {
        let mut f = Self::zero(p, window, level, 1)?;
        if level == 0 {
            return Err(Error::WindowOverflow("units need level at least 1".into()));
        }
        for t in 0..f.side() {
            if f.coset_valuation(t) == 0 {
                f.values[t as usize] = Cyclotomic::one(p, window + level);
            }
        }
        Ok(f)
    }

    /// A random function with small integer values.
    pub fn random<R: Rng>(rng: &mut R, p: u64, window: u32, level: u32, dim: usize) -> Result<Self> {
        let mut f = Self::zero(p, window, level, dim)?;
        let e = window + level;
        for v in f.values.iter_mut() {
            let c: i64 = rng.gen_range(-3..=3);
            *v = Cyclotomic::rational(p, e, Rational::from_integer(c.into()));
        }
        Ok(f)
    }

    pub fn field_exponent(&self) -> u32 {
        self.window + self.level
    }

    /// Cosets per coordinate.
    pub fn side(&self) -> u64 {
        self.p.pow(self.field_exponent())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn coords(&self, idx: usize) -> Vec<u64> {
        let side = self.side();
        let mut idx = idx as u64;
        (0..self.dim)
            .map(|_| {
                let t = idx % side;
                idx /= side;
                t
            })
            .collect()
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        let side = self.side();
        coords.iter().rev().fold(0u64, |acc, &t| acc * side + t % side) as usize
    }

    /// Valuation of the coset `t * pi^-L`; the zero coset reports `level`.
    pub fn coset_valuation(&self, t: u64) -> i32 {
        if t == 0 {
            return self.level as i32;
        }
        let mut t = t;
        let mut v = 0;
        while t.is_multiple_of(self.p) {
            t /= self.p;
            v += 1;
        }
        v - self.window as i32
    }

    pub fn value(&self, coords: &[u64]) -> &Cyclotomic {
        &self.values[self.index(coords)]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn set(&mut self, coords: &[u64], v: Cyclotomic) {
        let i = self.index(coords);
        self.values[i] = v;
    }

    /// Volume of one cell, `q^{-m d}`.
    pub fn cell_volume(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.p).pow(self.level * self.dim as u32))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.p, self.window, self.level, self.dim) != (other.p, other.window, other.level, other.dim) {
            return Err(Error::WindowOverflow("step functions on different windows".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            a.add_assign(b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = v.scale(c);
        }
        out
    }

    /// `v -> phi(-v)`.
    pub fn reflect(&self) -> Self {
        let side = self.side();
        let mut out = self.clone();
        for idx in 0..self.values.len() {
            let neg: Vec<u64> = self.coords(idx).iter().map(|&t| (side - t) % side).collect();
            out.values[self.index(&neg)] = self.values[idx].clone();
        }
        out
    }

    /// The same function on a larger window `(window2, level2)`.
    pub fn rewindow(&self, window2: u32, level2: u32) -> Result<Self> {
        if window2 < self.window || level2 < self.level {
            return self.restrict(window2, level2);
        }
        let mut out = Self::zero(self.p, window2, level2, self.dim)?;
        let e2 = window2 + level2;
        let up = self.p.pow(window2 - self.window);
        for idx in 0..out.values.len() {
            let c = out.coords(idx);
            // t2 * pi^-L2 = (t2 / p^{L2-L}) * pi^-L
            if c.iter().any(|&t| t % up != 0) {
                continue;
            }
            let old: Vec<u64> = c.iter().map(|&t| (t / up) % self.side()).collect();
            out.values[idx] = self.values[self.index(&old)].embed(e2);
        }
        Ok(out)
    }

    /// Shrinks the window; fails with `WindowOverflow` if the function does
    /// not vanish outside the smaller support or is not constant on the
    /// coarser cosets.
    pub fn restrict(&self, window2: u32, level2: u32) -> Result<Self> {
        let window2 = window2.min(self.window);
        let level2 = level2.min(self.level);
        let mut out = Self::zero(self.p, window2, level2, self.dim)?;
        let mut seen: Vec<Option<&Cyclotomic>> = vec![None; out.values.len()];
        let cut = self.p.pow(self.window - window2);
        let coarse = out.side();
        for idx in 0..self.values.len() {
            let c = self.coords(idx);
            let v = &self.values[idx];
            if c.iter().any(|&t| t % cut != 0) {
                if !v.is_zero() {
                    return Err(Error::WindowOverflow(format!("support leaves pi^-{window2} O")));
                }
                continue;
            }
            let target: Vec<u64> = c.iter().map(|&t| (t / cut) % coarse).collect();
            let ti = out.index(&target);
            match seen[ti] {
                None => seen[ti] = Some(v),
                Some(w) if w == v => {}
                Some(_) => {
                    return Err(Error::WindowOverflow(format!("not constant on pi^{level2} O cosets")))
                }
            }
        }
        let e2 = window2 + level2;
        for (slot, v) in out.values.iter_mut().zip(seen) {
            let v = v.expect("every coarse coset is hit");
            *slot = restrict_field(v, e2)?;
        }
        Ok(out)
    }

    /// Sum of the values over all cells in `coords`-regions selected by `f`.
    pub fn mass_where(&self, f: impl Fn(&[u64]) -> bool) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.p, self.field_exponent());
        for idx in 0..self.values.len() {
            if f(&self.coords(idx)) {
                acc.add_assign(&self.values[idx]);
            }
        }
        acc.scale(&self.cell_volume())
    }
}

/// Moves a value of `Q(zeta_{p^e})` into `Q(zeta_{p^e2})`, `e2 < e`, when it
/// lies there.
fn restrict_field(v: &Cyclotomic, e2: u32) -> Result<Cyclotomic> {
    if e2 >= v.exponent() {
        return Ok(v.embed(e2));
    }
    if let Some(r) = v.as_rational() {
        return Ok(Cyclotomic::rational(v.prime(), e2, r));
    }
    // subfield elements are supported on multiples of p^{e - e2}
    let factor = v.prime().pow(v.exponent() - e2) as usize;
    let mut out = Cyclotomic::zero(v.prime(), e2);
    for (j, c) in v.coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if j % factor != 0 {
            return Err(Error::WindowOverflow("value does not lie in the smaller cyclotomic field".into()));
        }
        out.add_root(c, (j / factor) as u64);
    }
    Ok(out)
}

fn overflow(window: u32, level: u32) -> Error {
    Error::WindowOverflow(format!("window ({window}, {level}) is too large to tabulate"))
}

/// The finite Fourier transform with kernel `eta(v w)` (one dimension) or
/// `eta(v_1 w_2 - v_2 w_1)` (two dimensions) and the self-dual measure
/// `vol(O^d) = 1`. The result has window and level exchanged.
pub fn fourier_finite(phi: &StepFunction) -> Result<StepFunction> {
    let (l, m) = (phi.window, phi.level);
    let e = l + m;
    let mut out = StepFunction::zero(phi.p, m, l, phi.dim)?;
    let vol = phi.cell_volume();
    let side = phi.side();
    let nonzero: Vec<(Vec<u64>, &Cyclotomic)> = (0..phi.len())
        .filter(|&i| !phi.values[i].is_zero())
        .map(|i| (phi.coords(i), &phi.values[i]))
        .collect();
    for idx in 0..out.len() {
        let w = out.coords(idx);
        let mut acc = Cyclotomic::zero(phi.p, e);
        for (v, val) in &nonzero {
            // v = t pi^-L, w = s pi^-m, so v w = t s pi^-(L+m)
            let k = match phi.dim {
                1 => (v[0] * w[0]) % side,
                _ => (v[0] * w[1] % side + side - v[1] * w[0] % side) % side,
            };
            acc.add_scaled_rotated(val, &vol, k);
        }
        out.values[idx] = acc;
    }
    Ok(out)
}

/// Transform followed by a restriction to the requested window.
pub fn fourier_into(phi: &StepFunction, window: u32, level: u32) -> Result<StepFunction> {
    let f = fourier_finite(phi)?;
    if window >= f.window && level >= f.level {
        f.rewindow(window, level)
    } else {
        f.restrict(window, level)?.rewindow(window, level)
    }
}
