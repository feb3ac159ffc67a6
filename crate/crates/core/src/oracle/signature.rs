//! Orbit signatures: the classes of `f_i(x)` modulo squares (symmetric) or
//! norms (unramified hermitian).

use std::fmt;

use serde::Serialize;

use crate::case::CaseTag;
use crate::error::{Error, Result};

use super::cases::{int_valuation, CaseRealization, IntMatrix};
use super::ring::{legendre, PAdicConfig};

/// Class of one invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InvariantClass {
    /// Valuation modulo 2 (always 0 in the alternating case).
    pub parity: u8,
    /// Quadratic character of the unit part; symmetric case only.
    pub character: Option<i8>,
}

impl InvariantClass {
    pub fn is_trivial(&self) -> bool {
        self.parity == 0 && self.character.is_none_or(|c| c == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature(pub Vec<InvariantClass>);

impl Signature {
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(InvariantClass::is_trivial)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| match c.character {
                Some(ch) => format!("({},{})", c.parity, if ch == 1 { "+" } else { "-" }),
                None => format!("({})", c.parity),
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

pub fn orbit_signature(case: &CaseRealization, x: &IntMatrix, cfg: &PAdicConfig) -> Result<Signature> {
    case.check_config(cfg)?;
    case.validate_point(x)?;
    let mut out = Vec::with_capacity(case.n);
    for i in 1..=case.n {
        let f = case.exact_invariant(x, i, cfg.rho());
        let v = match int_valuation(f, cfg.p) {
            Some(v) if v < cfg.m as i32 => v,
            _ => return Err(Error::NotInOpenOrbit(i)),
        };
        let class = match case.tag {
            CaseTag::Alternating => InvariantClass { parity: 0, character: None },
            CaseTag::Hermitian => InvariantClass { parity: (v % 2) as u8, character: None },
            CaseTag::Symmetric => {
                let unit = f.0 / (cfg.p as i128).pow(v as u32);
                InvariantClass { parity: (v % 2) as u8, character: Some(legendre(unit, cfg.p) as i8) }
            }
        };
        out.push(class);
    }
    Ok(Signature(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(rows: Vec<Vec<i128>>) -> IntMatrix {
        IntMatrix { rows: rows.into_iter().map(|r| r.into_iter().map(|a| (a, 0)).collect()).collect() }
    }

    #[test]
    fn symmetric_rank_one_square_classes() {
        let c = CaseRealization::new(CaseTag::Symmetric, 1).unwrap();
        let cfg = c.config(3, 2).unwrap();
        let rho = cfg.rho() as i128;
        let a = orbit_signature(&c, &point(vec![vec![3]]), &cfg).unwrap();
        let b = orbit_signature(&c, &point(vec![vec![3 * rho]]), &cfg).unwrap();
        assert_ne!(a, b);
        assert!(orbit_signature(&c, &point(vec![vec![1]]), &cfg).unwrap().is_identity());
        assert!(matches!(orbit_signature(&c, &point(vec![vec![9]]), &cfg), Err(Error::NotInOpenOrbit(1))));
    }

    #[test]
    fn hermitian_uniformizer_is_nontrivial() {
        let c = CaseRealization::new(CaseTag::Hermitian, 1).unwrap();
        let cfg = c.config(5, 3).unwrap();
        let s = orbit_signature(&c, &point(vec![vec![5]]), &cfg).unwrap();
        assert!(!s.is_identity());
        assert!(orbit_signature(&c, &point(vec![vec![25]]), &cfg).unwrap().is_identity());
        assert_eq!(s.to_string(), "(1)");
    }
}
