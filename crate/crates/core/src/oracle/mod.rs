//! Brute-force verification: exact valuation histograms of the relative
//! invariants over finite-level compact groups, their series, orbit
//! signatures and the Hecke eigen-relation.

pub mod cases;
pub mod enumerate;
pub mod hecke;
pub mod histogram;
pub mod matching;
pub mod ring;
pub mod signature;

pub use cases::{CaseRealization, IntMatrix};
pub use enumerate::{histogram_at_point, valuation_histogram, valuation_histogram_with, EnumOptions};
pub use histogram::{group_order, histogram_series, HistogramSeries, ValuationHistogram};
pub use ring::{legendre, Elem, Extension, PAdicConfig, ResidueRing};
pub use matching::{fit_across_levels, oracle_match, oracle_match_with, MatchReport};
pub use hecke::{hecke_eigen_check, hecke_eigen_check_with, HeckeReport};
pub use signature::{orbit_signature, Signature};
