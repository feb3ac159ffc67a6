//! Exact closed forms for spherical functions on p-adic spaces of alternating
//! and hermitian forms, together with a finite-level enumeration oracle that
//! checks them by counting.

pub mod algebra;
pub mod case;
pub mod error;
pub mod hall_littlewood;
pub mod oracle;
pub mod pv_zeta;
pub mod spherical;
pub mod suite;
pub mod weyl;

pub use case::CaseTag;
pub use error::{Error, Result};
