//! Finite-level Fourier transforms and zeta integrals on small
//! prehomogeneous vector spaces: exact cyclotomic arithmetic, step
//! functions, the Tate gamma factor and the scaling identity.

pub mod cyclotomic;
pub mod step;
pub mod zeta;

pub use cyclotomic::Cyclotomic;
pub use step::{fourier_finite, fourier_into, StepFunction};
pub use zeta::{
    conductor_correction, gamma_extract, scaling_check, standard_test_functions, tate_gamma_expected, tate_report,
    zeta_step, GammaReport, PVContext, ScalingReport,
};
