//! Moutard transformation of the two-dimensional Schrödinger operator
//! `H = −4∂̄∂ + U` seeded by polynomials.
//!
//! * [`cpoly`]: monic complex polynomials, derivatives, Aberth–Ehrlich roots.
//! * [`wirtinger`]: finite-difference `∂`, `∂̄` and Laplacian.
//! * [`transform`]: the transformation, the multi-point delta potential it
//!   produces, the closed-form Faddeev eigenfunctions and their checks.
//! * [`scattering`]: fitting the generalized scattering data `(a, b)`.
//! * [`flow`]: exact Novikov–Veselov evolution of the generator and its roots.

pub mod cpoly;
pub mod error;
pub mod flow;
pub mod transform;
pub mod scattering;
pub mod wirtinger;

pub use cpoly::{min_root_separation, ComplexPoly, Poly, RootSet};
pub use error::{Error, Result};
pub use flow::{CollisionEvent, FlowSign, FlowState, NvFlow, RootTrajectory};
pub use transform::{
    faddeev_psi, gauge_shift, harmonicity_check, moutard_residual, smooth_moutard_potential,
    transformed_potential, verify_eigenfunction_identity, DeltaPotential, FaddeevParams,
    SmoothMoutardInput,
};
pub use num_complex::Complex64;
pub use scattering::{count_deltas, expected_a, fit_scattering, sample_mu, ScatteringEstimate};
pub use wirtinger::StencilConfig;
