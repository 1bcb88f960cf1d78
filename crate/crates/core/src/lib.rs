//! Tetrad gravity as a constrained SO(1,3) gauge theory.
//!
//! The crate evaluates, in coordinates and at a single spacetime point,
//! every object of the construction:
//!
//! * [`tensor`]: permutation symbol, Minkowski metric, pair-index storage.
//! * [`frame`]: metric, spin connection and curvature of a tetrad, and the
//!   residuals of the first-order frame field equations.
//! * [`phase`]: momenta, so(1,3) structure constants, the quadratic
//!   Hamiltonian, its Legendre pair, `Θ_h` and the Hamilton–De Donder
//!   residuals.
//! * [`immersion`]: the map from frames to momenta, its Jacobian and rank,
//!   the pull-back of `Θ_h` and Lorentz covariance.
//! * [`catalog`]: analytic test fields (Minkowski, Schwarzschild, a
//!   conformally flat negative control) sampled into jets.
//! * [`random`]: seeded generators for randomized checks.

pub mod catalog;
pub mod error;
pub mod frame;
pub mod immersion;
pub mod phase;
pub mod random;
pub mod tensor;

pub use catalog::{make_field, sample_jet, AnalyticField, DerivativeMode, FieldKind};
pub use error::{Error, Result};
pub use frame::{
    admissibility_residual, curvature_from_connection, einstein_residual, frame_field_residual, inverse_tetrad,
    metric_from_tetrad, spin_connection, spin_connection_gradient, Curvature, FieldJet, Momenta, Residual,
    SpinConnection, Tetrad,
};
pub use immersion::{
    immerse, immersion_jacobian, immersion_rank, lorentz_equivariance_check, phase_jet_from_field_jet,
    pullback_theta_check, symbolic_immersion_identities, LorentzTransform,
};
pub use phase::{
    hamiltonian, hamiltonian_gradient, hdd_residuals, inverse_legendre, lagrangian_closed_form, lagrangian_via_h3,
    legendre, structure_constants, theta_h_coefficients, PhaseJet, StructureConstants,
};
pub use tensor::{epsilon_pair_contraction, eta, levi_civita, pair_decode, pair_encode, Index, PairIndex};
