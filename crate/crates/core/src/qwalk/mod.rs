//! Walk dynamics and localization observables.
//!
//! All time-dependent quantities use the exact spectral propagator
//! `e^{-iHt} = Σ_m e^{-iλ_m t} e_m e_mᵀ`. Long-time means are evaluated in
//! closed form from degeneracy and gap classes; [`oracle`] holds the slower
//! reference routes (finite-horizon quadrature, literal pair/quadruplet sums,
//! and an explicit ODE integrator) used to cross-check them.

mod dynamics;
mod longtime;
pub mod oracle;

pub use dynamics::{
    evolve, ipr, ipr_curve, ipr_of, probability_trajectory, transition_probability, AmplitudeVector,
};
pub use longtime::{
    ipr_gaps, longtime, longtime_ipr, longtime_transition_matrix, LongTimeResult, Warning,
};
