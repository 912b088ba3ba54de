//! Spatial (particle-number) entanglement that two localized two-level
//! probes pick up from an ideal Bose gas across the condensation transition.
//!
//! The pipeline runs
//! [`thermo`] (fugacity, λ, κ, n₀) → [`correlation`] (ρ₁, g) →
//! [`integrals`] (double integrals of ρ₁² over the probe spheres) →
//! [`probe`] (moments, 4×4 probe state, negativity, weighted entanglement).
//! [`montecarlo`] and [`modesum`] are brute-force oracles for the closed
//! forms.
//!
//! All densities are in cm⁻³ and lengths in cm; temperature enters only as
//! t = T/T_C. The physics modules are generic over [`Real`]; the aliases
//! below fix the scalar to `f64`.

pub mod correlation;
pub mod error;
pub mod integrals;
pub mod linalg;
pub mod modesum;
pub mod montecarlo;
pub mod polylog;
pub mod probe;
pub mod scalar;
pub mod thermo;

pub use correlation::{ConstantDensity, CorrelationKernel, RadialDensity};
pub use error::{Error, Result};
pub use integrals::{
    closed_form_integrals, i1_aa, i1_aa_above, i1_ab, i1_prime, IntegralMethod, IntegralSet, RegionSpec, Separation,
};
pub use modesum::{rho1_mode_sum, BoxSpec, ModeSum};
pub use montecarlo::{mc_oracle, McEstimate, Target};
pub use polylog::{polylog_three_halves, ZETA_THREE_HALVES};
pub use probe::{
    build_probe_state, compute_moments, false_entanglement, interaction_probability, negativity, negativity_spectral,
    partial_transpose_b, project_out_vacuum, weighted_entanglement, Moments, ProbeConfig, ProbeState,
};
pub use scalar::Real;
pub use thermo::{build_thermo_state, solve_fugacity, thermal_wavelength, GasSpec, ThermoState, ZetaConstant};

pub type GasSpec64 = thermo::GasSpec<f64>;
pub type ThermoState64 = thermo::ThermoState<f64>;
pub type CorrelationKernel64 = correlation::CorrelationKernel<f64>;
pub type RegionSpec64 = integrals::RegionSpec<f64>;
pub type IntegralSet64 = integrals::IntegralSet<f64>;
pub type Moments64 = probe::Moments<f64>;
pub type ProbeConfig64 = probe::ProbeConfig<f64>;
pub type ProbeState64 = probe::ProbeState<f64>;
