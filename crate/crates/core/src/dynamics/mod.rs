//! Time evolution of the half-wave system: right-hand sides, exponential
//! integrators, the Duhamel iteration and conserved quantities.

mod conserved;
mod evolve;
mod integrator;
mod linear;
mod picard;
mod rhs;
#[cfg(test)]
pub(crate) mod testutil;

use serde::{Deserialize, Serialize};

use crate::gauge::RegularityTriple;

pub use conserved::conserved_quantities;
pub use evolve::{evolve, evolve_with, step_plan, EvolveObserver, INITIAL_GAUSS_TOLERANCE};
pub use integrator::{step, Coupling, Integrator, Stepper};
pub use picard::{picard_iterate, PicardConfig, PicardReport};
pub use rhs::{assemble_rhs, halfwave_time_derivative, rhs_relative_difference, RhsForm, RhsTerms};

/// Default bound on `|dt| * max <xi>`.
pub const DEFAULT_CFL: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveConfig {
    pub dt: f64,
    pub t_end: f64,
    pub rhs_form: RhsForm,
    pub integrator: Integrator,
    pub snapshot_stride: usize,
    pub diag_stride: usize,
    pub cfl: f64,
    pub coupling: Coupling,
    /// Exponents of the norms recorded in the diagnostics.
    pub diag_regularity: RegularityTriple,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        EvolveConfig {
            dt: 1e-3,
            t_end: 1.0,
            rhs_form: RhsForm::Direct,
            integrator: Integrator::EtdRk4,
            snapshot_stride: 100,
            diag_stride: 10,
            cfl: DEFAULT_CFL,
            coupling: Coupling::Full,
            diag_regularity: RegularityTriple::default(),
        }
    }
}
