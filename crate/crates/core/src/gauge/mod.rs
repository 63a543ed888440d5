//! Gauge-state algebra: Helmholtz splitting, half-wave variables, the Gauss
//! constraint, null-form identities and the regularity hypotheses.

mod admissibility;
mod constraint;
mod halfwave;
mod helmholtz;
mod identities;
mod observables;
mod state;

pub use admissibility::{check_admissibility, AdmissibilityReport, RegularityTriple};
pub use constraint::{
    compatibility_curlfree, compatibility_mean_obstruction, curl_free_velocity, gauss_residual,
    gauss_residual_from_data, im_u_conj_v, neg_inv_laplace_grad, GaussResidual,
};
pub use halfwave::{halfwave_reconstruct, halfwave_split};
pub use helmholtz::{helmholtz_decompose, leray_project, pair_inner};
pub use identities::{
    df_potential, phi_grad_conj_phi, projected_current_nullform, transport_direct,
    transport_nullform, verify_null_identities, NullIdentityReport,
};
pub use observables::{observable_fields, ObservableFields};
pub(crate) use observables::{energy_and_charge, energy_parts};
pub use state::{GaugeState, Reconstructed, DEFAULT_EPS_TILDE};
