use crate::gauge::{leray_project, GaugeState};
use crate::spectral::random::random_field;
use crate::spectral::{ops, GridSpec};

/// Random band-limited state with divergence-free and curl-free parts.
pub(crate) fn random_state(g: GridSpec, kmax: i64, seed: u64, amp: f64) -> GaugeState {
    let phi = random_field(g, kmax, seed, false) * amp;
    let phi_t = random_field(g, kmax, seed + 1, false) * amp;
    let a = leray_project(&[
        random_field(g, kmax, seed + 2, true) * amp,
        random_field(g, kmax, seed + 3, true) * amp,
    ]);
    let a_t = leray_project(&[
        random_field(g, kmax, seed + 4, true) * amp,
        random_field(g, kmax, seed + 5, true) * amp,
    ]);
    let c = [
        ops::partial(&random_field(g, kmax, seed + 6, true), 1) * amp,
        ops::partial(&random_field(g, kmax, seed + 6, true), 2) * amp,
    ];
    GaugeState::from_fields(&phi, &phi_t, &a, &a_t, &c, 1.0).unwrap()
}
