use num_complex::Complex64;

use crate::spectral::{dealiased_from_physical, ops, FieldPair, SpectralField2D};

use super::constraint::{curl_free_velocity, gauss_residual};
use super::state::GaugeState;

/// Gauge-covariant quantities of a state, all real-valued fields.
#[derive(Debug, Clone)]
pub struct ObservableFields {
    /// Magnetic curvature `F_12 = d_1 A_2 - d_2 A_1`.
    pub f12: SpectralField2D,
    /// `F_{j0} = -d_t A_j`.
    pub e_field: FieldPair,
    pub gauss_residual_field: SpectralField2D,
    pub energy_density: SpectralField2D,
    pub charge_density: SpectralField2D,
}

/// Dealiased building blocks shared by the densities and the integrals.
pub(crate) struct EnergyParts {
    pub a_t: FieldPair,
    pub f12: SpectralField2D,
    /// `D_j phi = d_j phi + i A_j phi`
    pub cov_grad: FieldPair,
    pub phi: SpectralField2D,
    pub phi_t: SpectralField2D,
}

pub(crate) fn energy_parts(state: &GaugeState) -> EnergyParts {
    let rec = state.reconstruct();
    let a_cf_t = curl_free_velocity(&rec);
    let mut a_t = [&rec.a_df_t[0] + &a_cf_t[0], &rec.a_df_t[1] + &a_cf_t[1]];
    a_t.iter_mut().for_each(|f| f.set_real(true));
    let a = state.potential();
    let mut f12 = ops::curl(&a);
    f12.set_real(true);
    let g = *state.grid();
    let phi_phys = rec.phi.to_physical();
    let cov = |j: usize| {
        let aj = a[j].to_physical();
        let s: Vec<Complex64> = aj.iter().zip(&phi_phys).map(|(x, p)| x * p).collect();
        let a_phi = dealiased_from_physical(g, &s, false);
        ops::partial(&rec.phi, j as u8 + 1) + a_phi * Complex64::new(0.0, 1.0)
    };
    EnergyParts {
        cov_grad: [cov(0), cov(1)],
        a_t,
        f12,
        phi: rec.phi,
        phi_t: rec.phi_t,
    }
}

fn sq(f: &SpectralField2D) -> f64 {
    f.l2_norm().powi(2)
}

/// `E = 1/2 int |d_t A|^2 + F_12^2 + |D phi|^2 + |d_t phi|^2 + m^2 |phi|^2`
/// and `Q = int Im(conj(phi) d_t phi)`, both via Plancherel.
pub(crate) fn energy_and_charge(parts: &EnergyParts, mass: f64) -> (f64, f64) {
    let e = 0.5
        * (sq(&parts.a_t[0])
            + sq(&parts.a_t[1])
            + sq(&parts.f12)
            + sq(&parts.cov_grad[0])
            + sq(&parts.cov_grad[1])
            + sq(&parts.phi_t)
            + mass * mass * sq(&parts.phi));
    let q = parts.phi.inner(&parts.phi_t).im;
    (e, q)
}

pub fn observable_fields(state: &GaugeState) -> ObservableFields {
    let p = energy_parts(state);
    let g = *state.grid();
    let phys = |f: &SpectralField2D| f.to_physical();
    let (at1, at2, f12, d1, d2, phi, phit) = (
        phys(&p.a_t[0]),
        phys(&p.a_t[1]),
        phys(&p.f12),
        phys(&p.cov_grad[0]),
        phys(&p.cov_grad[1]),
        phys(&p.phi),
        phys(&p.phi_t),
    );
    let m2 = state.mass * state.mass;
    let energy: Vec<Complex64> = (0..g.len())
        .map(|i| {
            let e = 0.5
                * (at1[i].re.powi(2)
                    + at2[i].re.powi(2)
                    + f12[i].re.powi(2)
                    + d1[i].norm_sqr()
                    + d2[i].norm_sqr()
                    + phit[i].norm_sqr()
                    + m2 * phi[i].norm_sqr());
            Complex64::new(e, 0.0)
        })
        .collect();
    let charge: Vec<Complex64> = (0..g.len())
        .map(|i| Complex64::new((phi[i].conj() * phit[i]).im, 0.0))
        .collect();
    ObservableFields {
        e_field: [-p.a_t[0].clone(), -p.a_t[1].clone()],
        f12: p.f12,
        gauss_residual_field: gauss_residual(state).field,
        energy_density: dealiased_from_physical(g, &energy, true),
        charge_density: dealiased_from_physical(g, &charge, true),
    }
}
