use num_complex::Complex64;

use crate::error::Result;
use crate::spectral::{dealiased_from_physical, ops, FieldPair, SpectralField2D};

use super::state::{GaugeState, Reconstructed};

/// Dealiased `Im(u * conj(v))`.
pub fn im_u_conj_v(u: &SpectralField2D, v: &SpectralField2D) -> SpectralField2D {
    let pu = u.to_physical();
    let pv = v.to_physical();
    let s: Vec<Complex64> = pu
        .iter()
        .zip(&pv)
        .map(|(a, b)| Complex64::new((a * b.conj()).im, 0.0))
        .collect();
    dealiased_from_physical(*u.grid(), &s, true)
}

/// `-(-Delta)^{-1} grad rho`; the mean of `rho` is dropped.
pub fn neg_inv_laplace_grad(rho: &SpectralField2D) -> FieldPair {
    let w = ops::inv_laplace(rho);
    let mut out = [-ops::partial(&w, 1), -ops::partial(&w, 2)];
    for o in &mut out {
        o.set_real(rho.is_real());
    }
    out
}

/// Curl-free part of the initial potential velocity fixed by the Gauss law:
/// `a'^cf = -(-Delta)^{-1} grad Im(phi0 conj(phi1))`.
pub fn compatibility_curlfree(phi0: &SpectralField2D, phi1: &SpectralField2D) -> Result<FieldPair> {
    phi0.ensure_same_grid(phi1)?;
    Ok(neg_inv_laplace_grad(&im_u_conj_v(phi0, phi1)))
}

/// Mean of `Im(phi0 conj(phi1))`: the part of the Gauss law no potential can
/// satisfy on the torus.
pub fn compatibility_mean_obstruction(phi0: &SpectralField2D, phi1: &SpectralField2D) -> f64 {
    im_u_conj_v(phi0, phi1).mean().re
}

/// `d_t A^cf` as prescribed by the curl-free evolution equation.
pub fn curl_free_velocity(rec: &Reconstructed) -> FieldPair {
    neg_inv_laplace_grad(&im_u_conj_v(&rec.phi, &rec.phi_t))
}

/// Gauss-law residual and its size.
#[derive(Debug, Clone)]
pub struct GaussResidual {
    /// `d^j F_{j0} + Im(phi conj(D_0 phi))` with `F_{j0} = -d_t A_j`.
    pub field: SpectralField2D,
    /// `L^2` norm with the mean mode removed.
    pub l2: f64,
    /// Spatial mean of the residual (torus obstruction; minus the charge per area).
    pub mean: f64,
    /// `l2` relative to the `L^2` size of the charge density (mean removed).
    pub relative: f64,
}

fn residual_from_parts(
    phi: &SpectralField2D,
    phi_t: &SpectralField2D,
    a_t: &FieldPair,
) -> GaussResidual {
    let rho = im_u_conj_v(phi, phi_t);
    let field = &rho - &ops::div(a_t);
    let l2 = field.without_mean().l2_norm();
    let scale = rho.without_mean().l2_norm() + ops::div(a_t).l2_norm();
    GaussResidual {
        mean: field.mean().re,
        relative: if scale > 0.0 { l2 / scale } else { l2 },
        l2,
        field,
    }
}

/// Gauss residual of a state; `d_t` fields come from the half-waves and the
/// curl-free evolution equation.
pub fn gauss_residual(state: &GaugeState) -> GaussResidual {
    let rec = state.reconstruct();
    let a_cf_t = curl_free_velocity(&rec);
    let a_t = [&rec.a_df_t[0] + &a_cf_t[0], &rec.a_df_t[1] + &a_cf_t[1]];
    residual_from_parts(&rec.phi, &rec.phi_t, &a_t)
}

/// Gauss residual of raw Cauchy data `(phi0, phi1, a')`.
pub fn gauss_residual_from_data(
    phi0: &SpectralField2D,
    phi1: &SpectralField2D,
    a_dot: &FieldPair,
) -> Result<GaussResidual> {
    phi0.ensure_same_grid(phi1)?;
    phi0.ensure_same_grid(&a_dot[0])?;
    Ok(residual_from_parts(phi0, phi1, a_dot))
}
