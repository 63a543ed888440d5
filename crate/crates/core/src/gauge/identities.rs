//! Null-form representations of the quadratic terms.
//!
//! For divergence-free `A` and `phi = a + i b`:
//!
//! * `A_i d_i phi = Q12(phi, |grad|^{-1}(R_1 A_2 - R_2 A_1))`
//! * `P(phi grad conj(phi))_1 = -2i R_2 |grad|^{-1} Q12(a, b)`
//! * `P(phi grad conj(phi))_2 =  2i R_1 |grad|^{-1} Q12(a, b)`

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{dealiased_from_physical, null_form_q12, ops, FieldPair, SpectralField2D};

use super::helmholtz::leray_project;

/// Stream-function potential `|grad|^{-1}(R_1 a_2 - R_2 a_1)`.
pub fn df_potential(a_df: &FieldPair) -> SpectralField2D {
    let w = ops::riesz(&a_df[1], 1) - ops::riesz(&a_df[0], 2);
    let mut psi = ops::frac_grad(&w, -1.0);
    psi.set_real(a_df[0].is_real() && a_df[1].is_real());
    psi
}

/// Dealiased `A_i d_i phi`.
pub fn transport_direct(a: &FieldPair, phi: &SpectralField2D) -> SpectralField2D {
    let d1 = ops::partial(phi, 1).to_physical();
    let d2 = ops::partial(phi, 2).to_physical();
    let a1 = a[0].to_physical();
    let a2 = a[1].to_physical();
    let s: Vec<Complex64> = (0..d1.len()).map(|i| a1[i] * d1[i] + a2[i] * d2[i]).collect();
    dealiased_from_physical(*phi.grid(), &s, false)
}

/// `A^df_i d_i phi` through the null form.
pub fn transport_nullform(a_df: &FieldPair, phi: &SpectralField2D) -> SpectralField2D {
    null_form_q12(phi, &df_potential(a_df)).expect("fields share a grid")
}

/// Dealiased `phi d_j conj(phi)` for `j = 1, 2`.
pub fn phi_grad_conj_phi(phi: &SpectralField2D) -> FieldPair {
    let p = phi.to_physical();
    let g = *phi.grid();
    let comp = |j: u8| {
        let d = ops::partial(phi, j).to_physical();
        let s: Vec<Complex64> = p.iter().zip(&d).map(|(a, b)| a * b.conj()).collect();
        dealiased_from_physical(g, &s, false)
    };
    [comp(1), comp(2)]
}

/// `P(phi grad conj(phi))` through the null form.
pub fn projected_current_nullform(phi: &SpectralField2D) -> FieldPair {
    let q = null_form_q12(&phi.re(), &phi.im()).expect("fields share a grid");
    let w = ops::frac_grad(&q, -1.0);
    [
        ops::riesz(&w, 2) * Complex64::new(0.0, -2.0),
        ops::riesz(&w, 1) * Complex64::new(0.0, 2.0),
    ]
}

/// Discrepancies between both sides of each identity.
///
/// Each entry is `||lhs - rhs||_{L^2}` divided by the natural size of the
/// bilinear term, `||A||_{L^inf} ||grad phi||_{L^2}` or
/// `||phi||_{L^inf} ||grad phi||_{L^2}`, so sides that vanish identically
/// still give a meaningful number.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NullIdentityReport {
    pub transport: f64,
    pub current_1: f64,
    pub current_2: f64,
}

impl NullIdentityReport {
    pub fn max(&self) -> f64 {
        self.transport.max(self.current_1).max(self.current_2)
    }
}

fn linf(f: &SpectralField2D) -> f64 {
    f.to_physical().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn rel(diff: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

pub fn verify_null_identities(phi: &SpectralField2D, a_df: &FieldPair) -> Result<NullIdentityReport> {
    phi.ensure_same_grid(&a_df[0])?;
    phi.ensure_same_grid(&a_df[1])?;
    let h1 = (ops::bessel(&a_df[0], 1.0).l2_norm().powi(2)
        + ops::bessel(&a_df[1], 1.0).l2_norm().powi(2))
    .sqrt();
    let div = ops::div(a_df).l2_norm();
    if h1 > 0.0 && div > 1e-11 * h1 {
        return Err(Error::Precondition(format!(
            "a_df is not divergence-free (relative divergence {:.3e})",
            div / h1
        )));
    }
    let grad_phi = (ops::partial(phi, 1).l2_norm().powi(2) + ops::partial(phi, 2).l2_norm().powi(2)).sqrt();
    let a_inf = linf(&a_df[0]).max(linf(&a_df[1]));
    let phi_inf = linf(phi);

    let t_direct = transport_direct(a_df, phi);
    let t_null = transport_nullform(a_df, phi);
    let transport = rel((&t_direct - &t_null).l2_norm(), a_inf * grad_phi);

    let c_direct = leray_project(&phi_grad_conj_phi(phi));
    let c_null = projected_current_nullform(phi);
    let scale = phi_inf * grad_phi;
    Ok(NullIdentityReport {
        transport,
        current_1: rel((&c_direct[0] - &c_null[0]).l2_norm(), scale),
        current_2: rel((&c_direct[1] - &c_null[1]).l2_norm(), scale),
    })
}
