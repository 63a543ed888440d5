//! Nonlinear terms of the temporal-gauge system.
//!
//! Written as second-order equations the system reads
//!
//! * `phi_tt - Delta phi + m^2 phi = -F_phi`,
//!   `F_phi = -i (div A^cf) phi - 2i A.grad phi + |A|^2 phi`
//! * `A^df_tt - Delta A^df = P J`, `J = Im(phi grad conj(phi)) - A |phi|^2`
//! * `d_t A^cf = -(-Delta)^{-1} grad Im(phi conj(d_t phi))`
//!
//! In half-wave variables `(i d_t +- <grad>) u_pm = G_pm` with
//! `G_pm = -+ (1/2) <grad>^{-1} (F - u)`, where `F` collects every term
//! except `-Delta` on the right of `u_tt - Delta u = -F`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::gauge::{
    curl_free_velocity, leray_project, phi_grad_conj_phi, projected_current_nullform,
    transport_direct, transport_nullform, GaugeState, Reconstructed,
};
use crate::spectral::{dealiased_from_physical, ops, FieldPair, GridSpec, SpectralField2D};

/// Which representation of the quadratic `A^df` terms to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhsForm {
    #[default]
    Direct,
    /// `A^df . grad phi` and `P Im(phi grad conj(phi))` through `Q12`.
    Nullform,
}

impl std::str::FromStr for RhsForm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(RhsForm::Direct),
            "nullform" => Ok(RhsForm::Nullform),
            _ => Err(format!("unknown rhs form '{s}' (expected direct or nullform)")),
        }
    }
}

/// Forcings of the half-wave system plus the curl-free velocity.
#[derive(Debug, Clone)]
pub struct RhsTerms {
    pub a_cf_dot: FieldPair,
    pub a_df_plus: FieldPair,
    pub a_df_minus: FieldPair,
    pub phi_plus: SpectralField2D,
    pub phi_minus: SpectralField2D,
}

/// Second-order nonlinear terms.
pub(crate) struct Nonlinear {
    /// `F_phi` without the mass term.
    pub f_phi: SpectralField2D,
    /// `P J`.
    pub pj: FieldPair,
    pub a_cf_dot: FieldPair,
}

fn dealiased(g: GridSpec, s: Vec<Complex64>, real: bool) -> SpectralField2D {
    dealiased_from_physical(g, &s, real)
}

fn product(g: GridSpec, a: &[Complex64], b: &[Complex64], real: bool) -> SpectralField2D {
    dealiased(g, a.iter().zip(b).map(|(x, y)| x * y).collect(), real)
}

pub(crate) fn nonlinear_terms(
    rec: &Reconstructed,
    a_cf: &FieldPair,
    form: RhsForm,
) -> Nonlinear {
    let g = *rec.phi.grid();
    let phi = &rec.phi;
    let i = Complex64::new(0.0, 1.0);

    let phi_p = phi.to_physical();
    let dphi = [ops::partial(phi, 1).to_physical(), ops::partial(phi, 2).to_physical()];
    let acf = [a_cf[0].to_physical(), a_cf[1].to_physical()];
    let a_tot = [
        (&rec.a_df[0] + &a_cf[0]).to_physical(),
        (&rec.a_df[1] + &a_cf[1]).to_physical(),
    ];

    let t_df = match form {
        RhsForm::Direct => transport_direct(&rec.a_df, phi),
        RhsForm::Nullform => transport_nullform(&rec.a_df, phi),
    };
    let t_cf = dealiased(
        g,
        (0..g.len()).map(|k| acf[0][k] * dphi[0][k] + acf[1][k] * dphi[1][k]).collect(),
        false,
    );
    let div_cf = ops::div(a_cf).to_physical();
    let d_phi = product(g, &div_cf, &phi_p, false);
    let a_sq = dealiased(
        g,
        (0..g.len())
            .map(|k| Complex64::new(a_tot[0][k].norm_sqr() + a_tot[1][k].norm_sqr(), 0.0))
            .collect(),
        true,
    );
    let a_sq_phi = product(g, &a_sq.to_physical(), &phi_p, false);
    let f_phi = a_sq_phi - (d_phi + (t_df + t_cf) * 2.0) * i;

    let current = match form {
        RhsForm::Direct => {
            let w = phi_grad_conj_phi(phi);
            leray_project(&[w[0].im(), w[1].im()])
        }
        RhsForm::Nullform => {
            let w = projected_current_nullform(phi);
            [w[0].im(), w[1].im()]
        }
    };
    let rho2 = dealiased(g, phi_p.iter().map(|z| Complex64::new(z.norm_sqr(), 0.0)).collect(), true)
        .to_physical();
    let a_rho = leray_project(&[
        product(g, &a_tot[0], &rho2, true),
        product(g, &a_tot[1], &rho2, true),
    ]);
    let mut pj = [&current[0] - &a_rho[0], &current[1] - &a_rho[1]];
    pj.iter_mut().for_each(|f| f.set_real(true));

    Nonlinear {
        f_phi,
        pj,
        a_cf_dot: curl_free_velocity(rec),
    }
}

/// Forcings of the half-wave system for `state`.
///
/// The `-phi` and `-A^df` counterterms from rewriting `-Delta` as
/// `<grad>^2 - 1` are always included; with `m = 1` the scalar one cancels
/// against the mass term.
pub fn assemble_rhs(state: &GaugeState, form: RhsForm) -> RhsTerms {
    let rec = state.reconstruct();
    let nl = nonlinear_terms(&rec, &state.a_cf, form);
    let half = |f: &SpectralField2D| ops::bessel(f, -1.0) * 0.5;

    let m2 = state.mass * state.mass;
    let g_phi = half(&(nl.f_phi + &rec.phi * Complex64::new(m2 - 1.0, 0.0)));
    let g_a: Vec<SpectralField2D> = (0..2)
        .map(|j| half(&(-&nl.pj[j] - &rec.a_df[j])))
        .collect();
    RhsTerms {
        a_cf_dot: nl.a_cf_dot,
        phi_plus: -g_phi.clone(),
        phi_minus: g_phi,
        a_df_plus: [-g_a[0].clone(), -g_a[1].clone()],
        a_df_minus: [g_a[0].clone(), g_a[1].clone()],
    }
}

/// `d_t u_pm = +- i <grad> u_pm - i G_pm` for every half-wave component.
pub fn halfwave_time_derivative(state: &GaugeState, rhs: &RhsTerms) -> GaugeState {
    let i = Complex64::new(0.0, 1.0);
    let d = |u: &SpectralField2D, g: &SpectralField2D, sign: f64| {
        ops::bessel(u, 1.0) * (i * sign) - g * i
    };
    GaugeState {
        phi_plus: d(&state.phi_plus, &rhs.phi_plus, 1.0),
        phi_minus: d(&state.phi_minus, &rhs.phi_minus, -1.0),
        a_df_plus: [
            d(&state.a_df_plus[0], &rhs.a_df_plus[0], 1.0),
            d(&state.a_df_plus[1], &rhs.a_df_plus[1], 1.0),
        ],
        a_df_minus: [
            d(&state.a_df_minus[0], &rhs.a_df_minus[0], -1.0),
            d(&state.a_df_minus[1], &rhs.a_df_minus[1], -1.0),
        ],
        a_cf: rhs.a_cf_dot.clone(),
        ..state.clone()
    }
}

/// Largest relative difference between the forcings of two RHS evaluations.
pub fn rhs_relative_difference(a: &RhsTerms, b: &RhsTerms) -> f64 {
    let pa = rhs_fields(a);
    let pb = rhs_fields(b);
    pa.iter()
        .zip(&pb)
        .map(|(x, y)| {
            let scale = x.l2_norm().max(y.l2_norm());
            let d = (*x - *y).l2_norm();
            if scale > 0.0 {
                d / scale
            } else {
                d
            }
        })
        .fold(0.0, f64::max)
}

fn rhs_fields(r: &RhsTerms) -> [&SpectralField2D; 8] {
    [
        &r.phi_plus,
        &r.phi_minus,
        &r.a_df_plus[0],
        &r.a_df_plus[1],
        &r.a_df_minus[0],
        &r.a_df_minus[1],
        &r.a_cf_dot[0],
        &r.a_cf_dot[1],
    ]
}
