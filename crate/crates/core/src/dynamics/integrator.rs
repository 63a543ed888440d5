use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{halfwave_split, GaugeState, Reconstructed};
use crate::spectral::{FieldPair, GridSpec, SpectralField2D};

use super::linear::{omega_squared, PairCoeffs};
use super::rhs::{nonlinear_terms, RhsForm};
use super::EvolveConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    /// Cox-Matthews exponential RK4 with the linear part integrated exactly.
    #[default]
    EtdRk4,
    /// Half linear step, classical RK4 on the nonlinearity, half linear step.
    Strang,
}

impl std::str::FromStr for Integrator {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "etd_rk4" | "etdrk4" => Ok(Integrator::EtdRk4),
            "strang" => Ok(Integrator::Strang),
            _ => Err(format!("unknown integrator '{s}' (expected etd_rk4 or strang)")),
        }
    }
}

/// Which terms drive the evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// The full system.
    #[default]
    Full,
    /// Only the half-wave operators `exp(+- i <grad> t)`: every forcing,
    /// including the mass counterterms, is switched off.
    LinearOnly,
}

/// Second-order variables `(u, u_t)` for the wave components and the
/// curl-free potential.
#[derive(Debug, Clone)]
pub(crate) struct WaveVars {
    pub phi: [SpectralField2D; 2],
    pub a: [[SpectralField2D; 2]; 2],
    pub c: FieldPair,
}

impl WaveVars {
    pub fn from_state(s: &GaugeState) -> Self {
        let r = s.reconstruct();
        let [a1, a2] = r.a_df;
        let [a1t, a2t] = r.a_df_t;
        WaveVars {
            phi: [r.phi, r.phi_t],
            a: [[a1, a1t], [a2, a2t]],
            c: s.a_cf.clone(),
        }
    }

    pub fn to_state(&self, template: &GaugeState, t: f64) -> GaugeState {
        let (phi_plus, phi_minus) =
            halfwave_split(&self.phi[0], &self.phi[1]).expect("components share a grid");
        let (p1, m1) = halfwave_split(&self.a[0][0], &self.a[0][1]).expect("components share a grid");
        let (p2, m2) = halfwave_split(&self.a[1][0], &self.a[1][1]).expect("components share a grid");
        GaugeState {
            phi_plus,
            phi_minus,
            a_df_plus: [p1, p2],
            a_df_minus: [m1, m2],
            a_cf: self.c.clone(),
            t,
            ..template.clone()
        }
    }

    pub fn zeros(g: GridSpec) -> Self {
        let z = SpectralField2D::zeros(g);
        WaveVars {
            phi: [z.clone(), z.clone()],
            a: [[z.clone(), z.clone()], [z.clone(), z.clone()]],
            c: [z.clone(), z],
        }
    }

    pub fn reconstructed(&self) -> Reconstructed {
        Reconstructed {
            phi: self.phi[0].clone(),
            phi_t: self.phi[1].clone(),
            a_df: [self.a[0][0].clone(), self.a[1][0].clone()],
            a_df_t: [self.a[0][1].clone(), self.a[1][1].clone()],
        }
    }

    pub fn fields(&self) -> [&SpectralField2D; 8] {
        [
            &self.phi[0],
            &self.phi[1],
            &self.a[0][0],
            &self.a[0][1],
            &self.a[1][0],
            &self.a[1][1],
            &self.c[0],
            &self.c[1],
        ]
    }

    fn fields_mut(&mut self) -> [&mut SpectralField2D; 8] {
        let [p0, p1] = &mut self.phi;
        let [[a0, a0t], [a1, a1t]] = &mut self.a;
        let [c0, c1] = &mut self.c;
        [p0, p1, a0, a0t, a1, a1t, c0, c1]
    }

    /// `self += alpha * x`
    pub fn axpy(&mut self, alpha: f64, x: &WaveVars) {
        for (d, s) in self.fields_mut().into_iter().zip(x.fields()) {
            for (a, b) in d.coeffs_mut().iter_mut().zip(s.coeffs()) {
                *a += b * alpha;
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|f| f.is_finite())
    }

    /// Removes roundoff drift away from real-valued potentials.
    pub fn enforce_real(&mut self) {
        for pair in self.a.iter_mut() {
            pair.iter_mut().for_each(|f| f.make_real());
        }
        self.c.iter_mut().for_each(|f| f.make_real());
    }
}

/// Linear-operator tables for the two frequency classes.
#[derive(Debug, Clone)]
pub(crate) struct ClassCoeffs {
    pub phi: PairCoeffs,
    pub a: PairCoeffs,
    /// Multiplier for the first-order curl-free component.
    pub c: f64,
}

impl ClassCoeffs {
    pub fn build(k: usize, tau: f64, scale: f64, w2: &Omega2) -> Self {
        let c = scale / (1..=k).map(|x| x as f64).product::<f64>();
        ClassCoeffs {
            phi: PairCoeffs::phi(k, tau, &w2.phi, scale),
            a: PairCoeffs::phi(k, tau, &w2.a, scale),
            c,
        }
    }

    fn combine(parts: &[(f64, &ClassCoeffs)]) -> Self {
        let phi: Vec<(f64, &PairCoeffs)> = parts.iter().map(|(c, p)| (*c, &p.phi)).collect();
        let a: Vec<(f64, &PairCoeffs)> = parts.iter().map(|(c, p)| (*c, &p.a)).collect();
        ClassCoeffs {
            phi: PairCoeffs::combine(&phi),
            a: PairCoeffs::combine(&a),
            c: parts.iter().map(|(c, p)| c * p.c).sum(),
        }
    }

    pub fn apply(&self, y: &WaveVars) -> WaveVars {
        WaveVars {
            phi: self.phi.apply(&y.phi),
            a: [self.a.apply(&y.a[0]), self.a.apply(&y.a[1])],
            c: [&y.c[0] * self.c, &y.c[1] * self.c],
        }
    }

    pub fn apply_add(&self, y: &WaveVars, out: &mut WaveVars) {
        self.phi.apply_add(&y.phi, &mut out.phi);
        self.a.apply_add(&y.a[0], &mut out.a[0]);
        self.a.apply_add(&y.a[1], &mut out.a[1]);
        for (o, s) in out.c.iter_mut().zip(&y.c) {
            for (a, b) in o.coeffs_mut().iter_mut().zip(s.coeffs()) {
                *a += b * self.c;
            }
        }
    }
}

/// Squared linear frequencies of the scalar and the potential.
#[derive(Debug, Clone)]
pub(crate) struct Omega2 {
    pub phi: Vec<f64>,
    pub a: Vec<f64>,
}

impl Omega2 {
    pub fn new(grid: &GridSpec, mass: f64, coupling: Coupling) -> Self {
        match coupling {
            Coupling::Full => Omega2 {
                phi: omega_squared(grid, mass),
                a: omega_squared(grid, 0.0),
            },
            Coupling::LinearOnly => Omega2 {
                phi: omega_squared(grid, 1.0),
                a: omega_squared(grid, 1.0),
            },
        }
    }
}

/// Nonlinear part of `d_t (u, u_t)`.
pub(crate) fn nonlinearity(y: &WaveVars, form: RhsForm, coupling: Coupling) -> WaveVars {
    let g = *y.phi[0].grid();
    if coupling == Coupling::LinearOnly {
        return WaveVars::zeros(g);
    }
    let nl = nonlinear_terms(&y.reconstructed(), &y.c, form);
    let z = SpectralField2D::zeros(g);
    let [pj1, pj2] = nl.pj;
    WaveVars {
        phi: [z.clone(), -nl.f_phi],
        a: [[z.clone(), pj1], [z, pj2]],
        c: nl.a_cf_dot,
    }
}

/// Precomputed single-step propagator for a fixed `dt`.
#[derive(Debug, Clone)]
pub struct Stepper {
    dt: f64,
    form: RhsForm,
    coupling: Coupling,
    integrator: Integrator,
    half_exp: ClassCoeffs,
    half_phi1: ClassCoeffs,
    full_exp: ClassCoeffs,
    f1: ClassCoeffs,
    f2: ClassCoeffs,
    f3: ClassCoeffs,
}

impl Stepper {
    pub fn new(grid: &GridSpec, mass: f64, dt: f64, cfg: &EvolveConfig) -> Result<Self> {
        check_cfl(grid, dt, cfg.cfl)?;
        let w2 = Omega2::new(grid, mass, cfg.coupling);
        let h = dt;
        let p = |k: usize| ClassCoeffs::build(k, h, h, &w2);
        let (p1, p2, p3) = (p(1), p(2), p(3));
        Ok(Stepper {
            dt,
            form: cfg.rhs_form,
            coupling: cfg.coupling,
            integrator: cfg.integrator,
            half_exp: ClassCoeffs::build(0, h / 2.0, 1.0, &w2),
            half_phi1: ClassCoeffs::build(1, h / 2.0, h / 2.0, &w2),
            full_exp: ClassCoeffs::build(0, h, 1.0, &w2),
            f1: ClassCoeffs::combine(&[(1.0, &p1), (-3.0, &p2), (4.0, &p3)]),
            f2: ClassCoeffs::combine(&[(2.0, &p2), (-4.0, &p3)]),
            f3: ClassCoeffs::combine(&[(-1.0, &p2), (4.0, &p3)]),
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn n(&self, y: &WaveVars) -> WaveVars {
        nonlinearity(y, self.form, self.coupling)
    }

    pub(crate) fn advance(&self, y: &WaveVars) -> WaveVars {
        let mut out = match self.integrator {
            Integrator::EtdRk4 => self.etd_rk4(y),
            Integrator::Strang => self.strang(y),
        };
        out.enforce_real();
        out
    }

    fn etd_rk4(&self, y: &WaveVars) -> WaveVars {
        let nu = self.n(y);
        let ey = self.half_exp.apply(y);

        let mut a = ey.clone();
        self.half_phi1.apply_add(&nu, &mut a);
        let na = self.n(&a);

        let mut b = ey;
        self.half_phi1.apply_add(&na, &mut b);
        let nb = self.n(&b);

        let mut c = self.half_exp.apply(&a);
        let mut src = nb.clone();
        src.axpy(1.0, &nb);
        src.axpy(-1.0, &nu);
        self.half_phi1.apply_add(&src, &mut c);
        let nc = self.n(&c);

        let mut out = self.full_exp.apply(y);
        self.f1.apply_add(&nu, &mut out);
        let mut nab = na;
        nab.axpy(1.0, &nb);
        self.f2.apply_add(&nab, &mut out);
        self.f3.apply_add(&nc, &mut out);
        out
    }

    fn strang(&self, y: &WaveVars) -> WaveVars {
        let h = self.dt;
        let y1 = self.half_exp.apply(y);
        let k1 = self.n(&y1);
        let mut t = y1.clone();
        t.axpy(h / 2.0, &k1);
        let k2 = self.n(&t);
        let mut t = y1.clone();
        t.axpy(h / 2.0, &k2);
        let k3 = self.n(&t);
        let mut t = y1.clone();
        t.axpy(h, &k3);
        let k4 = self.n(&t);
        let mut y2 = y1;
        y2.axpy(h / 6.0, &k1);
        y2.axpy(h / 3.0, &k2);
        y2.axpy(h / 3.0, &k3);
        y2.axpy(h / 6.0, &k4);
        self.half_exp.apply(&y2)
    }
}

pub(crate) fn check_cfl(grid: &GridSpec, dt: f64, cfl: f64) -> Result<()> {
    let c = dt.abs() * grid.max_bracket_xi();
    if !dt.is_finite() || dt == 0.0 {
        return Err(Error::Precondition(format!("time step must be finite and nonzero, got {dt}")));
    }
    if c > cfl {
        return Err(Error::Precondition(format!(
            "|dt| * max <xi> = {c:.3} exceeds the stability bound {cfl}"
        )));
    }
    Ok(())
}

/// Advances `state` by `cfg.dt` (which may be negative).
pub fn step(state: &GaugeState, cfg: &EvolveConfig) -> Result<GaugeState> {
    state.ensure_consistent()?;
    let stepper = Stepper::new(state.grid(), state.mass, cfg.dt, cfg)?;
    let y = stepper.advance(&WaveVars::from_state(state));
    let t = state.t + cfg.dt;
    if !y.is_finite() {
        return Err(Error::BlowUp { t });
    }
    Ok(y.to_state(state, t))
}
