//! Duhamel iteration `u^(n+1)(t) = S(t) u0 + int_0^t S(t - s) N(u^(n)(s)) ds`
//! on a uniform time grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{GaugeState, RegularityTriple};
use crate::norms::{curl_free_weighted_norm, sobolev_norm};

use super::integrator::{nonlinearity, ClassCoeffs, Coupling, Omega2, WaveVars};
use super::rhs::RhsForm;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PicardConfig {
    /// Length `T` of the time window.
    pub t_window: f64,
    pub n_iters: usize,
    /// Number of quadrature nodes including both ends; must be odd.
    pub quadrature_points: usize,
    pub rhs_form: RhsForm,
    /// Exponents of the distance between iterates.
    pub regularity: RegularityTriple,
}

impl Default for PicardConfig {
    fn default() -> Self {
        PicardConfig {
            t_window: 0.1,
            n_iters: 8,
            quadrature_points: 41,
            rhs_form: RhsForm::Direct,
            regularity: RegularityTriple::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PicardReport {
    /// `d_n = max_t dist(u^(n+1)(t), u^(n)(t))`, starting with `n = 0`.
    pub distances: Vec<f64>,
    /// Set when `d_n` increased three times in a row; iteration stops there.
    pub diverged: bool,
    /// Last iterate at `t = T`.
    pub final_state: GaugeState,
}

impl PicardReport {
    /// `d_{n+1} / d_n` for consecutive entries.
    pub fn ratios(&self) -> Vec<f64> {
        self.distances.windows(2).map(|w| w[1] / w[0]).collect()
    }
}

fn distance(x: &WaveVars, y: &WaveVars, reg: &RegularityTriple) -> f64 {
    let d = |a: &crate::spectral::SpectralField2D, b: &crate::spectral::SpectralField2D, s: f64| {
        sobolev_norm(&(a - b), s, false).powi(2)
    };
    let mut sum = d(&x.phi[0], &y.phi[0], reg.s) + d(&x.phi[1], &y.phi[1], reg.s - 1.0);
    for j in 0..2 {
        sum += d(&x.a[j][0], &y.a[j][0], reg.r) + d(&x.a[j][1], &y.a[j][1], reg.r - 1.0);
        sum += curl_free_weighted_norm(&(&x.c[j] - &y.c[j]), reg.l, reg.eps_tilde).powi(2);
    }
    sum.sqrt()
}

/// Cumulative quadrature weights: row `i` integrates over `[t_0, t_i]`.
///
/// Even nodes use composite Simpson; odd nodes add the quadratic
/// interpolant over the first half of the next panel.
fn cumulative_weights(m: usize, h: f64) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![0.0; m]; m];
    for i in 1..m {
        let (prev, cur) = rows.split_at_mut(i);
        let base = if i % 2 == 0 { i - 2 } else { i - 1 };
        cur[0].copy_from_slice(&prev[base]);
        let w = &mut cur[0];
        if i % 2 == 0 {
            w[i - 2] += h / 3.0;
            w[i - 1] += 4.0 * h / 3.0;
            w[i] += h / 3.0;
        } else {
            // odd m: every odd node has a right neighbour
            w[i - 1] += 5.0 * h / 12.0;
            w[i] += 8.0 * h / 12.0;
            w[i + 1] -= h / 12.0;
        }
    }
    rows
}

pub fn picard_iterate(initial: &GaugeState, cfg: &PicardConfig) -> Result<PicardReport> {
    initial.validate()?;
    let m = cfg.quadrature_points;
    if m < 3 || m % 2 == 0 {
        return Err(Error::Config(format!("quadrature_points must be odd and >= 3, got {m}")));
    }
    if !(cfg.t_window > 0.0) || cfg.n_iters == 0 {
        return Err(Error::Config("t_window and n_iters must be positive".into()));
    }
    let grid = *initial.grid();
    let h = cfg.t_window / (m - 1) as f64;
    let w2 = Omega2::new(&grid, initial.mass, Coupling::Full);
    let forward: Vec<ClassCoeffs> = (0..m).map(|i| ClassCoeffs::build(0, i as f64 * h, 1.0, &w2)).collect();
    let backward: Vec<ClassCoeffs> = (0..m).map(|i| ClassCoeffs::build(0, -(i as f64) * h, 1.0, &w2)).collect();
    let weights = cumulative_weights(m, h);

    let y0 = WaveVars::from_state(initial);
    let mut iterate: Vec<WaveVars> = forward.iter().map(|e| e.apply(&y0)).collect();
    let mut distances = Vec::new();
    let mut rising = 0;
    let mut diverged = false;
    for _ in 0..cfg.n_iters {
        // interaction picture integrand S(-s) N(u(s))
        let integrand: Vec<WaveVars> = iterate
            .par_iter()
            .zip(backward.par_iter())
            .map(|(u, back)| back.apply(&nonlinearity(u, cfg.rhs_form, Coupling::Full)))
            .collect();
        let next: Vec<WaveVars> = (0..m)
            .into_par_iter()
            .map(|i| {
                let mut acc = y0.clone();
                for (j, w) in weights[i].iter().enumerate() {
                    if *w != 0.0 {
                        acc.axpy(*w, &integrand[j]);
                    }
                }
                let mut u = forward[i].apply(&acc);
                u.enforce_real();
                u
            })
            .collect();
        let d = iterate
            .iter()
            .zip(&next)
            .map(|(a, b)| distance(a, b, &cfg.regularity))
            .fold(0.0, f64::max);
        if !d.is_finite() {
            return Err(Error::BlowUp { t: cfg.t_window });
        }
        if let Some(&prev) = distances.last() {
            rising = if d > prev { rising + 1 } else { 0 };
        }
        distances.push(d);
        iterate = next;
        if rising >= 3 {
            diverged = true;
            break;
        }
    }
    let final_state = iterate[m - 1].to_state(initial, initial.t + cfg.t_window);
    Ok(PicardReport {
        distances,
        diverged,
        final_state,
    })
}
