use crate::error::{Error, Result};
use crate::gauge::{gauss_residual, GaugeState};
use crate::io::{diagnostics_record, DiagnosticsRecord};

use super::integrator::{Stepper, WaveVars};
use super::EvolveConfig;

/// Receives the output stream of [`evolve_with`].
pub trait EvolveObserver {
    fn diagnostics(&mut self, rec: &DiagnosticsRecord) -> Result<()>;

    /// Called every `snapshot_stride` steps and at the final time.
    fn snapshot(&mut self, _state: &GaugeState, _step: usize) -> Result<()> {
        Ok(())
    }
}

impl EvolveObserver for Vec<DiagnosticsRecord> {
    fn diagnostics(&mut self, rec: &DiagnosticsRecord) -> Result<()> {
        self.push(*rec);
        Ok(())
    }
}

/// Relative Gauss residual accepted for initial data.
pub const INITIAL_GAUSS_TOLERANCE: f64 = 1e-8;

/// Number of steps and the effective step size covering `t_end`.
pub fn step_plan(cfg: &EvolveConfig) -> Result<(usize, f64)> {
    if !(cfg.dt > 0.0) || !(cfg.t_end > 0.0) {
        return Err(Error::Config(format!(
            "dt and t_end must be positive (dt = {}, t_end = {})",
            cfg.dt, cfg.t_end
        )));
    }
    let n = (cfg.t_end / cfg.dt - 1e-9).ceil().max(1.0) as usize;
    Ok((n, cfg.t_end / n as f64))
}

pub fn evolve(initial: &GaugeState, cfg: &EvolveConfig) -> Result<(GaugeState, Vec<DiagnosticsRecord>)> {
    let mut records = Vec::new();
    let last = evolve_with(initial, cfg, &mut records)?;
    Ok((last, records))
}

/// Runs from `initial.t` to `initial.t + t_end`, streaming diagnostics every
/// `diag_stride` steps (and at both ends).
pub fn evolve_with<O: EvolveObserver + ?Sized>(
    initial: &GaugeState,
    cfg: &EvolveConfig,
    observer: &mut O,
) -> Result<GaugeState> {
    initial.validate()?;
    let g0 = gauss_residual(initial);
    if g0.relative > INITIAL_GAUSS_TOLERANCE {
        return Err(Error::Precondition(format!(
            "initial data violate the Gauss constraint (relative residual {:.3e})",
            g0.relative
        )));
    }
    let (n, dt) = step_plan(cfg)?;
    let stepper = Stepper::new(initial.grid(), initial.mass, dt, cfg)?;
    let diag_stride = cfg.diag_stride.max(1);
    let snap_stride = cfg.snapshot_stride.max(1);

    let t0 = initial.t;
    let mut y = WaveVars::from_state(initial);
    observer.diagnostics(&diagnostics_record(initial, &cfg.diag_regularity))?;
    observer.snapshot(initial, 0)?;
    let mut state = initial.clone();
    for k in 1..=n {
        y = stepper.advance(&y);
        let t = t0 + k as f64 * dt;
        if !y.is_finite() {
            return Err(Error::BlowUp { t });
        }
        let diag_due = k % diag_stride == 0 || k == n;
        let snap_due = k % snap_stride == 0 || k == n;
        if diag_due || snap_due || k == n {
            state = y.to_state(initial, t);
        }
        if diag_due {
            let rec = diagnostics_record(&state, &cfg.diag_regularity);
            if !rec.is_finite() {
                return Err(Error::BlowUp { t });
            }
            observer.diagnostics(&rec)?;
        }
        if snap_due {
            observer.snapshot(&state, k)?;
        }
    }
    Ok(state)
}
