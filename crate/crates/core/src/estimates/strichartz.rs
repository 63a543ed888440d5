//! Mixed-norm estimates for free half-waves `u = e^{it|D|} u0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{mixed_norm, xsb_norm, MixedOrder, SpaceTimeField, TimeWindow, XsbSpec, DEFAULT_EPS};
use crate::spectral::SpectralField2D;

/// Temporal sampling shared by every field of one analysis batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub nt: usize,
    pub t_span: f64,
    /// First sample time; the window covers `[t_start, t_start + t_span)`.
    pub t_start: f64,
    pub window: TimeWindow,
}

impl Default for TimeGrid {
    fn default() -> Self {
        TimeGrid::centered(128, 6.0, TimeWindow::RaisedCosine)
    }
}

impl TimeGrid {
    /// Window of length `t_span` centred on `t = 0`.
    pub fn centered(nt: usize, t_span: f64, window: TimeWindow) -> Self {
        TimeGrid {
            nt,
            t_span,
            t_start: -0.5 * t_span,
            window,
        }
    }

    pub fn time(&self, j: usize) -> f64 {
        self.t_start + j as f64 * self.t_span / self.nt as f64
    }
}

/// Samples `e^{it|D|} u0` on the time grid, exact per mode.
pub fn free_wave(u0: &SpectralField2D, t_grid: &TimeGrid) -> Result<SpaceTimeField> {
    let t0 = t_grid.t_start;
    SpaceTimeField::from_fn(*u0.grid(), t_grid.nt, t_grid.t_span, t_grid.window, |t| {
        u0.map_modes(|xi, c| c * Complex64::from_polar(1.0, (t0 + t) * xi[0].hypot(xi[1])))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrichartzVariant {
    /// `L^6_{xt}` against `X^{1/2, 1/2+}`.
    #[serde(rename = "strichartz_L6xt")]
    StrichartzL6xt,
    /// `L^p_x L^2_t` against `X^{(1/2)(1/2-1/p), (3/2)(1/2-1/p)+}`.
    LpL2,
    /// `L^p_x L^{2+}_t` against `X^{(1/2)(1/2-1/p)+, (3/2)(1/2-1/p)+}`.
    LpL2plus,
}

impl std::str::FromStr for StrichartzVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strichartz_L6xt" | "strichartz_l6xt" => Ok(StrichartzVariant::StrichartzL6xt),
            "lp_l2" => Ok(StrichartzVariant::LpL2),
            "lp_l2plus" => Ok(StrichartzVariant::LpL2plus),
            other => Err(Error::Config(format!("unknown Strichartz variant {other:?}"))),
        }
    }
}

/// Left-hand mixed norm and right-hand `X^{s,b}` norm (wave weight) of a variant.
pub fn strichartz_sides(u: &SpaceTimeField, p: f64, variant: StrichartzVariant, eps: f64) -> Result<(f64, f64)> {
    if !(2.0..=6.0).contains(&p) {
        return Err(Error::Precondition(format!("p = {p} outside [2, 6]")));
    }
    let theta = 0.5 - 1.0 / p;
    let (lhs, spec) = match variant {
        StrichartzVariant::StrichartzL6xt => (
            mixed_norm(u, 6.0, 6.0, MixedOrder::XThenT),
            XsbSpec::wave(0.5, 0.5 + eps),
        ),
        StrichartzVariant::LpL2 => (
            mixed_norm(u, p, 2.0, MixedOrder::TThenX),
            XsbSpec::wave(0.5 * theta, 1.5 * theta + eps),
        ),
        StrichartzVariant::LpL2plus => (
            mixed_norm(u, p, 2.0 + eps, MixedOrder::TThenX),
            XsbSpec::wave(0.5 * theta + eps, 1.5 * theta + eps),
        ),
    };
    let spec = spec.with_eps(eps);
    spec.validate()?;
    Ok((lhs, xsb_norm(u, &spec)))
}

/// Ratio of the two sides for the free wave launched by `u0`.
pub fn strichartz_tataru_ratio(
    u0: &SpectralField2D,
    p: f64,
    variant: StrichartzVariant,
    t_grid: &TimeGrid,
    eps: f64,
) -> Result<f64> {
    let u = free_wave(u0, t_grid)?;
    let (lhs, rhs) = strichartz_sides(&u, p, variant, eps)?;
    if rhs == 0.0 {
        return Err(Error::Degenerate("zero X^{s,b} norm".into()));
    }
    Ok(lhs / rhs)
}

/// Same as [`strichartz_tataru_ratio`] with the default `eps`.
pub fn strichartz_tataru_ratio_default(u0: &SpectralField2D, p: f64, variant: StrichartzVariant) -> Result<f64> {
    strichartz_tataru_ratio(u0, p, variant, &TimeGrid::default(), DEFAULT_EPS)
}

/// Gaussian bump `exp(-|x - c|^2 / (2 w^2))` on the periodic square, periodized.
pub fn gaussian_bump(grid: crate::spectral::GridSpec, center: [f64; 2], width: f64) -> SpectralField2D {
    let l = grid.period;
    SpectralField2D::from_fn(grid, |x, y| {
        let mut v = 0.0;
        for i in -1..=1 {
            for j in -1..=1 {
                let dx = x - center[0] + i as f64 * l;
                let dy = y - center[1] + j as f64 * l;
                v += (-(dx * dx + dy * dy) / (2.0 * width * width)).exp();
            }
        }
        Complex64::new(v, 0.0)
    })
}
