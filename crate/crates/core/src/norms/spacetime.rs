use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftDirection;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::fft::fft3;
use crate::spectral::{GridSpec, SpectralField2D};

/// Temporal window applied before the space-time transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeWindow {
    /// No tapering; appropriate for data periodic in time.
    Rectangular,
    /// `w(t) = (1 - cos(2 pi t / S)) / 2` on `[0, S)`.
    #[default]
    RaisedCosine,
}

impl TimeWindow {
    pub fn eval(&self, t: f64, t_span: f64) -> f64 {
        match self {
            TimeWindow::Rectangular => 1.0,
            TimeWindow::RaisedCosine => 0.5 * (1.0 - (2.0 * PI * t / t_span).cos()),
        }
    }

    /// RMS angular-frequency spread of the window's power spectrum.
    pub fn rms_bandwidth(&self, t_span: f64) -> f64 {
        match self {
            TimeWindow::Rectangular => 0.0,
            TimeWindow::RaisedCosine => 2.0 * PI / (t_span * 3f64.sqrt()),
        }
    }
}

/// Samples `u(t_j, x)` at `t_j = j S / nt` together with their space-time
/// coefficients.
///
/// Normalization: `sum |u_hat(k, m)|^2 = int_0^S int |w u|^2 dx dt` with the
/// temporal frequency of index `m` equal to `2 pi m / S`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    grid: GridSpec,
    nt: usize,
    t_span: f64,
    window: TimeWindow,
    /// Windowed physical samples, layout `[t][y][x]`.
    samples: Vec<Complex64>,
    /// Coefficients, layout `[m][k2][k1]` in FFT order.
    coeffs: Vec<Complex64>,
}

impl SpaceTimeField {
    fn check(grid: &GridSpec, nt: usize, t_span: f64) -> Result<()> {
        grid.validate()?;
        if nt < 2 || nt % 2 != 0 {
            return Err(Error::Shape(format!("nt must be even and >= 2, got {nt}")));
        }
        if !(t_span > 0.0) {
            return Err(Error::Precondition(format!("t_span must be positive, got {t_span}")));
        }
        Ok(())
    }

    fn coeff_scale(grid: &GridSpec, nt: usize, t_span: f64) -> f64 {
        let dt = t_span / nt as f64;
        grid.period / (grid.nx * grid.ny) as f64 * dt / t_span.sqrt()
    }

    /// Builds the field from a slice generator `t -> u(t)`.
    pub fn from_fn(
        grid: GridSpec,
        nt: usize,
        t_span: f64,
        window: TimeWindow,
        f: impl Fn(f64) -> SpectralField2D,
    ) -> Result<Self> {
        Self::check(&grid, nt, t_span)?;
        let len = grid.len();
        let mut samples = Vec::with_capacity(len * nt);
        for j in 0..nt {
            let t = j as f64 * t_span / nt as f64;
            let slice = f(t);
            grid.ensure_same(slice.grid())?;
            let w = window.eval(t, t_span);
            samples.extend(slice.to_physical().into_iter().map(|z| z * w));
        }
        Ok(Self::from_samples_unchecked(grid, nt, t_span, window, samples))
    }

    /// Wraps already windowed physical samples (layout `[t][y][x]`).
    pub fn from_samples(
        grid: GridSpec,
        nt: usize,
        t_span: f64,
        window: TimeWindow,
        samples: Vec<Complex64>,
    ) -> Result<Self> {
        Self::check(&grid, nt, t_span)?;
        if samples.len() != grid.len() * nt {
            return Err(Error::Shape(format!(
                "expected {} samples, got {}",
                grid.len() * nt,
                samples.len()
            )));
        }
        Ok(Self::from_samples_unchecked(grid, nt, t_span, window, samples))
    }

    fn from_samples_unchecked(
        grid: GridSpec,
        nt: usize,
        t_span: f64,
        window: TimeWindow,
        samples: Vec<Complex64>,
    ) -> Self {
        let mut coeffs = samples.clone();
        fft3(&mut coeffs, grid.nx, grid.ny, nt, FftDirection::Forward);
        let s = Self::coeff_scale(&grid, nt, t_span);
        coeffs.iter_mut().for_each(|c| *c *= s);
        SpaceTimeField {
            grid,
            nt,
            t_span,
            window,
            samples,
            coeffs,
        }
    }

    /// Builds the field from space-time coefficients (layout `[m][k2][k1]`).
    pub fn from_coeffs(
        grid: GridSpec,
        nt: usize,
        t_span: f64,
        window: TimeWindow,
        coeffs: Vec<Complex64>,
    ) -> Result<Self> {
        Self::check(&grid, nt, t_span)?;
        if coeffs.len() != grid.len() * nt {
            return Err(Error::Shape(format!(
                "expected {} coefficients, got {}",
                grid.len() * nt,
                coeffs.len()
            )));
        }
        let mut samples = coeffs.clone();
        fft3(&mut samples, grid.nx, grid.ny, nt, FftDirection::Inverse);
        let s = 1.0 / (Self::coeff_scale(&grid, nt, t_span) * (grid.len() * nt) as f64);
        samples.iter_mut().for_each(|z| *z *= s);
        Ok(SpaceTimeField {
            grid,
            nt,
            t_span,
            window,
            samples,
            coeffs,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn t_span(&self) -> f64 {
        self.t_span
    }

    pub fn window(&self) -> TimeWindow {
        self.window
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Angular temporal frequency of lattice index `j` (FFT order).
    pub fn omega_of_index(&self, j: usize) -> f64 {
        2.0 * PI / self.t_span * GridSpec::freq_of_index(j, self.nt) as f64
    }

    /// Calls `f(tau, xi, coeff)` for every lattice point.
    pub fn for_each_mode(&self, mut f: impl FnMut(f64, [f64; 2], Complex64)) {
        let len = self.grid.len();
        for j in 0..self.nt {
            let tau = self.omega_of_index(j);
            for i in 0..len {
                f(tau, self.grid.xi_at(i), self.coeffs[j * len + i]);
            }
        }
    }

    /// Space-time `L^2` norm from the samples.
    pub fn l2_norm(&self) -> f64 {
        let dv = self.cell_volume();
        (self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * dv).sqrt()
    }

    pub(crate) fn cell_volume(&self) -> f64 {
        let g = &self.grid;
        (g.period / g.nx as f64) * (g.period / g.ny as f64) * (self.t_span / self.nt as f64)
    }

    fn ensure_compatible(&self, other: &SpaceTimeField) -> Result<()> {
        self.grid.ensure_same(&other.grid)?;
        if self.nt != other.nt || self.t_span != other.t_span || self.window != other.window {
            return Err(Error::Shape("space-time fields use different time lattices".into()));
        }
        Ok(())
    }

    /// Pointwise product of the samples.
    ///
    /// Windows multiply too, so this is meant for rectangular (periodic) data.
    pub fn product(&self, other: &SpaceTimeField) -> Result<SpaceTimeField> {
        self.ensure_compatible(other)?;
        let s = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect();
        Ok(Self::from_samples_unchecked(self.grid, self.nt, self.t_span, self.window, s))
    }

    /// Applies a spatial Fourier multiplier to every time slice.
    pub fn map_spatial(&self, f: impl Fn([f64; 2]) -> Complex64) -> SpaceTimeField {
        let len = self.grid.len();
        let mult: Vec<Complex64> = (0..len).map(|i| f(self.grid.xi_at(i))).collect();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| c * mult[idx % len])
            .collect();
        Self::from_coeffs(self.grid, self.nt, self.t_span, self.window, coeffs)
            .expect("shape is preserved")
    }

    pub fn scaled(&self, a: f64) -> SpaceTimeField {
        SpaceTimeField {
            samples: self.samples.iter().map(|z| z * a).collect(),
            coeffs: self.coeffs.iter().map(|z| z * a).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random::random_field;

    #[test]
    fn plancherel_in_space_and_time() {
        let g = GridSpec::square(16).unwrap();
        let u0 = random_field(g, 5, 1, false);
        for window in [TimeWindow::Rectangular, TimeWindow::RaisedCosine] {
            let f = SpaceTimeField::from_fn(g, 16, 3.0, window, |t| &u0 * (1.0 + t)).unwrap();
            let c2: f64 = f.coeffs().iter().map(|c| c.norm_sqr()).sum();
            assert!((c2.sqrt() - f.l2_norm()).abs() < 1e-13 * f.l2_norm());
        }
    }

    #[test]
    fn coefficient_roundtrip() {
        let g = GridSpec::square(8).unwrap();
        let u0 = random_field(g, 3, 2, false);
        let f = SpaceTimeField::from_fn(g, 8, 2.0, TimeWindow::Rectangular, |t| &u0 * t.cos()).unwrap();
        let back = SpaceTimeField::from_coeffs(g, 8, 2.0, TimeWindow::Rectangular, f.coeffs().to_vec()).unwrap();
        for (a, b) in f.samples().iter().zip(back.samples()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn single_space_time_mode_lands_on_its_lattice_point() {
        let g = GridSpec::square(8).unwrap();
        let s = 2.0 * PI;
        let u0 = SpectralField2D::single_mode(g, 1, -2, Complex64::new(1.0, 0.0)).unwrap();
        let f = SpaceTimeField::from_fn(g, 8, s, TimeWindow::Rectangular, |t| {
            &u0 * Complex64::from_polar(1.0, 3.0 * t)
        })
        .unwrap();
        let mut hits = Vec::new();
        f.for_each_mode(|tau, xi, c| {
            if c.norm() > 1e-12 {
                hits.push((tau, xi, c.norm()));
            }
        });
        assert_eq!(hits.len(), 1);
        let (tau, xi, mag) = hits[0];
        assert!((tau - 3.0).abs() < 1e-12 && xi == [1.0, -2.0]);
        assert!((mag - s.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hann_bandwidth_matches_numerical_second_moment() {
        let g = GridSpec::square(8).unwrap();
        let s = 10.0;
        let nt = 256;
        let u0 = SpectralField2D::constant(g, 1.0);
        let f = SpaceTimeField::from_fn(g, nt, s, TimeWindow::RaisedCosine, |_| u0.clone()).unwrap();
        let (mut m0, mut m2) = (0.0, 0.0);
        f.for_each_mode(|tau, _, c| {
            m0 += c.norm_sqr();
            m2 += tau * tau * c.norm_sqr();
        });
        let b = (m2 / m0).sqrt();
        assert!((b - TimeWindow::RaisedCosine.rms_bandwidth(s)).abs() < 1e-10 * b);
    }
}
