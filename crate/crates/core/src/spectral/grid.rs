use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Periodic square grid. Frequencies are `xi = (2 pi / period) k` with
/// integer `k` in `[-n/2, n/2)` along each axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub period: f64,
    pub dealias_fraction: f64,
}

impl GridSpec {
    pub const DEFAULT_DEALIAS: f64 = 2.0 / 3.0;

    pub fn new(nx: usize, ny: usize, period: f64, dealias_fraction: f64) -> Result<Self> {
        let g = GridSpec {
            nx,
            ny,
            period,
            dealias_fraction,
        };
        g.validate()?;
        Ok(g)
    }

    /// Square `n x n` grid on the `2 pi` torus with the 2/3 rule.
    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n, 2.0 * PI, Self::DEFAULT_DEALIAS)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, n) in [("nx", self.nx), ("ny", self.ny)] {
            if n < 8 || n % 2 != 0 {
                return Err(Error::Config(format!(
                    "{name} = {n}: grid sizes must be even and at least 8"
                )));
            }
        }
        if !(self.period.is_finite() && self.period > 0.0) {
            return Err(Error::Config(format!(
                "period = {} must be positive",
                self.period
            )));
        }
        if !(self.dealias_fraction > 0.0 && self.dealias_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "dealias_fraction = {} must lie in (0, 1]",
                self.dealias_fraction
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Area of the torus.
    #[inline]
    pub fn area(&self) -> f64 {
        self.period * self.period
    }

    /// `2 pi / period`.
    #[inline]
    pub fn wavenumber_unit(&self) -> f64 {
        2.0 * PI / self.period
    }

    /// Integer frequency stored at FFT index `i` of an axis of length `n`.
    #[inline]
    pub fn freq_of_index(i: usize, n: usize) -> i64 {
        if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    /// FFT index of integer frequency `k`, or `None` when outside `[-n/2, n/2)`.
    #[inline]
    pub fn index_of_freq(k: i64, n: usize) -> Option<usize> {
        let half = (n / 2) as i64;
        if k < -half || k >= half {
            None
        } else if k >= 0 {
            Some(k as usize)
        } else {
            Some((k + n as i64) as usize)
        }
    }

    /// Flat storage index of mode `(k1, k2)`: rows are indexed by `k2`.
    pub fn mode_index(&self, k1: i64, k2: i64) -> Option<usize> {
        let ix = Self::index_of_freq(k1, self.nx)?;
        let iy = Self::index_of_freq(k2, self.ny)?;
        Some(iy * self.nx + ix)
    }

    /// Integer frequencies of a flat storage index.
    #[inline]
    pub fn mode_at(&self, idx: usize) -> (i64, i64) {
        let ix = idx % self.nx;
        let iy = idx / self.nx;
        (
            Self::freq_of_index(ix, self.nx),
            Self::freq_of_index(iy, self.ny),
        )
    }

    /// Physical frequency vector of a flat storage index.
    #[inline]
    pub fn xi_at(&self, idx: usize) -> [f64; 2] {
        let (k1, k2) = self.mode_at(idx);
        let u = self.wavenumber_unit();
        [u * k1 as f64, u * k2 as f64]
    }

    /// True for modes on the unpaired `-n/2` line of either axis.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let (k1, k2) = self.mode_at(idx);
        k1 == -((self.nx / 2) as i64) || k2 == -((self.ny / 2) as i64)
    }

    /// Largest retained `|k|` per axis under the dealias mask (strict cutoff).
    pub fn dealias_cutoff(&self) -> (i64, i64) {
        let cut = |n: usize| {
            let c = self.dealias_fraction * n as f64 / 2.0;
            // largest integer strictly below c
            let mut k = c.floor() as i64;
            if (k as f64) >= c {
                k -= 1;
            }
            k.min(n as i64 / 2 - 1)
        };
        (cut(self.nx), cut(self.ny))
    }

    #[inline]
    pub fn is_retained(&self, idx: usize) -> bool {
        let (k1, k2) = self.mode_at(idx);
        let (c1, c2) = self.dealias_cutoff();
        k1.abs() <= c1 && k2.abs() <= c2
    }

    /// Largest `<xi>` on the grid.
    pub fn max_bracket_xi(&self) -> f64 {
        let u = self.wavenumber_unit();
        let k1 = (self.nx / 2) as f64 * u;
        let k2 = (self.ny / 2) as f64 * u;
        (1.0 + k1 * k1 + k2 * k2).sqrt()
    }

    /// Same shape check used by every binary operation.
    pub fn ensure_same(&self, other: &GridSpec) -> Result<()> {
        if self.nx != other.nx
            || self.ny != other.ny
            || self.period.to_bits() != other.period.to_bits()
        {
            return Err(Error::Shape(format!(
                "grid {}x{} (period {}) vs {}x{} (period {})",
                self.nx, self.ny, self.period, other.nx, other.ny, other.period
            )));
        }
        Ok(())
    }
}
