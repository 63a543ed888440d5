use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rustfft::FftDirection;

use super::fft::fft2;
use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Fourier coefficients of a field on the periodic grid.
///
/// Normalization is Plancherel-exact: `||u||_{L^2}^2 = sum_k |u_hat(k)|^2`,
/// i.e. `u(x) = period^{-1} sum_k u_hat(k) exp(i xi.x)`. Storage is FFT order,
/// rows indexed by `k2`. Modes on the unpaired `-n/2` lines are kept at zero
/// so that every real-preserving multiplier stays real-preserving.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField2D {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
    is_real: bool,
}

/// A two-component vector field, e.g. the spatial potential `(A_1, A_2)`.
pub type FieldPair = [SpectralField2D; 2];

impl SpectralField2D {
    pub fn zeros(grid: GridSpec) -> Self {
        SpectralField2D {
            grid,
            coeffs: vec![Complex64::default(); grid.len()],
            is_real: true,
        }
    }

    /// Wraps raw coefficients (FFT order). Nyquist lines are cleared.
    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex64>, is_real: bool) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::Shape(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        let mut f = SpectralField2D {
            grid,
            coeffs,
            is_real,
        };
        f.clear_nyquist();
        Ok(f)
    }

    /// Transforms physical samples `u(x_j)`, `x_j = period * j / n`.
    pub fn from_physical(grid: GridSpec, samples: &[Complex64]) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::Shape(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        let mut c = samples.to_vec();
        fft2(&mut c, grid.nx, grid.ny, FftDirection::Forward);
        let scale = grid.period / grid.len() as f64;
        c.iter_mut().for_each(|z| *z *= scale);
        let is_real = samples.iter().all(|z| z.im == 0.0);
        Self::from_coeffs(grid, c, is_real)
    }

    pub fn from_real_physical(grid: GridSpec, samples: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_physical(grid, &c)
    }

    /// Evaluates `f(x, y)` at the grid nodes and transforms.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let h1 = grid.period / grid.nx as f64;
        let h2 = grid.period / grid.ny as f64;
        let samples: Vec<Complex64> = (0..grid.len())
            .map(|i| f((i % grid.nx) as f64 * h1, (i / grid.nx) as f64 * h2))
            .collect();
        Self::from_physical(grid, &samples).expect("sample count matches grid")
    }

    /// Field with the single coefficient `c` at mode `(k1, k2)`.
    pub fn single_mode(grid: GridSpec, k1: i64, k2: i64, c: Complex64) -> Result<Self> {
        let mut f = Self::zeros(grid);
        let idx = grid
            .mode_index(k1, k2)
            .ok_or_else(|| Error::Shape(format!("mode ({k1}, {k2}) outside the grid")))?;
        if grid.is_nyquist(idx) {
            return Err(Error::Shape(format!("mode ({k1}, {k2}) lies on a Nyquist line")));
        }
        f.coeffs[idx] = c;
        f.is_real = false;
        Ok(f)
    }

    /// Constant field `value` (coefficient `value * period` at `k = 0`).
    pub fn constant(grid: GridSpec, value: f64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[0] = Complex64::new(value * grid.period, 0.0);
        f
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Mutable access; callers are responsible for the realness flag.
    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    #[inline]
    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn set_real(&mut self, is_real: bool) {
        self.is_real = is_real;
    }

    pub fn coeff(&self, k1: i64, k2: i64) -> Complex64 {
        self.grid
            .mode_index(k1, k2)
            .map(|i| self.coeffs[i])
            .unwrap_or_default()
    }

    /// Physical samples at the grid nodes.
    pub fn to_physical(&self) -> Vec<Complex64> {
        let mut c = self.coeffs.clone();
        fft2(&mut c, self.grid.nx, self.grid.ny, FftDirection::Inverse);
        let scale = 1.0 / self.grid.period;
        c.iter_mut().for_each(|z| *z *= scale);
        c
    }

    pub fn to_real_physical(&self) -> Vec<f64> {
        self.to_physical().into_iter().map(|z| z.re).collect()
    }

    pub fn clear_nyquist(&mut self) {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        for iy in 0..ny {
            self.coeffs[iy * nx + nx / 2] = Complex64::default();
        }
        for ix in 0..nx {
            self.coeffs[(ny / 2) * nx + ix] = Complex64::default();
        }
    }

    /// Zeroes every mode outside the dealias band.
    pub fn dealias(&mut self) {
        let g = self.grid;
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            if !g.is_retained(i) {
                *c = Complex64::default();
            }
        }
    }

    pub fn dealiased(mut self) -> Self {
        self.dealias();
        self
    }

    /// Keeps only modes with `|k_j| <= kmax` on both axes.
    pub fn truncate(&mut self, kmax: i64) {
        let g = self.grid;
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            let (k1, k2) = g.mode_at(i);
            if k1.abs() > kmax || k2.abs() > kmax {
                *c = Complex64::default();
            }
        }
    }

    /// Highest `max(|k1|, |k2|)` carrying a nonzero coefficient.
    pub fn band_radius(&self) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::default())
            .map(|(i, _)| {
                let (k1, k2) = self.grid.mode_at(i);
                k1.abs().max(k2.abs())
            })
            .max()
            .unwrap_or(0)
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `int conj(self) * other dx`.
    pub fn inner(&self, other: &SpectralField2D) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Spatial mean value.
    pub fn mean(&self) -> Complex64 {
        self.coeffs[0] / self.grid.period
    }

    /// Copy with the `k = 0` coefficient removed.
    pub fn without_mean(&self) -> Self {
        let mut f = self.clone();
        f.coeffs[0] = Complex64::default();
        f
    }

    /// Pointwise complex conjugate: `conj(u)^(k) = conj(u_hat(-k))`.
    pub fn conj(&self) -> Self {
        let g = self.grid;
        let mut out = vec![Complex64::default(); g.len()];
        for (i, o) in out.iter_mut().enumerate() {
            let (k1, k2) = g.mode_at(i);
            if let Some(j) = g.mode_index(-k1, -k2) {
                *o = self.coeffs[j].conj();
            }
        }
        let mut f = SpectralField2D {
            grid: g,
            coeffs: out,
            is_real: self.is_real,
        };
        f.clear_nyquist();
        f
    }

    /// Pointwise real part.
    pub fn re(&self) -> Self {
        let mut f = (self.clone() + self.conj()) * 0.5;
        f.is_real = true;
        f
    }

    /// Pointwise imaginary part.
    pub fn im(&self) -> Self {
        let mut f = (self.clone() - self.conj()) * Complex64::new(0.0, -0.5);
        f.is_real = true;
        f
    }

    /// Largest relative deviation from `u_hat(-k) = conj(u_hat(k))`.
    pub fn hermitian_defect(&self) -> f64 {
        let g = self.grid;
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for i in 0..g.len() {
            let (k1, k2) = g.mode_at(i);
            if let Some(j) = g.mode_index(-k1, -k2) {
                worst = worst.max((self.coeffs[i] - self.coeffs[j].conj()).norm());
            }
        }
        worst / scale
    }

    /// Projects onto the Hermitian-symmetric (real-valued) subspace.
    pub fn make_real(&mut self) {
        *self = self.re();
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Coefficient-wise map with access to the frequency vector.
    pub fn map_modes(&self, f: impl Fn([f64; 2], Complex64) -> Complex64) -> Self {
        let g = self.grid;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| f(g.xi_at(i), c))
            .collect();
        SpectralField2D {
            grid: g,
            coeffs,
            is_real: false,
        }
    }

    pub fn scale_complex(mut self, z: Complex64) -> Self {
        self.coeffs.iter_mut().for_each(|c| *c *= z);
        self.is_real = self.is_real && z.im == 0.0;
        self
    }

    pub fn ensure_same_grid(&self, other: &SpectralField2D) -> Result<()> {
        self.grid.ensure_same(&other.grid)
    }
}

impl Add for SpectralField2D {
    type Output = SpectralField2D;
    fn add(mut self, rhs: SpectralField2D) -> SpectralField2D {
        self += &rhs;
        self
    }
}

impl Add<&SpectralField2D> for &SpectralField2D {
    type Output = SpectralField2D;
    fn add(self, rhs: &SpectralField2D) -> SpectralField2D {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&SpectralField2D> for SpectralField2D {
    fn add_assign(&mut self, rhs: &SpectralField2D) {
        debug_assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.is_real &= rhs.is_real;
    }
}

impl Sub for SpectralField2D {
    type Output = SpectralField2D;
    fn sub(mut self, rhs: SpectralField2D) -> SpectralField2D {
        self -= &rhs;
        self
    }
}

impl Sub<&SpectralField2D> for &SpectralField2D {
    type Output = SpectralField2D;
    fn sub(self, rhs: &SpectralField2D) -> SpectralField2D {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&SpectralField2D> for SpectralField2D {
    fn sub_assign(&mut self, rhs: &SpectralField2D) {
        debug_assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.is_real &= rhs.is_real;
    }
}

impl Mul<f64> for SpectralField2D {
    type Output = SpectralField2D;
    fn mul(mut self, rhs: f64) -> SpectralField2D {
        self.coeffs.iter_mut().for_each(|c| *c *= rhs);
        self
    }
}

impl Mul<Complex64> for SpectralField2D {
    type Output = SpectralField2D;
    fn mul(self, rhs: Complex64) -> SpectralField2D {
        self.scale_complex(rhs)
    }
}

impl Neg for SpectralField2D {
    type Output = SpectralField2D;
    fn neg(self) -> SpectralField2D {
        self * -1.0
    }
}

impl Add<&SpectralField2D> for SpectralField2D {
    type Output = SpectralField2D;
    fn add(mut self, rhs: &SpectralField2D) -> SpectralField2D {
        self += rhs;
        self
    }
}

impl Sub<&SpectralField2D> for SpectralField2D {
    type Output = SpectralField2D;
    fn sub(mut self, rhs: &SpectralField2D) -> SpectralField2D {
        self -= rhs;
        self
    }
}

impl Mul<f64> for &SpectralField2D {
    type Output = SpectralField2D;
    fn mul(self, rhs: f64) -> SpectralField2D {
        self.clone() * rhs
    }
}

impl Mul<Complex64> for &SpectralField2D {
    type Output = SpectralField2D;
    fn mul(self, rhs: Complex64) -> SpectralField2D {
        self.clone().scale_complex(rhs)
    }
}

impl Neg for &SpectralField2D {
    type Output = SpectralField2D;
    fn neg(self) -> SpectralField2D {
        self.clone() * -1.0
    }
}

/// `sqrt(||a_1||^2 + ||a_2||^2)`.
pub fn pair_l2_norm(a: &FieldPair) -> f64 {
    (a[0].l2_norm().powi(2) + a[1].l2_norm().powi(2)).sqrt()
}

pub fn pair_add(a: &FieldPair, b: &FieldPair) -> FieldPair {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

pub fn pair_sub(a: &FieldPair, b: &FieldPair) -> FieldPair {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub fn pair_zeros(grid: GridSpec) -> FieldPair {
    [SpectralField2D::zeros(grid), SpectralField2D::zeros(grid)]
}
