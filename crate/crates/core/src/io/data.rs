//! Random initial data at prescribed regularity.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{check_admissibility, compatibility_curlfree, GaugeState, RegularityTriple};
use crate::spectral::random::seeded_rng;
use crate::spectral::{FieldPair, GridSpec, SpectralField2D};

/// Exponent slack in the power-law amplitudes `|k|^{-(sigma + 1 + delta)}`.
pub const ROUGH_DELTA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataKind {
    /// Power-law spectra at the regularity of the data classes.
    RoughRandom,
    /// Gaussian spectral envelope of width `width` scaled to `L^2` norm
    /// `amplitude` per component.
    SmoothGaussian { amplitude: f64, width: f64 },
}

impl Default for DataKind {
    fn default() -> Self {
        DataKind::SmoothGaussian {
            amplitude: 1.0,
            width: 2.0,
        }
    }
}

/// Cauchy data `(phi0, phi1, a, a')` split into Helmholtz parts.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    pub phi0: SpectralField2D,
    pub phi1: SpectralField2D,
    pub a_df: FieldPair,
    pub a_df_dot: FieldPair,
    pub a_cf: FieldPair,
    /// Fixed by the compatibility condition.
    pub a_cf_dot: FieldPair,
}

impl InitialData {
    pub fn to_state(&self, mass: f64, eps_tilde: f64) -> Result<GaugeState> {
        let mut s = GaugeState::from_fields(&self.phi0, &self.phi1, &self.a_df, &self.a_df_dot, &self.a_cf, mass)?;
        s.eps_tilde = eps_tilde;
        Ok(s)
    }

    /// Total velocity `a' = a'^df + a'^cf`.
    pub fn a_dot(&self) -> FieldPair {
        [&self.a_df_dot[0] + &self.a_cf_dot[0], &self.a_df_dot[1] + &self.a_cf_dot[1]]
    }
}

/// Scalar profile, vector profile along `i xi_perp / |xi|`, or along `i xi / |xi|`.
#[derive(Clone, Copy)]
enum Shape {
    Scalar,
    DivFree,
    CurlFree,
}

/// Draws one random phase per mode; real-valued shapes pair `k` with `-k`.
fn random_phase_field<R: Rng>(
    rng: &mut R,
    grid: GridSpec,
    amp: impl Fn(f64) -> f64,
    shape: Shape,
) -> FieldPair {
    let mut out = [SpectralField2D::zeros(grid), SpectralField2D::zeros(grid)];
    let unit = grid.wavenumber_unit();
    for i in 0..grid.len() {
        let theta = rng.random::<f64>() * 2.0 * PI;
        if grid.is_nyquist(i) {
            continue;
        }
        let (k1, k2) = grid.mode_at(i);
        if k1 == 0 && k2 == 0 {
            continue;
        }
        let kn = ((k1 * k1 + k2 * k2) as f64).sqrt();
        let c = Complex64::from_polar(amp(kn * unit), theta);
        match shape {
            Shape::Scalar => out[0].coeffs_mut()[i] = c,
            Shape::DivFree | Shape::CurlFree => {
                // upper half-plane draws; lower half-plane is the conjugate
                if k2 < 0 || (k2 == 0 && k1 < 0) {
                    continue;
                }
                let j = grid.mode_index(-k1, -k2).expect("non-Nyquist modes have partners");
                let (d1, d2) = match shape {
                    Shape::DivFree => (-(k2 as f64) / kn, k1 as f64 / kn),
                    _ => (k1 as f64 / kn, k2 as f64 / kn),
                };
                let ic = Complex64::new(0.0, 1.0) * c;
                out[0].coeffs_mut()[i] = ic * d1;
                out[1].coeffs_mut()[i] = ic * d2;
                out[0].coeffs_mut()[j] = (ic * d1).conj();
                out[1].coeffs_mut()[j] = (ic * d2).conj();
            }
        }
    }
    let real = !matches!(shape, Shape::Scalar);
    out.iter_mut().for_each(|f| f.set_real(real));
    out
}

fn normalize(mut f: FieldPair, target: f64) -> FieldPair {
    let n = (f[0].l2_norm().powi(2) + f[1].l2_norm().powi(2)).sqrt();
    if n > 0.0 {
        let s = target / n;
        f = [&f[0] * s, &f[1] * s];
    }
    f
}

/// Generates data of the requested kind; inadmissible regularity is refused
/// unless `override_admissibility` is set.
pub fn rough_data_generate(
    reg: &RegularityTriple,
    grid: GridSpec,
    seed: u64,
    kind: DataKind,
    override_admissibility: bool,
) -> Result<InitialData> {
    grid.validate()?;
    let report = check_admissibility(reg);
    if !report.admissible && !override_admissibility {
        return Err(Error::Inadmissible {
            violations: report.violations.iter().map(|v| v.to_string()).collect(),
        });
    }
    let mut rng = seeded_rng(seed);
    let d = ROUGH_DELTA;
    let mut draw = |sigma: f64, shape: Shape| -> FieldPair {
        match kind {
            DataKind::RoughRandom => random_phase_field(&mut rng, grid, |k| k.powf(-(sigma + 1.0 + d)), shape),
            DataKind::SmoothGaussian { amplitude, width } => normalize(
                random_phase_field(&mut rng, grid, |k| (-0.5 * (k / width).powi(2)).exp(), shape),
                amplitude,
            ),
        }
    };
    let [phi0, _] = draw(reg.s, Shape::Scalar);
    let [phi1, _] = draw(reg.s - 1.0, Shape::Scalar);
    let a_df = draw(reg.r, Shape::DivFree);
    let a_df_dot = draw(reg.r - 1.0, Shape::DivFree);
    let a_cf = draw(reg.l, Shape::CurlFree);
    let a_cf_dot = compatibility_curlfree(&phi0, &phi1)?;
    Ok(InitialData {
        phi0,
        phi1,
        a_df,
        a_df_dot,
        a_cf,
        a_cf_dot,
    })
}

/// Least-squares slope of `log |u_hat(k)|` against `log |k|` over nonzero modes
/// with `kmin <= |k| <= kmax` (integer wavenumbers).
pub fn spectral_slope(u: &SpectralField2D, kmin: f64, kmax: f64) -> f64 {
    let g = u.grid();
    let (mut sx, mut sy, mut sxx, mut sxy, mut n) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, c) in u.coeffs().iter().enumerate() {
        let (k1, k2) = g.mode_at(i);
        let k = ((k1 * k1 + k2 * k2) as f64).sqrt();
        if k < kmin || k > kmax || c.norm() == 0.0 {
            continue;
        }
        let (x, y) = (k.ln(), c.norm().ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1.0;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::gauss_residual_from_data;
    use crate::norms::sobolev_norm;
    use crate::spectral::ops;

    fn smooth() -> DataKind {
        DataKind::SmoothGaussian {
            amplitude: 0.5,
            width: 2.0,
        }
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let g = GridSpec::square(32).unwrap();
        let reg = RegularityTriple::default();
        for kind in [DataKind::RoughRandom, smooth()] {
            let a = rough_data_generate(&reg, g, 7, kind, false).unwrap();
            let b = rough_data_generate(&reg, g, 7, kind, false).unwrap();
            assert_eq!(a, b);
            let c = rough_data_generate(&reg, g, 8, kind, false).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn helmholtz_structure_and_reality() {
        let g = GridSpec::square(32).unwrap();
        let d = rough_data_generate(&RegularityTriple::default(), g, 3, DataKind::RoughRandom, false).unwrap();
        assert!(ops::div(&d.a_df).l2_norm() < 1e-13 * ops::grad(&d.a_df[0])[0].l2_norm().max(1.0));
        assert!(ops::curl(&d.a_cf).l2_norm() < 1e-13);
        for f in d.a_df.iter().chain(&d.a_cf).chain(&d.a_df_dot) {
            assert!(f.hermitian_defect() < 1e-15);
        }
    }

    #[test]
    fn compatibility_holds_at_time_zero() {
        let g = GridSpec::square(64).unwrap();
        for kind in [DataKind::RoughRandom, smooth()] {
            let d = rough_data_generate(&RegularityTriple::default(), g, 11, kind, false).unwrap();
            let r = gauss_residual_from_data(&d.phi0, &d.phi1, &d.a_dot()).unwrap();
            assert!(r.relative < 1e-10, "{}", r.relative);
        }
    }

    #[test]
    fn exact_power_law_slope() {
        let g = GridSpec::square(64).unwrap();
        let reg = RegularityTriple::new(0.7, 0.6, 0.8);
        let d = rough_data_generate(&reg, g, 5, DataKind::RoughRandom, false).unwrap();
        let slope = spectral_slope(&d.phi0, 1.0, 30.0);
        assert!((slope + (0.7 + 1.0 + ROUGH_DELTA)).abs() < 1e-10);
        assert!(sobolev_norm(&d.phi0, reg.s, false).is_finite());
    }

    #[test]
    fn inadmissible_regularity_is_refused_without_override() {
        let g = GridSpec::square(16).unwrap();
        let reg = RegularityTriple::new(0.5, 0.5, 0.5);
        match rough_data_generate(&reg, g, 1, DataKind::RoughRandom, false) {
            Err(Error::Inadmissible { violations }) => {
                assert!(violations.iter().any(|v| v == "s > 1/2 + l/8"))
            }
            other => panic!("{other:?}"),
        }
        assert!(rough_data_generate(&reg, g, 1, DataKind::RoughRandom, true).is_ok());
    }
}
