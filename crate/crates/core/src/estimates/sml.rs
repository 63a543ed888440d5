//! Sobolev multiplication law on the periodic square.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{sobolev_norm, TimeWindow};
use crate::spectral::random::complex_normal;
use crate::spectral::{pointwise_product, GridSpec, SpectralField2D};

use super::conditions::sobolev_product_conditions;
use super::fuzz::{FieldRecipe, RatioReport, TrialDescriptor};

/// `||uv||_{H^{-s0}} / (||u||_{H^{s1}} ||v||_{H^{s2}})`.
///
/// The product is dealiased, so inputs should sit inside half the retained band.
pub fn sobolev_product_ratio(u: &SpectralField2D, v: &SpectralField2D, s0: f64, s1: f64, s2: f64) -> Result<f64> {
    let den = sobolev_norm(u, s1, false) * sobolev_norm(v, s2, false);
    if !(den > 0.0) || !den.is_finite() {
        return Err(Error::Degenerate("zero denominator".into()));
    }
    Ok(sobolev_norm(&pointwise_product(u, v)?, -s0, false) / den)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SobolevFuzzConfig {
    pub n: usize,
    pub n_trials: usize,
    pub seed: u64,
}

impl Default for SobolevFuzzConfig {
    fn default() -> Self {
        SobolevFuzzConfig {
            n: 32,
            n_trials: 200,
            seed: 0,
        }
    }
}

impl FieldRecipe {
    fn draw_spatial(rng: &mut ChaCha8Rng, packet: bool, band: i64) -> Self {
        if packet {
            let scale = (rng.random::<f64>() * (band as f64 * 0.9).ln()).exp();
            let th = rng.random::<f64>() * 2.0 * PI;
            FieldRecipe::SpatialPacket {
                k0: [scale * th.cos(), scale * th.sin()],
                sigma_k: (rng.random_range(0.05..0.3) * scale).max(0.7),
            }
        } else {
            FieldRecipe::SpatialGaussian {
                radius: rng.random_range(1.0..=band as f64),
                seed: rng.random(),
            }
        }
    }

    /// Builds a spatial recipe on `|k| <= band`.
    pub fn build_spatial(&self, grid: GridSpec, band: i64) -> Result<SpectralField2D> {
        let mut f = SpectralField2D::zeros(grid);
        match self {
            FieldRecipe::SpatialGaussian { radius, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                for i in 0..grid.len() {
                    let z = complex_normal(&mut rng);
                    let (k1, k2) = grid.mode_at(i);
                    let k = ((k1 * k1 + k2 * k2) as f64).sqrt();
                    if k <= radius.min(band as f64) {
                        f.coeffs_mut()[i] = z;
                    }
                }
            }
            FieldRecipe::SpatialPacket { k0, sigma_k } => {
                for i in 0..grid.len() {
                    let (k1, k2) = grid.mode_at(i);
                    if ((k1 * k1 + k2 * k2) as f64).sqrt() > band as f64 {
                        continue;
                    }
                    let d2 = (k1 as f64 - k0[0]).powi(2) + (k2 as f64 - k0[1]).powi(2);
                    f.coeffs_mut()[i] = Complex64::new((-d2 / (2.0 * sigma_k * sigma_k)).exp(), 0.0);
                }
            }
            _ => return Err(Error::Config("space-time recipes build 3D fields".into())),
        }
        Ok(f)
    }
}

/// Ensemble supremum of [`sobolev_product_ratio`].
pub fn sobolev_product_fuzz(s0: f64, s1: f64, s2: f64, cfg: &SobolevFuzzConfig) -> Result<RatioReport> {
    let grid = GridSpec::square(cfg.n)?;
    let (c, _) = grid.dealias_cutoff();
    let band = c / 2;
    let results: Vec<Option<(f64, TrialDescriptor)>> = (0..cfg.n_trials)
        .into_par_iter()
        .map(|trial| -> Result<Option<(f64, TrialDescriptor)>> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial as u64);
            let packet = trial % 2 == 1;
            let recipes: Vec<FieldRecipe> = (0..2).map(|_| FieldRecipe::draw_spatial(&mut rng, packet, band)).collect();
            let u = recipes[0].build_spatial(grid, band)?;
            let v = recipes[1].build_spatial(grid, band)?;
            match sobolev_product_ratio(&u, &v, s0, s1, s2) {
                Ok(r) => Ok(Some((r, TrialDescriptor { trial, factors: recipes }))),
                Err(Error::Degenerate(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = RatioReport::from_ratios(
        "sobolev_product",
        cfg.n_trials,
        results.into_iter().flatten().collect(),
        (cfg.n, 1, 0.0, TimeWindow::Rectangular, 0.0),
    );
    if !sobolev_product_conditions(s0, s1, s2) {
        report.violated_conditions = vec!["sobolev multiplication conditions".to_string()];
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random::random_field;

    fn br(k: f64) -> f64 {
        (1.0 + k * k).sqrt()
    }

    #[test]
    fn constant_factor() {
        let g = GridSpec::square(32).unwrap();
        let one = SpectralField2D::constant(g, 1.0);
        // u * 1 = u and ||1||_{L^2} = period
        let c = one.l2_norm();
        for seed in 0..5 {
            let u = random_field(g, 5, seed, false);
            for &(s0, s1) in &[(0.0, 0.0), (0.3, 0.2), (-0.1, 0.5)] {
                let r = sobolev_product_ratio(&u, &one, s0, s1, 0.0).unwrap();
                let want = sobolev_norm(&u, -s0, false) / sobolev_norm(&u, s1, false) / c;
                assert!((r - want).abs() < 1e-12 * want);
                assert!(r <= 1.0 / c + 1e-12);
            }
        }
    }

    #[test]
    fn single_mode_square() {
        let g = GridSpec::square(32).unwrap();
        let k = 4.0;
        let u = SpectralField2D::single_mode(g, 4, 0, Complex64::new(1.0, 0.0)).unwrap();
        let (s0, s1, s2) = (0.6, 0.3, 0.2);
        let r = sobolev_product_ratio(&u, &u, s0, s1, s2).unwrap();
        let want = br(2.0 * k).powf(-s0) / br(k).powf(s1 + s2) / g.period;
        assert!((r - want).abs() < 1e-13 * want);
    }

    #[test]
    fn zero_is_degenerate() {
        let g = GridSpec::square(16).unwrap();
        let z = SpectralField2D::zeros(g);
        assert!(matches!(sobolev_product_ratio(&z, &z, 0.0, 1.0, 1.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn admissible_law_is_refinement_stable() {
        let (s0, s1, s2) = (0.51, 0.51, 0.0);
        let coarse = sobolev_product_fuzz(s0, s1, s2, &SobolevFuzzConfig::default()).unwrap();
        let fine = sobolev_product_fuzz(s0, s1, s2, &SobolevFuzzConfig { n: 64, ..Default::default() }).unwrap();
        assert!(coarse.violated_conditions.is_empty());
        let growth = fine.max_ratio / coarse.max_ratio;
        assert!(growth < 2.0 && growth > 0.5, "{growth}");
    }
}
