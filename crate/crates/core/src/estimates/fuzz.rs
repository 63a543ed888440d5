//! Ratio fuzzing of multilinear `X^{s,b}` estimates on time-periodic fields.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{xsb_norm, SpaceTimeField, TimeWindow, XsbSpec, DEFAULT_EPS};
use crate::spectral::random::complex_normal;
use crate::spectral::GridSpec;

use super::conditions::{bilinear_conditions, ExponentTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BilinearTarget {
    /// `uv`
    Product,
    /// `d1 u d2 v - d2 u d1 v`
    NullformQ12,
    /// `uvw` with `w` measured in the configured third norm.
    TripleProduct,
}

impl BilinearTarget {
    pub fn name(&self) -> &'static str {
        match self {
            BilinearTarget::Product => "product",
            BilinearTarget::NullformQ12 => "nullform_q12",
            BilinearTarget::TripleProduct => "triple_product",
        }
    }

    fn factors(&self) -> i64 {
        match self {
            BilinearTarget::TripleProduct => 3,
            _ => 2,
        }
    }
}

impl std::str::FromStr for BilinearTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(BilinearTarget::Product),
            "nullform_q12" => Ok(BilinearTarget::NullformQ12),
            "triple_product" => Ok(BilinearTarget::TripleProduct),
            other => Err(Error::Config(format!("unknown fuzz target {other:?}"))),
        }
    }
}

/// Time-periodic ensemble on `[0, 2 pi)`, so temporal frequencies are integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub n: usize,
    pub nt: usize,
    pub n_trials: usize,
    pub seed: u64,
    pub eps: f64,
    /// Norm of the third factor for [`BilinearTarget::TripleProduct`].
    pub third: XsbSpec,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            n: 32,
            nt: 32,
            n_trials: 200,
            seed: 0,
            eps: DEFAULT_EPS,
            third: XsbSpec::wave(0.5, 0.5 + DEFAULT_EPS),
        }
    }
}

/// Reproducible description of one random space-time field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldRecipe {
    /// Complex Gaussian coefficients on `|k| <= radius`, `|m| <= t_radius`.
    Gaussian { radius: f64, t_radius: f64, seed: u64 },
    /// Gaussian bump around `(k0, sign |k|)` in frequency space.
    Packet {
        k0: [f64; 2],
        sigma_k: f64,
        sigma_m: f64,
        sign: i8,
    },
    /// Time-independent Gaussian coefficients on `|k| <= radius`.
    SpatialGaussian { radius: f64, seed: u64 },
    /// Time-independent bump `exp(-|k - k0|^2 / (2 sigma_k^2))`.
    SpatialPacket { k0: [f64; 2], sigma_k: f64 },
}

impl FieldRecipe {
    fn draw(rng: &mut ChaCha8Rng, packet: bool, band: i64, t_band: i64) -> Self {
        if packet {
            let kmax = band as f64 * 0.9;
            let scale = (rng.random::<f64>() * kmax.ln()).exp();
            let th = rng.random::<f64>() * 2.0 * PI;
            FieldRecipe::Packet {
                k0: [scale * th.cos(), scale * th.sin()],
                sigma_k: (rng.random_range(0.05..0.3) * scale).max(0.7),
                sigma_m: rng.random_range(0.5..3.0),
                sign: if rng.random::<bool>() { 1 } else { -1 },
            }
        } else {
            FieldRecipe::Gaussian {
                radius: rng.random_range(2.0..=band as f64),
                t_radius: rng.random_range(1.0..=t_band as f64),
                seed: rng.random(),
            }
        }
    }

    /// Builds the field with spatial band `|k| <= band` and `|m| <= t_band`.
    pub fn build(&self, grid: GridSpec, nt: usize, band: i64, t_band: i64) -> Result<SpaceTimeField> {
        let len = grid.len();
        let mut coeffs = vec![Complex64::default(); len * nt];
        let mut rng = match self {
            FieldRecipe::Gaussian { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
            FieldRecipe::Packet { .. } => None,
            _ => return Err(Error::Config("spatial recipes build 2D fields".into())),
        };
        for j in 0..nt {
            let m = GridSpec::freq_of_index(j, nt);
            if m.abs() > t_band {
                continue;
            }
            for i in 0..len {
                let (k1, k2) = grid.mode_at(i);
                let k = ((k1 * k1 + k2 * k2) as f64).sqrt();
                if k > band as f64 {
                    continue;
                }
                coeffs[j * len + i] = match self {
                    FieldRecipe::Gaussian { radius, t_radius, .. } => {
                        let z = complex_normal(rng.as_mut().expect("seeded"));
                        if k <= *radius && (m.abs() as f64) <= *t_radius {
                            z
                        } else {
                            continue;
                        }
                    }
                    FieldRecipe::Packet {
                        k0,
                        sigma_k,
                        sigma_m,
                        sign,
                    } => {
                        let d2 = (k1 as f64 - k0[0]).powi(2) + (k2 as f64 - k0[1]).powi(2);
                        let dm = m as f64 - *sign as f64 * k;
                        Complex64::new(
                            (-d2 / (2.0 * sigma_k * sigma_k) - dm * dm / (2.0 * sigma_m * sigma_m)).exp(),
                            0.0,
                        )
                    }
                    _ => unreachable!(),
                };
            }
        }
        SpaceTimeField::from_coeffs(grid, nt, 2.0 * PI, TimeWindow::Rectangular, coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialDescriptor {
    pub trial: usize,
    pub factors: Vec<FieldRecipe>,
}

/// Summary of one fuzz batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub target: String,
    pub n_trials: usize,
    pub skipped_degenerate: usize,
    pub max_ratio: f64,
    pub median_ratio: f64,
    pub argmax: Option<TrialDescriptor>,
    pub n: usize,
    pub nt: usize,
    pub t_span: f64,
    pub window: TimeWindow,
    pub eps: f64,
    pub exponents: Option<ExponentTuple>,
    /// Empty when the exponent conditions hold.
    pub violated_conditions: Vec<String>,
}

impl RatioReport {
    pub(crate) fn from_ratios(
        target: &str,
        n_trials: usize,
        mut results: Vec<(f64, TrialDescriptor)>,
        meta: (usize, usize, f64, TimeWindow, f64),
    ) -> Self {
        let skipped = n_trials - results.len();
        results.sort_by(|a, b| a.0.total_cmp(&b.0));
        let median = match results.len() {
            0 => 0.0,
            l if l % 2 == 1 => results[l / 2].0,
            l => 0.5 * (results[l / 2 - 1].0 + results[l / 2].0),
        };
        let (max_ratio, argmax) = match results.pop() {
            Some((r, d)) => (r, Some(d)),
            None => (0.0, None),
        };
        RatioReport {
            target: target.to_string(),
            n_trials,
            skipped_degenerate: skipped,
            max_ratio,
            median_ratio: median,
            argmax,
            n: meta.0,
            nt: meta.1,
            t_span: meta.2,
            window: meta.3,
            eps: meta.4,
            exponents: None,
            violated_conditions: Vec::new(),
        }
    }
}

fn q12(u: &SpaceTimeField, v: &SpaceTimeField) -> Result<SpaceTimeField> {
    let d = |f: &SpaceTimeField, j: usize| f.map_spatial(|xi| Complex64::new(0.0, xi[j]));
    let a = d(u, 0).product(&d(v, 1))?;
    let b = d(u, 1).product(&d(v, 0))?;
    let coeffs = a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x - y).collect();
    SpaceTimeField::from_coeffs(*u.grid(), u.nt(), u.t_span(), u.window(), coeffs)
}

/// `||B(u, v[, w])||_{X^{-s0,-b0}} / (||u||_{X^{s1,b1}} ||v||_{X^{s2,b2}} [||w||_third])`
/// with wave weights.
pub fn bilinear_ratio(
    target: BilinearTarget,
    e: &ExponentTuple,
    u: &SpaceTimeField,
    v: &SpaceTimeField,
    w: Option<&SpaceTimeField>,
    third: &XsbSpec,
) -> Result<f64> {
    let mut den = xsb_norm(u, &XsbSpec::wave(e.s1, e.b1)) * xsb_norm(v, &XsbSpec::wave(e.s2, e.b2));
    let out = match target {
        BilinearTarget::Product => u.product(v)?,
        BilinearTarget::NullformQ12 => q12(u, v)?,
        BilinearTarget::TripleProduct => {
            let w = w.ok_or_else(|| Error::Precondition("triple_product needs a third factor".into()))?;
            den *= xsb_norm(w, third);
            u.product(v)?.product(w)?
        }
    };
    if !(den > 0.0) || !den.is_finite() {
        return Err(Error::Degenerate("zero denominator".into()));
    }
    Ok(xsb_norm(&out, &XsbSpec::wave(-e.s0, -e.b0)) / den)
}

/// Supremum search over half Gaussian, half cone-packet trials.
pub fn bilinear_ratio_fuzz(target: BilinearTarget, e: &ExponentTuple, cfg: &FuzzConfig) -> Result<RatioReport> {
    cfg.third.validate()?;
    let grid = GridSpec::square(cfg.n)?;
    if cfg.nt < 8 || cfg.nt % 2 != 0 {
        return Err(Error::Config(format!("nt must be even and >= 8, got {}", cfg.nt)));
    }
    // keeps every product alias-free on the lattice
    let factors = target.factors();
    let band = (cfg.n as i64 / 2 - 1) / factors;
    let t_band = (cfg.nt as i64 / 2 - 1) / factors;
    let results: Vec<Option<(f64, TrialDescriptor)>> = (0..cfg.n_trials)
        .into_par_iter()
        .map(|trial| -> Result<Option<(f64, TrialDescriptor)>> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial as u64);
            let packet = trial % 2 == 1;
            let recipes: Vec<FieldRecipe> =
                (0..factors).map(|_| FieldRecipe::draw(&mut rng, packet, band, t_band)).collect();
            let fields = recipes
                .iter()
                .map(|r| r.build(grid, cfg.nt, band, t_band))
                .collect::<Result<Vec<_>>>()?;
            let third = fields.get(2);
            match bilinear_ratio(target, e, &fields[0], &fields[1], third, &cfg.third) {
                Ok(r) if r.is_finite() => Ok(Some((r, TrialDescriptor { trial, factors: recipes }))),
                Ok(_) | Err(Error::Degenerate(_)) => Ok(None),
                Err(other) => Err(other),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let kept = results.into_iter().flatten().collect();
    let mut report = RatioReport::from_ratios(
        target.name(),
        cfg.n_trials,
        kept,
        (cfg.n, cfg.nt, 2.0 * PI, TimeWindow::Rectangular, cfg.eps),
    );
    report.exponents = Some(*e);
    report.violated_conditions = bilinear_conditions(e).violated;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn admissible() -> ExponentTuple {
        ExponentTuple::new([0.0, 0.5, 0.5], [0.0, 0.5 + DEFAULT_EPS, 0.5 + DEFAULT_EPS])
    }

    fn random(seed: u64, radius: f64) -> SpaceTimeField {
        let g = GridSpec::square(32).unwrap();
        FieldRecipe::Gaussian {
            radius,
            t_radius: radius,
            seed,
        }
        .build(g, 32, 7, 7)
        .unwrap()
    }

    #[test]
    fn zero_factors_are_degenerate() {
        let g = GridSpec::square(16).unwrap();
        let z = SpaceTimeField::from_coeffs(g, 16, 2.0 * PI, TimeWindow::Rectangular, vec![Complex64::default(); g.len() * 16]).unwrap();
        let r = bilinear_ratio(BilinearTarget::Product, &admissible(), &z, &z, None, &XsbSpec::wave(0.0, 0.0));
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn product_is_the_space_time_convolution() {
        // alias-free band: the lattice product equals the pointwise product
        let u = random(1, 7.0);
        let v = random(2, 7.0);
        let uv = u.product(&v).unwrap();
        let dv = u.cell_volume();
        let direct: f64 = u.samples().iter().zip(v.samples()).map(|(a, b)| (a * b).norm_sqr()).sum::<f64>() * dv;
        assert!((uv.l2_norm() - direct.sqrt()).abs() < 1e-12 * direct.sqrt());
        let c2: f64 = uv.coeffs().iter().map(|c| c.norm_sqr()).sum();
        assert!((c2.sqrt() - direct.sqrt()).abs() < 1e-10 * direct.sqrt());
    }

    #[test]
    fn null_form_vanishes_on_functions_of_one_field() {
        let u = random(3, 3.0);
        let v = u.product(&u).unwrap();
        let e = admissible();
        let third = XsbSpec::wave(0.0, 0.0);
        let r = bilinear_ratio(BilinearTarget::NullformQ12, &e, &u, &v, None, &third).unwrap();
        assert!(r < 1e-8, "{r}");
        let w = random(4, 3.0);
        let generic = bilinear_ratio(BilinearTarget::NullformQ12, &e, &u, &w, None, &third).unwrap();
        assert!(generic > 1e-3);
    }

    #[test]
    fn ratios_are_scale_invariant() {
        let (u, v, w) = (random(5, 5.0), random(6, 4.0), random(7, 4.0));
        let e = admissible();
        let third = XsbSpec::wave(0.5, 0.51);
        for t in [BilinearTarget::Product, BilinearTarget::NullformQ12, BilinearTarget::TripleProduct] {
            let a = bilinear_ratio(t, &e, &u, &v, Some(&w), &third).unwrap();
            let b = bilinear_ratio(t, &e, &u.scaled(3.0), &v.scaled(0.2), Some(&w.scaled(7.0)), &third).unwrap();
            assert!((a - b).abs() < 1e-12 * a, "{t:?}");
        }
    }

    #[test]
    fn fuzz_is_reproducible() {
        let cfg = FuzzConfig {
            n: 16,
            nt: 16,
            n_trials: 12,
            ..FuzzConfig::default()
        };
        let a = bilinear_ratio_fuzz(BilinearTarget::Product, &admissible(), &cfg).unwrap();
        let b = bilinear_ratio_fuzz(BilinearTarget::Product, &admissible(), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.max_ratio >= a.median_ratio && a.median_ratio >= 0.0);
        assert!(a.violated_conditions.is_empty());
        let argmax = a.argmax.clone().unwrap();
        let g = GridSpec::square(16).unwrap();
        let f: Vec<_> = argmax.factors.iter().map(|r| r.build(g, 16, 3, 3).unwrap()).collect();
        let r = bilinear_ratio(BilinearTarget::Product, &admissible(), &f[0], &f[1], None, &cfg.third).unwrap();
        assert_eq!(r, a.max_ratio);
    }
}
