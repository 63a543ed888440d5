//! Seeded random band-limited fields for tests, fuzzing and data generation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::field::SpectralField2D;
use super::grid::GridSpec;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex standard normal sample.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Gaussian coefficients on `|k_j| <= kmax`, normalized to unit `L^2` norm.
pub fn random_field_from<R: Rng + ?Sized>(
    rng: &mut R,
    grid: GridSpec,
    kmax: i64,
    real: bool,
) -> SpectralField2D {
    let mut f = SpectralField2D::zeros(grid);
    for i in 0..grid.len() {
        let (k1, k2) = grid.mode_at(i);
        // draw for every slot so the stream does not depend on kmax
        let z = complex_normal(rng);
        if k1.abs() <= kmax && k2.abs() <= kmax && !grid.is_nyquist(i) {
            f.coeffs_mut()[i] = z;
        }
    }
    f.set_real(false);
    if real {
        f.make_real();
    }
    let n = f.l2_norm();
    if n > 0.0 {
        f = f * (1.0 / n);
    }
    f
}

pub fn random_field(grid: GridSpec, kmax: i64, seed: u64, real: bool) -> SpectralField2D {
    random_field_from(&mut seeded_rng(seed), grid, kmax, real)
}
