use num_complex::Complex64;

use super::field::SpectralField2D;
use super::grid::GridSpec;
use super::symbol::ops;
use crate::error::Result;

/// Transforms physical samples and applies the dealias mask.
pub(crate) fn dealiased_from_physical(grid: GridSpec, samples: &[Complex64], real: bool) -> SpectralField2D {
    let mut f = SpectralField2D::from_physical(grid, samples).expect("sample count matches grid");
    f.dealias();
    f.set_real(real);
    f
}

/// Physical-space product followed by the dealias mask.
///
/// With the Plancherel normalization the coefficients of the result are
/// `period^{-1} sum_{k'} u_hat(k') v_hat(k - k')` on the retained band.
pub fn pointwise_product(u: &SpectralField2D, v: &SpectralField2D) -> Result<SpectralField2D> {
    u.ensure_same_grid(v)?;
    let pu = u.to_physical();
    let pv = v.to_physical();
    let prod: Vec<Complex64> = pu.iter().zip(&pv).map(|(a, b)| a * b).collect();
    Ok(dealiased_from_physical(*u.grid(), &prod, u.is_real() && v.is_real()))
}

/// Null form `Q12(u, v) = d_1 u d_2 v - d_2 u d_1 v`, dealiased.
pub fn null_form_q12(u: &SpectralField2D, v: &SpectralField2D) -> Result<SpectralField2D> {
    u.ensure_same_grid(v)?;
    let u1 = ops::partial(u, 1).to_physical();
    let u2 = ops::partial(u, 2).to_physical();
    let v1 = ops::partial(v, 1).to_physical();
    let v2 = ops::partial(v, 2).to_physical();
    let q: Vec<Complex64> = (0..u1.len())
        .map(|i| u1[i] * v2[i] - u2[i] * v1[i])
        .collect();
    Ok(dealiased_from_physical(*u.grid(), &q, u.is_real() && v.is_real()))
}
