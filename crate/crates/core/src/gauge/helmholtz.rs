use num_complex::Complex64;

use crate::error::Result;
use crate::spectral::{ops, FieldPair, SpectralField2D};

/// `R_1 a_2 - R_2 a_1`.
fn riesz_curl(a: &FieldPair) -> SpectralField2D {
    ops::riesz(&a[1], 1) - ops::riesz(&a[0], 2)
}

/// `R_1 a_1 + R_2 a_2`.
fn riesz_div(a: &FieldPair) -> SpectralField2D {
    ops::riesz(&a[0], 1) + ops::riesz(&a[1], 2)
}

/// Leray projection `P a = (R_2 (R_1 a_2 - R_2 a_1), -R_1 (R_1 a_2 - R_2 a_1))`.
pub fn leray_project(a: &FieldPair) -> FieldPair {
    let w = riesz_curl(a);
    let mut out = [ops::riesz(&w, 2), -ops::riesz(&w, 1)];
    for (o, src) in out.iter_mut().zip(a) {
        o.set_real(src.is_real());
    }
    out
}

/// Splits `a` into divergence-free and curl-free parts.
///
/// `a_cf = -(R_1 (R_1 a_1 + R_2 a_2), R_2 (R_1 a_1 + R_2 a_2))`; the spatial
/// mean of `a` is carried by `a_cf`.
pub fn helmholtz_decompose(a: &FieldPair) -> Result<(FieldPair, FieldPair)> {
    a[0].ensure_same_grid(&a[1])?;
    let a_df = leray_project(a);
    let d = riesz_div(a);
    let mut a_cf = [-ops::riesz(&d, 1), -ops::riesz(&d, 2)];
    for (c, src) in a_cf.iter_mut().zip(a) {
        c.coeffs_mut()[0] = src.coeffs()[0];
        c.set_real(src.is_real());
    }
    Ok((a_df, a_cf))
}

/// `L^2` inner product of two vector fields.
pub fn pair_inner(a: &FieldPair, b: &FieldPair) -> Complex64 {
    a[0].inner(&b[0]) + a[1].inner(&b[1])
}
