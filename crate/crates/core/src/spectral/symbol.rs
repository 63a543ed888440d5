use num_complex::Complex64;

use super::field::SpectralField2D;
use crate::error::{Error, Result};

/// Fourier multiplier kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolKind {
    /// `|xi|^alpha`
    FracGrad(f64),
    /// `<xi>^alpha = (1 + |xi|^2)^(alpha/2)`
    Bessel(f64),
    /// `i xi_j`, `j` in {1, 2}
    Partial(u8),
    /// `i xi_j / |xi|`
    Riesz(u8),
    /// `|xi|^-2`
    InvLaplace,
}

/// What a multiplier does to the `k = 0` coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroModeRule {
    Zero,
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolSpec {
    pub kind: SymbolKind,
    pub zero_mode_rule: ZeroModeRule,
}

impl SymbolSpec {
    /// Symbol with the natural zero-mode rule: multipliers that vanish or are
    /// singular at the origin send the mean to zero.
    pub fn new(kind: SymbolKind) -> Self {
        let zero_mode_rule = match kind {
            SymbolKind::FracGrad(a) if a == 0.0 => ZeroModeRule::Identity,
            SymbolKind::Bessel(_) => ZeroModeRule::Identity,
            _ => ZeroModeRule::Zero,
        };
        SymbolSpec {
            kind,
            zero_mode_rule,
        }
    }

    pub fn with_rule(kind: SymbolKind, zero_mode_rule: ZeroModeRule) -> Self {
        SymbolSpec {
            kind,
            zero_mode_rule,
        }
    }

    pub fn frac_grad(alpha: f64) -> Self {
        Self::new(SymbolKind::FracGrad(alpha))
    }
    pub fn bessel(alpha: f64) -> Self {
        Self::new(SymbolKind::Bessel(alpha))
    }
    pub fn partial(j: u8) -> Self {
        Self::new(SymbolKind::Partial(j))
    }
    pub fn riesz(j: u8) -> Self {
        Self::new(SymbolKind::Riesz(j))
    }
    pub fn inv_laplace() -> Self {
        Self::new(SymbolKind::InvLaplace)
    }

    pub fn validate(&self) -> Result<()> {
        let singular = match self.kind {
            SymbolKind::Riesz(_) | SymbolKind::InvLaplace => true,
            SymbolKind::FracGrad(a) => a < 0.0,
            _ => false,
        };
        if singular && self.zero_mode_rule != ZeroModeRule::Zero {
            return Err(Error::Config(format!(
                "{:?} is singular or undefined at xi = 0 and needs zero_mode_rule = Zero",
                self.kind
            )));
        }
        match self.kind {
            SymbolKind::Partial(j) | SymbolKind::Riesz(j) if j != 1 && j != 2 => Err(
                Error::Config(format!("direction index {j} must be 1 or 2")),
            ),
            SymbolKind::FracGrad(a) | SymbolKind::Bessel(a) if !a.is_finite() => {
                Err(Error::Config(format!("exponent {a} is not finite")))
            }
            _ => Ok(()),
        }
    }

    /// Multiplier value at a nonzero frequency.
    #[inline]
    pub fn eval(&self, xi: [f64; 2]) -> Complex64 {
        let r2 = xi[0] * xi[0] + xi[1] * xi[1];
        match self.kind {
            SymbolKind::FracGrad(a) => Complex64::new(r2.powf(0.5 * a), 0.0),
            SymbolKind::Bessel(a) => Complex64::new((1.0 + r2).powf(0.5 * a), 0.0),
            SymbolKind::Partial(j) => Complex64::new(0.0, xi[(j - 1) as usize]),
            SymbolKind::Riesz(j) => Complex64::new(0.0, xi[(j - 1) as usize] / r2.sqrt()),
            SymbolKind::InvLaplace => Complex64::new(1.0 / r2, 0.0),
        }
    }
}

/// Coefficient-wise multiplication by the symbol.
pub fn apply_symbol(u: &SpectralField2D, sym: SymbolSpec) -> Result<SpectralField2D> {
    sym.validate()?;
    Ok(apply_symbol_unchecked(u, sym))
}

pub(crate) fn apply_symbol_unchecked(u: &SpectralField2D, sym: SymbolSpec) -> SpectralField2D {
    let g = *u.grid();
    let mut out = u.clone();
    for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
        if i == 0 {
            if sym.zero_mode_rule == ZeroModeRule::Zero {
                *c = Complex64::default();
            }
            continue;
        }
        if *c != Complex64::default() {
            *c *= sym.eval(g.xi_at(i));
        }
    }
    // every supported multiplier maps real fields to real fields
    out.set_real(u.is_real());
    out
}

/// Shorthands used throughout the crate.
pub mod ops {
    use super::*;

    pub fn partial(u: &SpectralField2D, j: u8) -> SpectralField2D {
        apply_symbol_unchecked(u, SymbolSpec::partial(j))
    }
    pub fn riesz(u: &SpectralField2D, j: u8) -> SpectralField2D {
        apply_symbol_unchecked(u, SymbolSpec::riesz(j))
    }
    /// `|grad|^alpha`, mean sent to zero for `alpha != 0`.
    pub fn frac_grad(u: &SpectralField2D, alpha: f64) -> SpectralField2D {
        apply_symbol_unchecked(u, SymbolSpec::frac_grad(alpha))
    }
    pub fn bessel(u: &SpectralField2D, alpha: f64) -> SpectralField2D {
        apply_symbol_unchecked(u, SymbolSpec::bessel(alpha))
    }
    pub fn inv_laplace(u: &SpectralField2D) -> SpectralField2D {
        apply_symbol_unchecked(u, SymbolSpec::inv_laplace())
    }
    pub fn div(a: &[SpectralField2D; 2]) -> SpectralField2D {
        partial(&a[0], 1) + partial(&a[1], 2)
    }
    /// Scalar curl `d_1 a_2 - d_2 a_1`.
    pub fn curl(a: &[SpectralField2D; 2]) -> SpectralField2D {
        partial(&a[1], 1) - partial(&a[0], 2)
    }
    pub fn grad(u: &SpectralField2D) -> [SpectralField2D; 2] {
        [partial(u, 1), partial(u, 2)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::GridSpec;
    use crate::spectral::random::random_field;
    use std::f64::consts::PI;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn bessel_on_unit_mode() {
        let g = GridSpec::square(16).unwrap();
        let u = SpectralField2D::single_mode(g, 1, 0, one()).unwrap();
        let v = apply_symbol(&u, SymbolSpec::bessel(1.0)).unwrap();
        assert!((v.coeff(1, 0) - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn riesz_kills_the_mean() {
        let g = GridSpec::square(16).unwrap();
        let u = SpectralField2D::single_mode(g, 0, 0, one()).unwrap();
        let v = apply_symbol(&u, SymbolSpec::riesz(1)).unwrap();
        assert_eq!(v.l2_norm(), 0.0);
    }

    #[test]
    fn singular_symbols_require_zero_rule() {
        let bad = [
            SymbolSpec::with_rule(SymbolKind::Riesz(1), ZeroModeRule::Identity),
            SymbolSpec::with_rule(SymbolKind::FracGrad(-0.5), ZeroModeRule::Identity),
            SymbolSpec::with_rule(SymbolKind::InvLaplace, ZeroModeRule::Identity),
            SymbolSpec::new(SymbolKind::Partial(3)),
        ];
        let g = GridSpec::square(8).unwrap();
        let u = SpectralField2D::zeros(g);
        for s in bad {
            assert!(matches!(apply_symbol(&u, s), Err(Error::Config(_))), "{s:?}");
        }
        assert!(apply_symbol(
            &u,
            SymbolSpec::with_rule(SymbolKind::FracGrad(0.5), ZeroModeRule::Identity)
        )
        .is_ok());
    }

    #[test]
    fn non_unit_period_scales_frequencies() {
        let g = GridSpec::new(16, 16, 1.0, GridSpec::DEFAULT_DEALIAS).unwrap();
        let u = SpectralField2D::single_mode(g, 0, 3, one()).unwrap();
        let v = apply_symbol(&u, SymbolSpec::partial(2)).unwrap();
        assert!((v.coeff(0, 3) - Complex64::new(0.0, 6.0 * PI)).norm() < 1e-12);
    }

    /// Direct DFT summation: evaluate `|grad|^alpha` of physical samples by
    /// explicitly projecting onto each plane wave.
    fn frac_grad_by_summation(samples: &[Complex64], g: GridSpec, alpha: f64) -> Vec<Complex64> {
        let n = g.nx;
        let h = g.period / n as f64;
        let mut out = vec![Complex64::default(); n * n];
        for i in 0..n * n {
            let (k1, k2) = g.mode_at(i);
            if (k1, k2) == (0, 0) || g.is_nyquist(i) {
                continue;
            }
            let mut c = Complex64::default();
            for (j, s) in samples.iter().enumerate() {
                let (x, y) = ((j % n) as f64 * h, (j / n) as f64 * h);
                c += s * Complex64::from_polar(1.0, -(k1 as f64 * x + k2 as f64 * y));
            }
            c *= h * h / g.period;
            let w = ((k1 * k1 + k2 * k2) as f64).powf(0.5 * alpha);
            for (j, o) in out.iter_mut().enumerate() {
                let (x, y) = ((j % n) as f64 * h, (j / n) as f64 * h);
                *o += c * w * Complex64::from_polar(1.0 / g.period, k1 as f64 * x + k2 as f64 * y);
            }
        }
        out
    }

    #[test]
    fn half_derivative_roundtrip_against_direct_summation() {
        let g = GridSpec::square(16).unwrap();
        let u = random_field(g, 5, 7, false);
        let fwd = apply_symbol(&u, SymbolSpec::frac_grad(0.5)).unwrap();
        // oracle: same operator by explicit summation in physical space
        let oracle = frac_grad_by_summation(&u.to_physical(), g, 0.5);
        let got = fwd.to_physical();
        let scale = oracle.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let err = got
            .iter()
            .zip(&oracle)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-12 * scale, "err {err}");

        let back = apply_symbol(&fwd, SymbolSpec::frac_grad(-0.5)).unwrap();
        let target = u.without_mean();
        assert!((&back - &target).l2_norm() < 1e-12 * target.l2_norm());
    }

    #[test]
    fn riesz_squares_sum_to_minus_identity() {
        let g = GridSpec::square(32).unwrap();
        let u = random_field(g, 15, 2, true).without_mean();
        let s = ops::riesz(&ops::riesz(&u, 1), 1) + ops::riesz(&ops::riesz(&u, 2), 2);
        assert!((&s + &u).l2_norm() < 1e-12 * u.l2_norm());
    }
}
