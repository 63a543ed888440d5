//! Matrix functions of the per-mode linear operator.
//!
//! For `(u, v) = (u, u_t)` the linear part is `L = [[0, 1], [-w^2, 0]]`.
//! Since `L^2 = -w^2 I`, every entire function splits into even and odd
//! parts: `phi_k(tau L) = a_k(theta) I + b_k(theta) tau L` with
//! `theta = tau w` and `b_k = a_{k+1}`, where
//! `a_k(theta) = sum_j (-1)^j theta^{2j} / (2j + k)!`.

use crate::spectral::{GridSpec, SpectralField2D};

/// `a_k(theta)` for `k <= 4`.
pub(crate) fn phi_even(k: usize, theta: f64) -> f64 {
    let t = theta.abs();
    if t <= 2.0 {
        // series: terms fall below 1e-30 well before 20 terms
        let y = -t * t;
        let mut fact = (1..=k).map(|x| x as f64).product::<f64>();
        let mut pow = 1.0;
        let mut sum = 0.0;
        for j in 0..20 {
            sum += pow / fact;
            pow *= y;
            let m = (2 * j + k) as f64;
            fact *= (m + 1.0) * (m + 2.0);
        }
        return sum;
    }
    let (s, c) = t.sin_cos();
    match k {
        0 => c,
        1 => s / t,
        2 => (1.0 - c) / (t * t),
        3 => (t - s) / (t * t * t),
        4 => (c - 1.0 + 0.5 * t * t) / (t * t * t * t),
        _ => unreachable!("phi_even is only tabulated for k <= 4"),
    }
}

/// Per-mode action `(u, v) -> (a u + b v, a v - bw u)`.
#[derive(Debug, Clone)]
pub(crate) struct PairCoeffs {
    a: Vec<f64>,
    b: Vec<f64>,
    bw: Vec<f64>,
}

impl PairCoeffs {
    /// `scale * phi_k(tau L)` with squared frequencies `omega2`.
    pub fn phi(k: usize, tau: f64, omega2: &[f64], scale: f64) -> Self {
        let mut a = Vec::with_capacity(omega2.len());
        let mut b = Vec::with_capacity(omega2.len());
        let mut bw = Vec::with_capacity(omega2.len());
        for &w2 in omega2 {
            let theta = tau * w2.sqrt();
            let ak = phi_even(k, theta);
            let bk = phi_even(k + 1, theta) * tau;
            a.push(scale * ak);
            b.push(scale * bk);
            bw.push(scale * bk * w2);
        }
        PairCoeffs { a, b, bw }
    }

    /// `sum_i c_i * self_i`.
    pub fn combine(parts: &[(f64, &PairCoeffs)]) -> Self {
        let n = parts[0].1.a.len();
        let mut out = PairCoeffs {
            a: vec![0.0; n],
            b: vec![0.0; n],
            bw: vec![0.0; n],
        };
        for (c, p) in parts {
            for i in 0..n {
                out.a[i] += c * p.a[i];
                out.b[i] += c * p.b[i];
                out.bw[i] += c * p.bw[i];
            }
        }
        out
    }

    pub fn apply(&self, pair: &[SpectralField2D; 2]) -> [SpectralField2D; 2] {
        let mut u = pair[0].clone();
        let mut v = pair[1].clone();
        let (pu, pv) = (pair[0].coeffs(), pair[1].coeffs());
        let (cu, cv) = (u.coeffs_mut(), v.coeffs_mut());
        for i in 0..pu.len() {
            cu[i] = pu[i] * self.a[i] + pv[i] * self.b[i];
        }
        for i in 0..pu.len() {
            cv[i] = pv[i] * self.a[i] - pu[i] * self.bw[i];
        }
        [u, v]
    }

    /// Adds `self(pair)` into `out`.
    pub fn apply_add(&self, pair: &[SpectralField2D; 2], out: &mut [SpectralField2D; 2]) {
        let (pu, pv) = (pair[0].coeffs(), pair[1].coeffs());
        let [ou, ov] = out;
        let cu = ou.coeffs_mut();
        for i in 0..pu.len() {
            cu[i] += pu[i] * self.a[i] + pv[i] * self.b[i];
        }
        let cv = ov.coeffs_mut();
        for i in 0..pu.len() {
            cv[i] += pv[i] * self.a[i] - pu[i] * self.bw[i];
        }
    }
}

/// Squared linear frequencies `|xi|^2 + mu^2` on the grid.
pub(crate) fn omega_squared(grid: &GridSpec, mu: f64) -> Vec<f64> {
    (0..grid.len())
        .map(|i| {
            let [x, y] = grid.xi_at(i);
            x * x + y * y + mu * mu
        })
        .collect()
}

/// Exact linear evolution of `(u, u_t)` over time `t`.
#[cfg(test)]
pub(crate) fn exact_linear_flow(
    pair: &[SpectralField2D; 2],
    t: f64,
    omega2: &[f64],
) -> [SpectralField2D; 2] {
    PairCoeffs::phi(0, t, omega2, 1.0).apply(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|x| x as f64).product()
    }

    #[test]
    fn series_and_closed_forms_agree_at_the_switch() {
        for k in 0..=4 {
            let below = phi_even(k, 2.0);
            let above = phi_even(k, 2.0 + 1e-12);
            assert!((below - above).abs() < 1e-10, "k = {k}: {below} vs {above}");
        }
    }

    #[test]
    fn value_at_zero_is_inverse_factorial() {
        for k in 0..=4 {
            assert_eq!(phi_even(k, 0.0), 1.0 / factorial(k));
        }
    }

    #[test]
    fn recurrence_between_orders() {
        // phi_k(z) = z phi_{k+1}(z) + 1/k!, even part: a_k = -theta^2 a_{k+2} + 1/k!
        for &t in &[0.3, 1.7, 2.5, 9.0, 40.0] {
            for k in 0..=2 {
                let lhs = phi_even(k, t);
                let rhs = -t * t * phi_even(k + 2, t) + 1.0 / factorial(k);
                assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()), "k={k} t={t}");
            }
        }
    }

    #[test]
    fn zeroth_order_is_the_harmonic_oscillator() {
        let g = GridSpec::square(8).unwrap();
        let w2 = omega_squared(&g, 1.0);
        let u = SpectralField2D::single_mode(g, 1, 2, Complex64::new(1.0, 0.0)).unwrap();
        let v = SpectralField2D::zeros(g);
        let [u1, v1] = exact_linear_flow(&[u, v], 0.7, &w2);
        let w = 6f64.sqrt();
        let i = g.mode_index(1, 2).unwrap();
        assert!((u1.coeffs()[i].re - (w * 0.7).cos()).abs() < 1e-15);
        assert!((v1.coeffs()[i].re + w * (w * 0.7).sin()).abs() < 1e-14);
    }
}
