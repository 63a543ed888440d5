use crate::spectral::{FieldPair, SpectralField2D};

/// `(sum_k w(k)^{2s} |u_hat(k)|^2)^{1/2}` with `w = <xi>` or `|xi|`.
///
/// In the homogeneous case the zero mode is always excluded, whatever its
/// coefficient, so the result is a seminorm on fields with nonzero mean.
pub fn sobolev_norm(u: &SpectralField2D, s: f64, homogeneous: bool) -> f64 {
    let g = u.grid();
    u.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let [x, y] = g.xi_at(i);
            let r2 = x * x + y * y;
            let w2 = if homogeneous {
                if r2 == 0.0 {
                    return 0.0;
                }
                r2
            } else {
                1.0 + r2
            };
            w2.powf(s) * c.norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

/// Sobolev norm of a vector field, `l^2`-summed over components.
pub fn sobolev_norm_pair(a: &FieldPair, s: f64, homogeneous: bool) -> f64 {
    a.iter()
        .map(|f| sobolev_norm(f, s, homogeneous).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// `|| |grad|^{eps} u ||_{H^{l - eps}}`, the norm carried by the curl-free
/// potential.
pub fn curl_free_weighted_norm(u: &SpectralField2D, l: f64, eps: f64) -> f64 {
    let g = u.grid();
    u.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let [x, y] = g.xi_at(i);
            let r2 = x * x + y * y;
            if r2 == 0.0 {
                return 0.0;
            }
            r2.powf(eps) * (1.0 + r2).powf(l - eps) * c.norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

pub fn curl_free_weighted_norm_pair(a: &FieldPair, l: f64, eps: f64) -> f64 {
    a.iter()
        .map(|f| curl_free_weighted_norm(f, l, eps).powi(2))
        .sum::<f64>()
        .sqrt()
}
