use serde::{Deserialize, Serialize};

use super::spacetime::SpaceTimeField;

/// Which variable is integrated first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixedOrder {
    /// `|| ||u(t)||_{L^p_x} ||_{L^q_t}`
    XThenT,
    /// `|| ||u(., x)||_{L^q_t} ||_{L^p_x}`
    TThenX,
}

fn lp(values: impl Iterator<Item = f64>, p: f64, measure: f64) -> f64 {
    if p.is_infinite() {
        values.fold(0.0, f64::max)
    } else {
        (values.map(|v| v.powf(p)).sum::<f64>() * measure).powf(1.0 / p)
    }
}

/// Nested discrete Lebesgue norm over the sample grid, spatial exponent `p`
/// and temporal exponent `q`, both in `[1, inf]`.
pub fn mixed_norm(u: &SpaceTimeField, p: f64, q: f64, order: MixedOrder) -> f64 {
    assert!(p >= 1.0 && q >= 1.0, "exponents must lie in [1, inf]");
    let g = u.grid();
    let len = g.len();
    let nt = u.nt();
    let dx = g.area() / len as f64;
    let dt = u.t_span() / nt as f64;
    let s = u.samples();
    match order {
        MixedOrder::XThenT => {
            let inner = (0..nt).map(|j| lp(s[j * len..(j + 1) * len].iter().map(|z| z.norm()), p, dx));
            lp(inner, q, dt)
        }
        MixedOrder::TThenX => {
            let inner = (0..len).map(|i| lp((0..nt).map(|j| s[j * len + i].norm()), q, dt));
            lp(inner, p, dx)
        }
    }
}
