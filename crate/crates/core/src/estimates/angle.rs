//! Angle between interacting frequencies versus modulation weights.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Space-time frequencies with `xi1 + xi2 + xi3 = 0`, `tau1 + tau2 + tau3 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTriple {
    pub xi: [[f64; 2]; 3],
    pub tau: [f64; 3],
    pub signs: [Sign; 3],
}

fn bracket(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

impl FrequencyTriple {
    /// Closes the triple; the third entries are negated sums, so the
    /// constraints hold exactly.
    pub fn new(xi1: [f64; 2], xi2: [f64; 2], tau1: f64, tau2: f64, signs: [Sign; 3]) -> Self {
        FrequencyTriple {
            xi: [xi1, xi2, [-(xi1[0] + xi2[0]), -(xi1[1] + xi2[1])]],
            tau: [tau1, tau2, -(tau1 + tau2)],
            signs,
        }
    }

    /// Places `tau1`, `tau2` on their cones `tau_i = +-|xi_i|`.
    pub fn on_cone(xi1: [f64; 2], xi2: [f64; 2], signs: [Sign; 3]) -> Self {
        Self::new(xi1, xi2, signs[0].value() * norm(xi1), signs[1].value() * norm(xi2), signs)
    }

    /// Exchanges the second and third slots.
    pub fn permuted(&self) -> Self {
        FrequencyTriple {
            xi: [self.xi[0], self.xi[2], self.xi[1]],
            tau: [self.tau[0], self.tau[2], self.tau[1]],
            signs: [self.signs[0], self.signs[2], self.signs[1]],
        }
    }

    /// Exact closure as produced by [`FrequencyTriple::new`].
    pub fn is_closed(&self) -> bool {
        let x = self.xi;
        x[2] == [-(x[0][0] + x[1][0]), -(x[0][1] + x[1][1])] && self.tau[2] == -(self.tau[0] + self.tau[1])
    }
}

/// Angle in `[0, pi]` between `s1 xi1` and `s2 xi2`; zero if either vanishes.
pub fn signed_angle(xi1: [f64; 2], s1: Sign, xi2: [f64; 2], s2: Sign) -> f64 {
    let (n1, n2) = (norm(xi1), norm(xi2));
    if n1 == 0.0 || n2 == 0.0 {
        return 0.0;
    }
    let sg = s1.value() * s2.value();
    let dot = sg * (xi1[0] * xi2[0] + xi1[1] * xi2[1]);
    let cross = sg * (xi1[0] * xi2[1] - xi1[1] * xi2[0]);
    cross.abs().atan2(dot)
}

/// `angle(+-xi1, +-'xi2)` divided by the sum of the three modulation terms.
pub fn angle_ratio(t: &FrequencyTriple, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    for (name, x) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if !(0.0..=0.5).contains(&x) {
            return Err(Error::Precondition(format!("{name} = {x} outside [0, 1/2]")));
        }
    }
    let [x1, x2, x3] = t.xi;
    let [t1, t2, t3] = t.tau;
    let m = bracket(norm(x1)).min(bracket(norm(x2)));
    let rhs = (bracket(-t1 + t.signs[0].value() * norm(x1)) / m).powf(alpha)
        + (bracket(-t2 + t.signs[1].value() * norm(x2)) / m).powf(beta)
        + (bracket(t3.abs() - norm(x3)) / m).powf(gamma);
    Ok(signed_angle(x1, t.signs[0], x2, t.signs[1]) / rhs)
}

/// Value on the anti-parallel on-cone triple `xi1 = (10, 0)`, `xi2 = (-5, 0)`,
/// signs `(+, +)`, with exponents `(1/2, 1/2, 1/2 - 0.01)`.
pub const ANTI_PARALLEL_RATIO: f64 = 1.377_825_454_831_973;

/// Frozen after calibration: the first `10^5`-sample scan (seed 0) peaked at
/// 2.121, and seeds 0..3 up to `4 * 10^5` samples stayed below 2.125.
pub const ANGLE_RATIO_BOUND: f64 = 2.5;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AngleScanConfig {
    pub n_samples: usize,
    pub seed: u64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub xi_max: f64,
    /// Evaluates with `(beta, gamma)` swapped; the reported triple is
    /// relabelled with slots 2 and 3 exchanged.
    pub permuted: bool,
}

impl Default for AngleScanConfig {
    fn default() -> Self {
        AngleScanConfig {
            n_samples: 100_000,
            seed: 0,
            alpha: 0.5,
            beta: 0.5,
            gamma: 0.5 - 0.01,
            xi_max: 1e3,
            permuted: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AngleScanReport {
    pub n_samples: usize,
    pub max_ratio: f64,
    pub argmax: FrequencyTriple,
    /// Maximum per sign combination `(+,+), (+,-), (-,+), (-,-)`.
    pub max_by_signs: [f64; 4],
}

const CHUNK: usize = 1024;

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.random::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

/// Distance from the cone: exactly zero a quarter of the time.
fn modulation(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_range(0..4) == 0 {
        0.0
    } else {
        let m = log_uniform(rng, 1e-3, 1e3);
        if rng.random::<bool>() {
            m
        } else {
            -m
        }
    }
}

fn random_xi(rng: &mut ChaCha8Rng, xi_max: f64) -> [f64; 2] {
    let r = log_uniform(rng, 1e-2, xi_max);
    let th = rng.random::<f64>() * 2.0 * PI;
    [r * th.cos(), r * th.sin()]
}

fn sample(rng: &mut ChaCha8Rng, cfg: &AngleScanConfig) -> FrequencyTriple {
    loop {
        let signs = [random_sign(rng), random_sign(rng), random_sign(rng)];
        let xa = random_xi(rng, cfg.xi_max);
        let xb = random_xi(rng, cfg.xi_max);
        let xc = [-(xa[0] + xb[0]), -(xa[1] + xb[1])];
        if norm(xc) > cfg.xi_max {
            continue;
        }
        let ta = signs[0].value() * norm(xa) + modulation(rng);
        let tb = signs[1].value() * norm(xb) + modulation(rng);
        return FrequencyTriple::new(xa, xb, ta, tb, signs);
    }
}

fn sign_slot(t: &FrequencyTriple) -> usize {
    2 * (t.signs[0] == Sign::Minus) as usize + (t.signs[1] == Sign::Minus) as usize
}

/// Monte-Carlo supremum of [`angle_ratio`]. Samples come in fixed chunks with
/// one RNG stream each, so a larger `n_samples` extends the same sequence.
pub fn angle_scan(cfg: &AngleScanConfig) -> Result<AngleScanReport> {
    if cfg.n_samples == 0 {
        return Err(Error::Config("angle scan needs at least one sample".into()));
    }
    let (b, g) = if cfg.permuted { (cfg.gamma, cfg.beta) } else { (cfg.beta, cfg.gamma) };
    let chunks = cfg.n_samples.div_ceil(CHUNK);
    let partial: Vec<Result<(f64, FrequencyTriple, [f64; 4])>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(cfg.n_samples - c * CHUNK);
            let mut best = (f64::NEG_INFINITY, None, [0.0; 4]);
            for _ in 0..count {
                let t = sample(&mut rng, cfg);
                let r = angle_ratio(&t, cfg.alpha, b, g)?;
                let slot = sign_slot(&t);
                let drawn = if cfg.permuted { t.permuted() } else { t };
                best.2[slot] = f64::max(best.2[slot], r);
                if r > best.0 {
                    best.0 = r;
                    best.1 = Some(drawn);
                }
            }
            Ok((best.0, best.1.expect("chunks are non-empty"), best.2))
        })
        .collect();
    let mut out = AngleScanReport {
        n_samples: cfg.n_samples,
        max_ratio: f64::NEG_INFINITY,
        argmax: FrequencyTriple::new([0.0; 2], [0.0; 2], 0.0, 0.0, [Sign::Plus; 3]),
        max_by_signs: [0.0; 4],
    };
    for p in partial {
        let (r, t, by) = p?;
        if r > out.max_ratio {
            out.max_ratio = r;
            out.argmax = t;
        }
        for i in 0..4 {
            out.max_by_signs[i] = out.max_by_signs[i].max(by[i]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    #[test]
    fn parallel_same_sign_on_cone_is_zero() {
        for signs in [[Plus, Plus, Plus], [Minus, Minus, Plus]] {
            let t = FrequencyTriple::on_cone([3.0, 4.0], [6.0, 8.0], signs);
            assert!(t.is_closed());
            assert_eq!(angle_ratio(&t, 0.5, 0.5, 0.49).unwrap(), 0.0);
        }
    }

    #[test]
    fn anti_parallel_regression_value() {
        let t = FrequencyTriple::on_cone([10.0, 0.0], [-5.0, 0.0], [Plus, Plus, Plus]);
        let r = angle_ratio(&t, 0.5, 0.5, 0.49).unwrap();
        let m = 26f64.sqrt();
        let by_hand = PI / (2.0 * (1.0 / m).sqrt() + (101f64.sqrt() / m).powf(0.49));
        assert!((r - by_hand).abs() < 1e-14);
        assert!((r - ANTI_PARALLEL_RATIO).abs() < 1e-12, "{r:.15}");
    }

    #[test]
    fn opposite_signs_flip_the_angle() {
        assert!((signed_angle([1.0, 0.0], Plus, [1.0, 0.0], Minus) - PI).abs() < 1e-15);
        assert!((signed_angle([1.0, 0.0], Minus, [0.0, 2.0], Minus) - PI / 2.0).abs() < 1e-15);
        assert_eq!(signed_angle([0.0, 0.0], Plus, [1.0, 0.0], Plus), 0.0);
    }

    #[test]
    fn exponents_are_checked() {
        let t = FrequencyTriple::on_cone([1.0, 0.0], [0.0, 1.0], [Plus; 3]);
        assert!(angle_ratio(&t, 0.6, 0.5, 0.5).is_err());
    }

    #[test]
    fn scan_is_deterministic_and_nested() {
        let small = AngleScanConfig {
            n_samples: 3000,
            ..AngleScanConfig::default()
        };
        let a = angle_scan(&small).unwrap();
        let b = angle_scan(&small).unwrap();
        assert_eq!(a.max_ratio, b.max_ratio);
        let big = angle_scan(&AngleScanConfig {
            n_samples: 6000,
            ..small
        })
        .unwrap();
        assert!(big.max_ratio >= a.max_ratio);
        assert!(a.max_ratio <= ANGLE_RATIO_BOUND);
    }
}
