use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::spacetime::SpaceTimeField;

/// Default value realizing `b+` as `b + eps`.
pub const DEFAULT_EPS: f64 = 0.01;

/// Modulation weight `W(tau, xi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XsbWeight {
    /// `<|tau| - |xi|>`
    Wave,
    /// `<tau>`
    Elliptic,
    /// `<tau + |xi|>`
    HalfwavePlus,
    /// `<tau - |xi|>`
    HalfwaveMinus,
}

impl XsbWeight {
    pub fn eval(&self, tau: f64, xi: [f64; 2]) -> f64 {
        let k = xi[0].hypot(xi[1]);
        let m = match self {
            XsbWeight::Wave => tau.abs() - k,
            XsbWeight::Elliptic => tau,
            XsbWeight::HalfwavePlus => tau + k,
            XsbWeight::HalfwaveMinus => tau - k,
        };
        (1.0 + m * m).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XsbSpec {
    pub s: f64,
    pub b: f64,
    pub weight: XsbWeight,
    pub eps: f64,
}

impl XsbSpec {
    pub fn new(s: f64, b: f64, weight: XsbWeight) -> Self {
        XsbSpec {
            s,
            b,
            weight,
            eps: DEFAULT_EPS,
        }
    }

    pub fn wave(s: f64, b: f64) -> Self {
        Self::new(s, b, XsbWeight::Wave)
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    /// `x+` for this spec's `eps`.
    pub fn plus(&self, x: f64) -> f64 {
        x + self.eps
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps <= 0.1) {
            return Err(Error::Config(format!("eps must lie in (0, 0.1], got {}", self.eps)));
        }
        if !self.s.is_finite() || !self.b.is_finite() {
            return Err(Error::Config("X^{s,b} exponents must be finite".into()));
        }
        Ok(())
    }
}

/// `(sum <xi>^{2s} W^{2b} |u_hat|^2)^{1/2}` over the space-time lattice.
pub fn xsb_norm(u: &SpaceTimeField, spec: &XsbSpec) -> f64 {
    let mut sum = 0.0;
    u.for_each_mode(|tau, xi, c| {
        let n2 = c.norm_sqr();
        if n2 == 0.0 {
            return;
        }
        let br = 1.0 + xi[0] * xi[0] + xi[1] * xi[1];
        let w = spec.weight.eval(tau, xi);
        sum += br.powf(spec.s) * w.powf(2.0 * spec.b) * n2;
    });
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use num_complex::Complex64;
    use proptest::prelude::*;

    use super::*;
    use crate::norms::TimeWindow;
    use crate::spectral::random::{complex_normal, seeded_rng};
    use crate::spectral::{GridSpec, SpectralField2D};

    const WEIGHTS: [XsbWeight; 4] = [
        XsbWeight::Wave,
        XsbWeight::Elliptic,
        XsbWeight::HalfwavePlus,
        XsbWeight::HalfwaveMinus,
    ];

    fn random_st(n: usize, nt: usize, seed: u64) -> SpaceTimeField {
        let g = GridSpec::square(n).unwrap();
        let mut rng = seeded_rng(seed);
        let coeffs = (0..g.len() * nt).map(|_| complex_normal(&mut rng)).collect();
        SpaceTimeField::from_coeffs(g, nt, 2.0 * PI, TimeWindow::Rectangular, coeffs).unwrap()
    }

    #[test]
    fn zero_exponents_give_l2() {
        let f = random_st(8, 8, 1);
        for w in WEIGHTS {
            let x = xsb_norm(&f, &XsbSpec::new(0.0, 0.0, w));
            assert!((x - f.l2_norm()).abs() < 1e-12 * x);
        }
    }

    #[test]
    fn single_space_time_mode() {
        let g = GridSpec::square(16).unwrap();
        let s = 2.0 * PI;
        let nt = 16;
        let (k1, k2, m) = (3, 4, -2);
        let mut coeffs = vec![Complex64::default(); g.len() * nt];
        let j = GridSpec::index_of_freq(m, nt).unwrap();
        coeffs[j * g.len() + g.mode_index(k1, k2).unwrap()] = Complex64::new(1.0, 0.0);
        let f = SpaceTimeField::from_coeffs(g, nt, s, TimeWindow::Rectangular, coeffs).unwrap();
        let (sx, bx) = (0.7, -0.3);
        let want = 26f64.sqrt().powf(sx) * (1.0 + 9.0f64).sqrt().powf(bx);
        let got = xsb_norm(&f, &XsbSpec::wave(sx, bx));
        assert!((got - want).abs() < 1e-13 * want);
    }

    #[test]
    fn windowed_free_wave_concentrates_near_the_cone() {
        // Hann window over S = 2 pi: ||w||_{L^2} = sqrt(3 S / 8) ~ 1.53
        let g = GridSpec::square(32).unwrap();
        let s = 2.0 * PI;
        let u0 = SpectralField2D::from_fn(g, |x, y| {
            let r2 = (x - PI).powi(2) + (y - PI).powi(2);
            Complex64::new((-r2).exp(), 0.0)
        });
        let f = SpaceTimeField::from_fn(g, 64, s, TimeWindow::RaisedCosine, |t| {
            u0.map_modes(|xi, c| c * Complex64::from_polar(1.0, t * xi[0].hypot(xi[1])))
        })
        .unwrap();
        let b = 0.6;
        let bw = TimeWindow::RaisedCosine.rms_bandwidth(s);
        let reference = u0.l2_norm() * (1.0 + bw * bw).sqrt().powf(b);
        let ratio = xsb_norm(&f, &XsbSpec::wave(0.0, b)) / reference;
        assert!(ratio > 0.25 && ratio < 4.0, "ratio {ratio}");
        assert!((ratio - 1.53).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn halfwave_weights_are_ordered_against_the_wave_weight() {
        for seed in 0..20 {
            let f = random_st(8, 8, seed);
            for &b in &[-0.7, -0.2, 0.0, 0.3, 0.6] {
                let wave = xsb_norm(&f, &XsbSpec::wave(0.4, b));
                for w in [XsbWeight::HalfwavePlus, XsbWeight::HalfwaveMinus] {
                    let pm = xsb_norm(&f, &XsbSpec::new(0.4, b, w));
                    if b <= 0.0 {
                        assert!(pm <= wave * (1.0 + 1e-14));
                    } else {
                        assert!(pm >= wave * (1.0 - 1e-14));
                    }
                }
            }
        }
    }

    #[test]
    fn eps_is_validated() {
        assert!(XsbSpec::wave(0.0, 0.5).validate().is_ok());
        assert!(XsbSpec::wave(0.0, 0.5).with_eps(0.0).validate().is_err());
        assert!(XsbSpec::wave(0.0, 0.5).with_eps(0.2).validate().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn homogeneous_of_degree_one(seed in 0u64..1000, a in 0.1f64..10.0, s in -1.0f64..1.0, b in -1.0f64..1.0) {
            let f = random_st(8, 4, seed);
            for w in WEIGHTS {
                let spec = XsbSpec::new(s, b, w);
                let x = xsb_norm(&f, &spec);
                let y = xsb_norm(&f.scaled(a), &spec);
                prop_assert!((y - a * x).abs() <= 1e-12 * a * x);
            }
        }

        #[test]
        fn monotone_in_s_and_b(seed in 0u64..1000, s in -1.0f64..1.0, ds in 0.0f64..1.0, b in 0.0f64..1.0, db in 0.0f64..1.0) {
            let f = random_st(8, 4, seed);
            for w in WEIGHTS {
                let base = xsb_norm(&f, &XsbSpec::new(s, b, w));
                prop_assert!(xsb_norm(&f, &XsbSpec::new(s + ds, b, w)) >= base * (1.0 - 1e-14));
                prop_assert!(xsb_norm(&f, &XsbSpec::new(s, b + db, w)) >= base * (1.0 - 1e-14));
                let neg = xsb_norm(&f, &XsbSpec::new(s, -b, w));
                prop_assert!(xsb_norm(&f, &XsbSpec::new(s, -b - db, w)) <= neg * (1.0 + 1e-14));
            }
        }
    }
}
