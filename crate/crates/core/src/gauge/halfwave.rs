//! Half-wave variables `u_pm = (u -+ i <grad>^{-1} u_t) / 2`.
//!
//! The inverse pair is `u = u_+ + u_-`, `u_t = i <grad> (u_+ - u_-)`, so a
//! free Klein-Gordon wave of unit mass has `u_pm(t) = exp(+- i <grad> t) u_pm(0)`.

use num_complex::Complex64;

use crate::error::Result;
use crate::spectral::{ops, SpectralField2D};

pub fn halfwave_split(
    u: &SpectralField2D,
    u_t: &SpectralField2D,
) -> Result<(SpectralField2D, SpectralField2D)> {
    u.ensure_same_grid(u_t)?;
    // i^{-1} <grad>^{-1} u_t
    let w = ops::bessel(u_t, -1.0) * Complex64::new(0.0, -1.0);
    let plus = (u + &w) * 0.5;
    let minus = (u - &w) * 0.5;
    Ok((plus, minus))
}

pub fn halfwave_reconstruct(
    u_plus: &SpectralField2D,
    u_minus: &SpectralField2D,
) -> Result<(SpectralField2D, SpectralField2D)> {
    u_plus.ensure_same_grid(u_minus)?;
    let u = u_plus + u_minus;
    let u_t = ops::bessel(&(u_plus - u_minus), 1.0) * Complex64::new(0.0, 1.0);
    Ok((u, u_t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random::random_field;
    use crate::spectral::GridSpec;

    #[test]
    fn zero_velocity_splits_evenly() {
        let g = GridSpec::square(16).unwrap();
        let u = random_field(g, 5, 1, false);
        let (p, m) = halfwave_split(&u, &SpectralField2D::zeros(g)).unwrap();
        assert!((&p - &(u.clone() * 0.5)).l2_norm() < 1e-15);
        assert!((&m - &(u * 0.5)).l2_norm() < 1e-15);
    }

    #[test]
    fn pure_velocity_mode() {
        let g = GridSpec::square(16).unwrap();
        let (k1, k2) = (2, -3);
        let c = Complex64::new(0.7, -0.2);
        let ut = SpectralField2D::single_mode(g, k1, k2, c).unwrap();
        let (p, m) = halfwave_split(&SpectralField2D::zeros(g), &ut).unwrap();
        let bracket = (1.0 + (k1 * k1 + k2 * k2) as f64).sqrt();
        // 2x2 mode system: p + m = 0, i<k>(p - m) = c  =>  p = -i c / (2<k>), m = -p
        let expect_p = Complex64::new(0.0, -0.5) * c / bracket;
        assert!((p.coeff(k1, k2) - expect_p).norm() < 1e-15);
        assert!((m.coeff(k1, k2) + expect_p).norm() < 1e-15);
    }

    #[test]
    fn reconstruct_inverts_split() {
        let g = GridSpec::square(32).unwrap();
        let u = random_field(g, 12, 2, false);
        let ut = random_field(g, 12, 3, false);
        let (p, m) = halfwave_split(&u, &ut).unwrap();
        let (u2, ut2) = halfwave_reconstruct(&p, &m).unwrap();
        assert!((&u2 - &u).l2_norm() < 1e-12 * u.l2_norm());
        assert!((&ut2 - &ut).l2_norm() < 1e-12 * ut.l2_norm());
    }

    #[test]
    fn equal_halves_have_no_velocity_and_single_plus_mode() {
        let g = GridSpec::square(16).unwrap();
        let p = random_field(g, 4, 4, false);
        let (_, ut) = halfwave_reconstruct(&p, &p).unwrap();
        assert_eq!(ut.l2_norm(), 0.0);

        let c = Complex64::new(1.0, 2.0);
        let p = SpectralField2D::single_mode(g, 1, 1, c).unwrap();
        let (u, ut) = halfwave_reconstruct(&p, &SpectralField2D::zeros(g)).unwrap();
        assert!((u.coeff(1, 1) - c).norm() < 1e-15);
        let expect = Complex64::new(0.0, 3f64.sqrt()) * c;
        assert!((ut.coeff(1, 1) - expect).norm() < 1e-14);
    }

    #[test]
    fn reconstruct_is_linear() {
        let g = GridSpec::square(16).unwrap();
        let (a, b, c, d) = (
            random_field(g, 5, 5, false),
            random_field(g, 5, 6, false),
            random_field(g, 5, 7, false),
            random_field(g, 5, 8, false),
        );
        let (alpha, beta) = (Complex64::new(0.3, -1.1), Complex64::new(-2.0, 0.5));
        let lhs = halfwave_reconstruct(
            &(a.clone() * alpha + c.clone() * beta),
            &(b.clone() * alpha + d.clone() * beta),
        )
        .unwrap();
        let r1 = halfwave_reconstruct(&a, &b).unwrap();
        let r2 = halfwave_reconstruct(&c, &d).unwrap();
        let rhs0 = r1.0 * alpha + r2.0 * beta;
        let rhs1 = r1.1 * alpha + r2.1 * beta;
        assert!((&lhs.0 - &rhs0).l2_norm() < 1e-13 * rhs0.l2_norm());
        assert!((&lhs.1 - &rhs1).l2_norm() < 1e-13 * rhs1.l2_norm());
    }

    mod props {
        use proptest::prelude::*;

        use super::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn split_and_reconstruct_are_inverse(seed in 0u64..10_000, kmax in 1i64..7) {
                let g = GridSpec::square(16).unwrap();
                let u = random_field(g, kmax, seed, false);
                let ut = random_field(g, kmax, seed + 1, false);
                let (p, m) = halfwave_split(&u, &ut).unwrap();
                let (u2, ut2) = halfwave_reconstruct(&p, &m).unwrap();
                prop_assert!((&u2 - &u).l2_norm() < 1e-14);
                prop_assert!((&ut2 - &ut).l2_norm() < 1e-13 * ut.l2_norm().max(1.0));
                let (p2, m2) = halfwave_split(&u2, &ut2).unwrap();
                prop_assert!((&p2 - &p).l2_norm() < 1e-14 && (&m2 - &m).l2_norm() < 1e-14);
            }
        }
    }
}
