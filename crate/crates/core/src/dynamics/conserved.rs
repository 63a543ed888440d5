use crate::gauge::{energy_and_charge, energy_parts, GaugeState};

/// Energy and charge
/// `E = 1/2 int |d_t A|^2 + F_12^2 + |D phi|^2 + |d_t phi|^2 + m^2 |phi|^2`,
/// `Q = int Im(conj(phi) d_t phi)`.
pub fn conserved_quantities(state: &GaugeState) -> (f64, f64) {
    energy_and_charge(&energy_parts(state), state.mass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::{halfwave_split, observable_fields};
    use crate::spectral::{GridSpec, SpectralField2D};
    use num_complex::Complex64;

    #[test]
    fn zero_state_has_no_energy_or_charge() {
        let g = GridSpec::square(16).unwrap();
        assert_eq!(conserved_quantities(&GaugeState::vacuum(g, 1.0)), (0.0, 0.0));
    }

    #[test]
    fn static_single_mode_energy() {
        let g = GridSpec::square(16).unwrap();
        let a = Complex64::new(0.6, -0.8) * 1.5;
        let phi = SpectralField2D::single_mode(g, 3, 1, a).unwrap();
        let (p, m) = halfwave_split(&phi, &SpectralField2D::zeros(g)).unwrap();
        let mut s = GaugeState::vacuum(g, 0.0);
        s.phi_plus = p;
        s.phi_minus = m;
        let (e, q) = conserved_quantities(&s);
        // unit-normalized Plancherel: int |grad phi|^2 = |xi|^2 |a|^2
        let expect = 0.5 * 10.0 * a.norm_sqr();
        assert!((e - expect).abs() < 1e-13 * expect);
        assert!(q.abs() < 1e-15);
        let dens = observable_fields(&s).energy_density;
        assert!((dens.mean().re * g.area() - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn rotating_mode_carries_charge() {
        // phi = a e^{i(k.x - w t)} has phi_t = -i w phi, Q = -w |a|^2
        let g = GridSpec::square(16).unwrap();
        let phi = SpectralField2D::single_mode(g, 1, 1, Complex64::new(2.0, 0.0)).unwrap();
        let w = 3f64.sqrt();
        let phi_t = &phi * Complex64::new(0.0, -w);
        let (p, m) = halfwave_split(&phi, &phi_t).unwrap();
        let mut s = GaugeState::vacuum(g, 1.0);
        s.phi_plus = p;
        s.phi_minus = m;
        let (e, q) = conserved_quantities(&s);
        assert!((q + w * 4.0).abs() < 1e-13);
        assert!((e - 0.5 * (2.0 + 3.0 + 1.0) * 4.0).abs() < 1e-12);
    }
}
