use crate::error::{Error, Result};
use crate::spectral::{ops, pair_add, pair_l2_norm, FieldPair, GridSpec, SpectralField2D};

use super::halfwave::{halfwave_reconstruct, halfwave_split};

/// Full dynamical state in half-wave variables.
///
/// `phi = phi_plus + phi_minus`, `A = a_df_plus + a_df_minus + a_cf`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeState {
    pub phi_plus: SpectralField2D,
    pub phi_minus: SpectralField2D,
    pub a_df_plus: FieldPair,
    pub a_df_minus: FieldPair,
    pub a_cf: FieldPair,
    pub t: f64,
    pub mass: f64,
    /// Weight exponent used by the curl-free norm diagnostics.
    pub eps_tilde: f64,
}

/// Physical fields and their time derivatives reconstructed from a state.
#[derive(Debug, Clone)]
pub struct Reconstructed {
    pub phi: SpectralField2D,
    pub phi_t: SpectralField2D,
    pub a_df: FieldPair,
    pub a_df_t: FieldPair,
}

pub const DEFAULT_EPS_TILDE: f64 = 0.01;

impl GaugeState {
    pub fn vacuum(grid: GridSpec, mass: f64) -> Self {
        let z = SpectralField2D::zeros(grid);
        GaugeState {
            phi_plus: z.clone(),
            phi_minus: z.clone(),
            a_df_plus: [z.clone(), z.clone()],
            a_df_minus: [z.clone(), z.clone()],
            a_cf: [z.clone(), z],
            t: 0.0,
            mass,
            eps_tilde: DEFAULT_EPS_TILDE,
        }
    }

    /// Builds a state from physical fields and their time derivatives.
    pub fn from_fields(
        phi: &SpectralField2D,
        phi_t: &SpectralField2D,
        a_df: &FieldPair,
        a_df_t: &FieldPair,
        a_cf: &FieldPair,
        mass: f64,
    ) -> Result<Self> {
        let (phi_plus, phi_minus) = halfwave_split(phi, phi_t)?;
        let (p1, m1) = halfwave_split(&a_df[0], &a_df_t[0])?;
        let (p2, m2) = halfwave_split(&a_df[1], &a_df_t[1])?;
        let s = GaugeState {
            phi_plus,
            phi_minus,
            a_df_plus: [p1, p2],
            a_df_minus: [m1, m2],
            a_cf: a_cf.clone(),
            t: 0.0,
            mass,
            eps_tilde: DEFAULT_EPS_TILDE,
        };
        s.ensure_consistent()?;
        Ok(s)
    }

    pub fn grid(&self) -> &GridSpec {
        self.phi_plus.grid()
    }

    /// Checks that every component lives on the same grid.
    pub fn ensure_consistent(&self) -> Result<()> {
        let g = self.grid();
        for f in self.fields() {
            g.ensure_same(f.grid())?;
        }
        Ok(())
    }

    /// All component fields in the fixed order
    /// `phi+, phi-, a_df+ (1,2), a_df- (1,2), a_cf (1,2)`.
    pub fn fields(&self) -> [&SpectralField2D; 8] {
        [
            &self.phi_plus,
            &self.phi_minus,
            &self.a_df_plus[0],
            &self.a_df_plus[1],
            &self.a_df_minus[0],
            &self.a_df_minus[1],
            &self.a_cf[0],
            &self.a_cf[1],
        ]
    }

    pub fn fields_mut(&mut self) -> [&mut SpectralField2D; 8] {
        let [p1, p2] = &mut self.a_df_plus;
        let [m1, m2] = &mut self.a_df_minus;
        let [c1, c2] = &mut self.a_cf;
        [
            &mut self.phi_plus,
            &mut self.phi_minus,
            p1,
            p2,
            m1,
            m2,
            c1,
            c2,
        ]
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|f| f.is_finite())
    }

    pub fn reconstruct(&self) -> Reconstructed {
        let (phi, phi_t) = halfwave_reconstruct(&self.phi_plus, &self.phi_minus)
            .expect("state components share a grid");
        let (a1, a1t) = halfwave_reconstruct(&self.a_df_plus[0], &self.a_df_minus[0])
            .expect("state components share a grid");
        let (a2, a2t) = halfwave_reconstruct(&self.a_df_plus[1], &self.a_df_minus[1])
            .expect("state components share a grid");
        let mut a_df = [a1, a2];
        let mut a_df_t = [a1t, a2t];
        for f in a_df.iter_mut().chain(a_df_t.iter_mut()) {
            f.set_real(true);
        }
        Reconstructed {
            phi,
            phi_t,
            a_df,
            a_df_t,
        }
    }

    pub fn phi(&self) -> SpectralField2D {
        &self.phi_plus + &self.phi_minus
    }

    pub fn a_df(&self) -> FieldPair {
        pair_add(&self.a_df_plus, &self.a_df_minus)
    }

    /// Total spatial potential `A = A^df + A^cf`.
    pub fn potential(&self) -> FieldPair {
        pair_add(&self.a_df(), &self.a_cf)
    }

    /// Relative divergence of the divergence-free part, measured against its
    /// `H^1` size.
    pub fn df_divergence_defect(&self) -> f64 {
        let a = self.a_df();
        let d = ops::div(&a).l2_norm();
        let h1 = (ops::bessel(&a[0], 1.0).l2_norm().powi(2) + ops::bessel(&a[1], 1.0).l2_norm().powi(2)).sqrt();
        if h1 == 0.0 {
            0.0
        } else {
            d / h1
        }
    }

    /// Relative curl of the curl-free part.
    pub fn cf_curl_defect(&self) -> f64 {
        let c = ops::curl(&self.a_cf).l2_norm();
        let h1 = (ops::bessel(&self.a_cf[0], 1.0).l2_norm().powi(2)
            + ops::bessel(&self.a_cf[1], 1.0).l2_norm().powi(2))
        .sqrt();
        if h1 == 0.0 {
            0.0
        } else {
            c / h1
        }
    }

    /// Checks the structural invariants of the state.
    pub fn validate(&self) -> Result<()> {
        self.ensure_consistent()?;
        if self.df_divergence_defect() > 1e-11 {
            return Err(Error::Precondition(format!(
                "A^df is not divergence-free (relative defect {:.3e})",
                self.df_divergence_defect()
            )));
        }
        if self.cf_curl_defect() > 1e-11 {
            return Err(Error::Precondition(format!(
                "A^cf is not curl-free (relative defect {:.3e})",
                self.cf_curl_defect()
            )));
        }
        for c in &self.a_cf {
            if c.hermitian_defect() > 1e-13 {
                return Err(Error::Precondition("A^cf must be real-valued".into()));
            }
        }
        Ok(())
    }

    /// Sum of component-wise `L^2` norms; used for relative comparisons.
    pub fn l2_size(&self) -> f64 {
        self.fields().iter().map(|f| f.l2_norm().powi(2)).sum::<f64>().sqrt()
    }

    /// `L^2` distance between two states on the same grid.
    pub fn l2_distance(&self, other: &GaugeState) -> f64 {
        self.fields()
            .iter()
            .zip(other.fields())
            .map(|(a, b)| (*a - b).l2_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `(|| phi ||, || A^df ||, || A^cf ||)` in `L^2`.
    pub fn component_norms(&self) -> (f64, f64, f64) {
        (
            self.phi().l2_norm(),
            pair_l2_norm(&self.a_df()),
            pair_l2_norm(&self.a_cf),
        )
    }
}
