//! Weight functions and the adapted-weight axiom checks.
//!
//! A weight here is a closed-form decaying profile attached to either the
//! full radius `|x|` or the cylindrical radius `r = sqrt(x₁²+x₂²)`:
//!
//! * `OnePlusAbs`:    `Φ(x) = (1+ρ)^{-γ}`
//! * `OnePlusSqHalf`: `Φ(x) = (1+ρ²)^{-γ/2}`
//!
//! Gradients and Laplacians come from the closed forms, never from finite
//! differences, so the axiom checks are free of discretization noise.

mod axioms;
mod muckenhoupt;
mod pair;

pub use axioms::{
    check_adapted, check_h2, check_h4, default_cloud, default_lambda_grid, default_r_scan,
    far_cloud, lemma4_bound, AdaptedReport, H2Report, H4Report, Lemma4Bound,
};
pub use muckenhoupt::{aq_estimate, lemma2_power, AqEstimate, CubeFamily, Lemma2Power};
pub use pair::{check_pair, pair_cloud, PairReport};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// How the profile argument ρ is formed from a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightFamily {
    /// Φ ≡ 1.
    Constant,
    /// ρ = |x|.
    RadialPower,
    /// ρ = sqrt(x₁²+x₂²); requires d = 3.
    CylindricalPower,
    /// A cylindrical weight used as one member of a (Φ, Ψ) pair.
    ProductPairMember,
}

/// Closed-form profile shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightForm {
    /// `(1+ρ)^{-γ}` — the `w_γ` family; Lipschitz, kinked at ρ = 0.
    OnePlusAbs,
    /// `(1+ρ²)^{-γ/2}` — smooth everywhere, same decay.
    OnePlusSqHalf,
}

/// Symbolic description of a weight function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub family: WeightFamily,
    pub gamma: f64,
    pub dim: usize,
    pub form: WeightForm,
}

impl WeightSpec {
    pub fn constant(dim: usize) -> Result<Self> {
        Self::new(WeightFamily::Constant, 0.0, dim, WeightForm::OnePlusAbs)
    }

    pub fn radial(gamma: f64, dim: usize, form: WeightForm) -> Result<Self> {
        Self::new(WeightFamily::RadialPower, gamma, dim, form)
    }

    pub fn cylindrical(gamma: f64, form: WeightForm) -> Result<Self> {
        Self::new(WeightFamily::CylindricalPower, gamma, 3, form)
    }

    /// A member of a velocity/vorticity weight pair (cylindrical by convention).
    pub fn pair_member(gamma: f64, form: WeightForm) -> Result<Self> {
        Self::new(WeightFamily::ProductPairMember, gamma, 3, form)
    }

    pub fn new(family: WeightFamily, gamma: f64, dim: usize, form: WeightForm) -> Result<Self> {
        if !(dim == 2 || dim == 3) {
            return Err(Error::contract(format!("weight dimension must be 2 or 3, got {dim}")));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::contract(format!("weight exponent must be >= 0, got {gamma}")));
        }
        if matches!(family, WeightFamily::CylindricalPower | WeightFamily::ProductPairMember) && dim != 3 {
            return Err(Error::contract("cylindrical weights require d = 3"));
        }
        Ok(WeightSpec { family, gamma, dim, form })
    }

    pub fn is_cylindrical(&self) -> bool {
        matches!(self.family, WeightFamily::CylindricalPower | WeightFamily::ProductPairMember)
    }

    /// Dimension in which the Muckenhoupt scan runs. A cylindrical weight on
    /// ℝ³ belongs to A_q(ℝ³) exactly when its planar profile belongs to
    /// A_q(ℝ²), and the cube average in the z-direction is trivially exact,
    /// so the scan reduces to two dimensions.
    pub fn effective_dim(&self) -> usize {
        if self.is_cylindrical() {
            2
        } else {
            self.dim
        }
    }

    /// Φ^θ stays in the family: the exponent just scales.
    pub fn powf(&self, theta: f64) -> WeightSpec {
        WeightSpec { gamma: self.gamma * theta, ..*self }
    }

    /// Profile argument for a point (0 for the constant weight).
    pub fn rho(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim {
            return Err(Error::contract(format!(
                "point has dimension {}, weight expects {}",
                point.len(),
                self.dim
            )));
        }
        Ok(match self.family {
            WeightFamily::Constant => 0.0,
            WeightFamily::RadialPower => point.iter().map(|x| x * x).sum::<f64>().sqrt(),
            WeightFamily::CylindricalPower | WeightFamily::ProductPairMember => {
                (point[0] * point[0] + point[1] * point[1]).sqrt()
            }
        })
    }

    /// Φ at ρ. Always in (0, 1].
    pub fn profile(&self, rho: f64) -> f64 {
        if self.family == WeightFamily::Constant || self.gamma == 0.0 {
            return 1.0;
        }
        match self.form {
            WeightForm::OnePlusAbs => (1.0 + rho).powf(-self.gamma),
            WeightForm::OnePlusSqHalf => (1.0 + rho * rho).powf(-0.5 * self.gamma),
        }
    }

    /// dΦ/dρ.
    pub fn profile_deriv(&self, rho: f64) -> f64 {
        if self.family == WeightFamily::Constant || self.gamma == 0.0 {
            return 0.0;
        }
        let g = self.gamma;
        match self.form {
            WeightForm::OnePlusAbs => -g * (1.0 + rho).powf(-g - 1.0),
            WeightForm::OnePlusSqHalf => -g * rho * (1.0 + rho * rho).powf(-0.5 * g - 1.0),
        }
    }

    /// d²Φ/dρ².
    pub fn profile_deriv2(&self, rho: f64) -> f64 {
        if self.family == WeightFamily::Constant || self.gamma == 0.0 {
            return 0.0;
        }
        let g = self.gamma;
        match self.form {
            WeightForm::OnePlusAbs => g * (g + 1.0) * (1.0 + rho).powf(-g - 2.0),
            WeightForm::OnePlusSqHalf => {
                let s = 1.0 + rho * rho;
                -g * s.powf(-0.5 * g - 1.0) + g * (g + 2.0) * rho * rho * s.powf(-0.5 * g - 2.0)
            }
        }
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        Ok(self.profile(self.rho(point)?))
    }

    /// |∇Φ| at a point; equals |Φ'(ρ)| by the radial chain rule.
    pub fn grad_norm(&self, point: &[f64]) -> Result<f64> {
        Ok(self.profile_deriv(self.rho(point)?).abs())
    }

    pub fn grad(&self, point: &[f64]) -> Result<Vec<f64>> {
        let rho = self.rho(point)?;
        let mut g = vec![0.0; self.dim];
        if rho == 0.0 {
            return Ok(g);
        }
        let d = self.profile_deriv(rho);
        let ncomp = if self.is_cylindrical() { 2 } else { self.dim };
        for i in 0..ncomp {
            g[i] = d * point[i] / rho;
        }
        Ok(g)
    }

    /// ΔΦ at a point: Φ'' + (m-1)/ρ · Φ' with m the number of coordinates ρ
    /// depends on. Singular at ρ = 0 for the `OnePlusAbs` form.
    pub fn laplacian(&self, point: &[f64]) -> Result<f64> {
        let rho = self.rho(point)?;
        let m = if self.is_cylindrical() { 2.0 } else { self.dim as f64 };
        if rho == 0.0 {
            return Ok(match self.form {
                // Φ''(0) = -γ and Φ'/ρ → -γ, so ΔΦ(0) = -γ m
                WeightForm::OnePlusSqHalf => -self.gamma * m,
                WeightForm::OnePlusAbs => {
                    if self.gamma == 0.0 {
                        0.0
                    } else {
                        f64::NEG_INFINITY
                    }
                }
            });
        }
        Ok(self.profile_deriv2(rho) + (m - 1.0) / rho * self.profile_deriv(rho))
    }
}

/// Cached constants attached to a weight: the (H2) constant C₁, the (H4)
/// constant C₂, the slow-decay constant C₃, and scanned A_q estimates.
#[derive(Debug, Clone, Serialize)]
pub struct WeightConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub aq_table: Vec<(f64, AqEstimate)>,
}

impl WeightConstants {
    /// Measure all constants for a spec on the default clouds and cube family.
    pub fn measure(spec: &WeightSpec, qs: &[f64]) -> Result<Self> {
        let h2 = check_h2(spec, &axioms::default_cloud(spec))?;
        let h4 = check_h4(spec, &axioms::default_lambda_grid(), &axioms::far_cloud(spec))?;
        let l4 = lemma4_bound(spec, h2.c1_est)?;
        let cubes = CubeFamily::dyadic(spec.effective_dim())?;
        let mut aq_table = Vec::new();
        for &q in qs {
            aq_table.push((q, aq_estimate(spec, q, &cubes)?));
        }
        Ok(WeightConstants { c1: h2.c1_est, c2: h4.c2_est, c3: l4.c3, aq_table })
    }
}
