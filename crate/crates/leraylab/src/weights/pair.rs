//! Weight-pair conditions for the axisymmetric global-existence setting:
//! Φ ≤ Ψ ≤ 1, Ψ ∈ A₂, |∇Ψ| ≤ C √Φ Ψ and |ΔΨ| ≤ C Φ Ψ, with both weights
//! depending only on the cylindrical radius.

use super::muckenhoupt::{aq_estimate, AqEstimate, CubeFamily};
use super::WeightSpec;
use crate::error::{Error, Result};
use crate::trend::diverging_trend;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    /// Φ ≤ Ψ ≤ 1 on the cloud
    pub domination: bool,
    pub psi_a2: AqEstimate,
    pub grad_ok: bool,
    /// estimated constant in |∇Ψ| ≤ C √Φ Ψ
    pub c_grad: f64,
    pub lap_ok: bool,
    /// estimated constant in |ΔΨ| ≤ C Φ Ψ
    pub c_lap: f64,
    pub pass: bool,
}

/// Check the (Φ, Ψ) pair hypotheses on a cylindrical sample cloud.
///
/// Derivatives are taken in closed form; the two ratio bounds are judged by
/// the same outer-shell trend rule as the axiom checks, so "pass" means
/// "bounded on the cloud with no growth at large radius".
pub fn check_pair(phi: &WeightSpec, psi: &WeightSpec, cloud: &[Vec<f64>]) -> Result<PairReport> {
    for (name, w) in [("Φ", phi), ("Ψ", psi)] {
        if !w.is_cylindrical() && w.family != super::WeightFamily::Constant {
            return Err(Error::contract(format!(
                "weight pair checks assume cylindrical weights; {name} is not"
            )));
        }
    }
    if cloud.is_empty() {
        return Err(Error::contract("sample cloud is empty"));
    }

    let mut domination = true;
    for p in cloud {
        let f = phi.eval(p)?;
        let s = psi.eval(p)?;
        if f > s * (1.0 + 1.0e-12) || s > 1.0 + 1.0e-12 {
            domination = false;
        }
    }

    let cubes = CubeFamily::dyadic(psi.effective_dim())?;
    let psi_a2 = aq_estimate(psi, 2.0, &cubes)?;

    // |∇Ψ| / (√Φ Ψ): use cylindrical radius shells; skip the axis point where
    // the OnePlusAbs Laplacian is singular.
    let ratio_points: Vec<&Vec<f64>> = cloud.iter().filter(|p| cyl_radius(p) > 1.0e-6).collect();
    let (c_grad, grad_shells) = shell_scan(&ratio_points, |p| {
        let rho = psi.rho(p)?;
        Ok(psi.profile_deriv(rho).abs() / (phi.eval(p)?.sqrt() * psi.profile(rho)))
    })?;
    let (c_lap, lap_shells) = shell_scan(&ratio_points, |p| {
        Ok(psi.laplacian(p)?.abs() / (phi.eval(p)? * psi.eval(p)?))
    })?;
    let grad_ok = c_grad.is_finite() && !diverging_trend(&grad_shells);
    let lap_ok = c_lap.is_finite() && !diverging_trend(&lap_shells);

    let pass = domination && psi_a2.is_finite() && grad_ok && lap_ok;
    Ok(PairReport { domination, psi_a2, grad_ok, c_grad, lap_ok, c_lap, pass })
}

fn cyl_radius(p: &[f64]) -> f64 {
    (p[0] * p[0] + p[1] * p[1]).sqrt()
}

fn shell_scan<F>(points: &[&Vec<f64>], ratio: F) -> Result<(f64, Vec<f64>)>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let max_r = points.iter().map(|p| cyl_radius(p)).fold(0.0, f64::max);
    let n_shells = max_r.log2().floor().max(0.0) as usize + 1;
    let mut shells = vec![0.0_f64; n_shells];
    let mut overall = 0.0_f64;
    for p in points {
        let v = ratio(p)?;
        overall = overall.max(v);
        let r = cyl_radius(p);
        if r >= 1.0 {
            let s = (r.log2().floor() as usize).min(n_shells - 1);
            shells[s] = shells[s].max(v);
        }
    }
    Ok((overall, shells))
}

/// Default cloud for pair checks: cylindrical radii out to 10⁶ with several
/// z offsets (the weights must ignore z).
pub fn pair_cloud() -> Vec<Vec<f64>> {
    let mut cloud = Vec::new();
    let mut radii = vec![0.01, 0.05, 0.1, 0.25, 0.5, 0.75];
    for j in 0..=20 {
        let base = (2.0_f64).powi(j);
        for m in [1.0, 1.414_213_562] {
            radii.push(base * m);
        }
    }
    for r in radii {
        for (c, s) in [(1.0, 0.0), (0.6, 0.8)] {
            for z in [0.0, 3.0, -11.0] {
                cloud.push(vec![r * c, r * s, z]);
            }
        }
    }
    cloud
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightForm;

    #[test]
    fn canonical_pair_passes() {
        // Φ = (1+r)^{-3/2}, Ψ = (1+r²)^{-1/2}
        let phi = WeightSpec::cylindrical(1.5, WeightForm::OnePlusAbs).unwrap();
        let psi = WeightSpec::pair_member(1.0, WeightForm::OnePlusSqHalf).unwrap();
        let rep = check_pair(&phi, &psi, &pair_cloud()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn degenerate_pair_is_consistent() {
        // Ψ = Φ = (1+r)^{-1}: the single-weight setting as a degenerate pair
        let phi = WeightSpec::cylindrical(1.0, WeightForm::OnePlusAbs).unwrap();
        let rep = check_pair(&phi, &phi, &pair_cloud()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn psi_decaying_faster_than_phi_fails_domination() {
        // δ = 1.5 > γ = 1: Φ ≤ Ψ breaks at large r
        let phi = WeightSpec::cylindrical(1.0, WeightForm::OnePlusAbs).unwrap();
        let psi = WeightSpec::pair_member(1.5, WeightForm::OnePlusSqHalf).unwrap();
        let rep = check_pair(&phi, &psi, &pair_cloud()).unwrap();
        assert!(!rep.domination);
        assert!(!rep.pass);
    }

    #[test]
    fn radial_weight_is_rejected() {
        let phi = WeightSpec::radial(1.0, 3, WeightForm::OnePlusAbs).unwrap();
        let psi = WeightSpec::cylindrical(1.0, WeightForm::OnePlusAbs).unwrap();
        assert!(check_pair(&phi, &psi, &pair_cloud()).is_err());
    }
}
