//! Numerical checks of the adapted-weight axioms (H1)-(H4) and the
//! slow-decay bound of the weight family.

use super::muckenhoupt::{aq_estimate, AqEstimate, CubeFamily};
use super::WeightSpec;
use crate::error::{Error, Result};
use crate::trend::diverging_trend;
use serde::Serialize;

/// Default sample cloud: dyadic shells out to 2¹⁰ ≈ 10³, four radii per
/// octave, a handful of directions, plus points near the origin.
pub fn default_cloud(spec: &WeightSpec) -> Vec<Vec<f64>> {
    cloud_to_radius(spec, 1024.0)
}

/// Cloud extending far beyond the H4 λ grid so the scaling trend at λ ≤ 10³
/// is read inside the asymptotic window rather than at the cloud edge.
pub fn far_cloud(spec: &WeightSpec) -> Vec<Vec<f64>> {
    cloud_to_radius(spec, 1.0e7)
}

fn cloud_to_radius(spec: &WeightSpec, max_radius: f64) -> Vec<Vec<f64>> {
    let dim = spec.dim;
    let mut radii = vec![0.0, 0.01, 0.05, 0.1, 0.25, 0.5];
    let octaves = max_radius.log2().ceil() as i32;
    for j in 0..=octaves {
        let base = (2.0_f64).powi(j);
        for m in [1.0, 1.189_207_115, 1.414_213_562, 1.681_792_83] {
            let r = base * m;
            if r <= 2.0 * max_radius {
                radii.push(r);
            }
        }
    }
    let dirs: Vec<Vec<f64>> = match dim {
        2 => vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
        ],
        _ => vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.6, 0.8, 0.0],
            // off-plane direction so cylindrical weights see varying z
            vec![0.48, 0.64, 0.6],
        ],
    };
    let mut cloud = Vec::with_capacity(radii.len() * dirs.len());
    for r in radii {
        for d in &dirs {
            cloud.push(d.iter().map(|c| c * r).collect());
        }
    }
    cloud
}

/// Default λ grid for (H4): 2⁰..2¹⁰ ≥ 10³.
pub fn default_lambda_grid() -> Vec<f64> {
    (0..=10).map(|j| (2.0_f64).powi(j)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct H2Report {
    pub pass: bool,
    /// max over the cloud of |∇Φ| / Φ^{3/2}
    pub c1_est: f64,
    /// per-octave maxima of the ratio (the boundedness trend)
    pub shell_max: Vec<f64>,
}

/// Check (H2): |∇Φ| ≤ C₁ Φ^{3/2}. The constant is estimated as the cloud
/// maximum of the ratio; boundedness is judged by the ratio's trend over the
/// outermost dyadic shells.
pub fn check_h2(spec: &WeightSpec, cloud: &[Vec<f64>]) -> Result<H2Report> {
    let (c1_est, shell_max) = shell_ratio_scan(cloud, |p| {
        let rho = spec.rho(p)?;
        Ok(spec.profile_deriv(rho).abs() / spec.profile(rho).powf(1.5))
    })?;
    let pass = c1_est.is_finite() && !diverging_trend(&shell_max);
    Ok(H2Report { pass, c1_est, shell_max })
}

/// Shared scaffolding: max of a pointwise ratio plus its per-octave maxima.
/// Requires the cloud to reach radius 10³ (the weight-relevant radius).
fn shell_ratio_scan<F>(cloud: &[Vec<f64>], ratio: F) -> Result<(f64, Vec<f64>)>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    if cloud.is_empty() {
        return Err(Error::contract("sample cloud is empty"));
    }
    let radius_of = |p: &[f64]| p.iter().map(|x| x * x).sum::<f64>().sqrt();
    let max_r = cloud.iter().map(|p| radius_of(p)).fold(0.0, f64::max);
    if max_r < 1.0e3 {
        return Err(Error::contract(format!(
            "sample cloud must cover a ball of radius >= 1e3, reaches only {max_r:.3e}"
        )));
    }
    let n_shells = max_r.log2().floor() as usize + 1;
    let mut shell_max = vec![0.0_f64; n_shells];
    let mut overall = 0.0_f64;
    for p in cloud {
        let v = ratio(p)?;
        overall = overall.max(v);
        let r = radius_of(p);
        if r >= 1.0 {
            let shell = (r.log2().floor() as usize).min(n_shells - 1);
            shell_max[shell] = shell_max[shell].max(v);
        }
    }
    Ok((overall, shell_max))
}

#[derive(Debug, Clone, Serialize)]
pub struct H4Report {
    pub pass: bool,
    /// max over (sample, λ) of Φ(x/λ) / (λ² Φ(x))
    pub c2_est: f64,
    /// whether the lower bound Φ(x) ≤ Φ(x/λ) held everywhere
    pub lower_ok: bool,
    /// per-λ maxima of the upper ratio
    pub per_lambda_max: Vec<f64>,
}

/// Check (H4): Φ(x) ≤ Φ(x/λ) ≤ C₂ λ² Φ(x) for λ ≥ 1.
pub fn check_h4(spec: &WeightSpec, lambda_grid: &[f64], cloud: &[Vec<f64>]) -> Result<H4Report> {
    if lambda_grid.is_empty() || cloud.is_empty() {
        return Err(Error::contract("check_h4 needs a λ grid and a sample cloud"));
    }
    let max_lambda = lambda_grid.iter().cloned().fold(f64::MIN, f64::max);
    if max_lambda < 1.0e3 {
        return Err(Error::contract("λ grid must include values up to >= 1e3"));
    }
    if lambda_grid.iter().any(|&l| l < 1.0) {
        return Err(Error::contract("(H4) is a λ >= 1 condition"));
    }
    let mut lambdas = lambda_grid.to_vec();
    lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut lower_ok = true;
    let mut c2_est = 0.0_f64;
    let mut per_lambda_max = Vec::with_capacity(lambdas.len());
    for &lambda in &lambdas {
        let mut lmax = 0.0_f64;
        for p in cloud {
            let rho = spec.rho(p)?;
            let phi = spec.profile(rho);
            let phi_shrunk = spec.profile(rho / lambda);
            if phi > phi_shrunk * (1.0 + 1.0e-12) {
                lower_ok = false;
            }
            lmax = lmax.max(phi_shrunk / (lambda * lambda * phi));
        }
        per_lambda_max.push(lmax);
        c2_est = c2_est.max(lmax);
    }
    let pass = lower_ok && !diverging_trend(&per_lambda_max);
    Ok(H4Report { pass, c2_est, lower_ok, per_lambda_max })
}

#[derive(Debug, Clone, Serialize)]
pub struct AdaptedReport {
    pub h1: bool,
    pub h2: H2Report,
    /// witness exponent for (H3), when one exists in the scanned range
    pub h3_witness: Option<f64>,
    pub h3_scans: Vec<(f64, AqEstimate)>,
    pub h4: H4Report,
    pub adapted: bool,
}

/// Aggregate check of (H1)-(H4) on the default clouds and cube family.
///
/// (H3) holds when some r in `r_scan` gives a finite A_r scan for Φ^r. The
/// scan cannot certify membership, only fail to see divergence; near the
/// boundary exponents the verdict inherits the trend rule's resolution.
pub fn check_adapted(spec: &WeightSpec, r_scan: &[f64]) -> Result<AdaptedReport> {
    if r_scan.is_empty() {
        return Err(Error::contract("r_scan must be nonempty"));
    }
    if r_scan.iter().any(|&r| !(r > 1.0 && r <= 2.0)) {
        return Err(Error::contract("(H3) exponents must lie in (1, 2]"));
    }
    let cloud = default_cloud(spec);
    let h1 = cloud.iter().try_fold(true, |acc, p| -> Result<bool> {
        let v = spec.eval(p)?;
        Ok(acc && v > 0.0 && v <= 1.0)
    })?;
    let h2 = check_h2(spec, &cloud)?;
    let h4 = check_h4(spec, &default_lambda_grid(), &far_cloud(spec))?;

    let cubes = CubeFamily::dyadic(spec.effective_dim())?;
    let mut h3_scans = Vec::new();
    let mut h3_witness = None;
    for &r in r_scan {
        let est = aq_estimate(&spec.powf(r), r, &cubes)?;
        if h3_witness.is_none() && est.is_finite() {
            h3_witness = Some(r);
        }
        h3_scans.push((r, est));
    }
    let adapted = h1 && h2.pass && h3_witness.is_some() && h4.pass;
    Ok(AdaptedReport { h1, h2, h3_witness, h3_scans, h4, adapted })
}

/// Default (H3) exponent scan.
pub fn default_r_scan() -> Vec<f64> {
    vec![1.1, 1.2, 1.25, 1.4, 1.5, 1.75, 2.0]
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Lemma4Bound {
    pub c3: f64,
    pub verified: bool,
}

/// Slow-decay bound: (1+ρ)⁻² ≤ C₃ Φ with C₃ = (Φ(0)^{-1/2} + C₁/2)², the
/// constant produced by integrating g' ≥ -C₁ g^{3/2} along rays. For
/// cylindrical weights ρ is the cylindrical radius, matching the planar
/// variant of the bound.
pub fn lemma4_bound(spec: &WeightSpec, c1: f64) -> Result<Lemma4Bound> {
    if !(c1 >= 0.0) {
        return Err(Error::contract("lemma4_bound needs c1 >= 0"));
    }
    let phi0 = spec.profile(0.0);
    let c3 = (phi0.powf(-0.5) + 0.5 * c1).powi(2);
    // dense radial sample: linear near 0, dyadic out to 2^11
    let mut verified = true;
    let mut check = |rho: f64| {
        let lhs = (1.0 + rho).powi(-2);
        if lhs > c3 * spec.profile(rho) * (1.0 + 1.0e-12) {
            verified = false;
        }
    };
    for i in 0..=400 {
        check(i as f64 * 0.005); // [0, 2]
    }
    for j in 0..=110 {
        check((2.0_f64).powf(j as f64 * 0.1)); // [1, 2048]
    }
    Ok(Lemma4Bound { c3, verified })
}
