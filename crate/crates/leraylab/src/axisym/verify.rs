//! Axisymmetric verifications: the Ladyzhenskaya monotonicity monitor, the
//! weighted enstrophy inequality fit, and the vortex-stretching identity.

use super::interp::OmegaSampler;
use super::ledger::AxiLedger;
use super::{AxiState, CylGrid};
use crate::error::{Error, Result};
use ndarray::Array2;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct MonitorReport {
    /// ∫η² r dr dz non-increasing row-to-row within 1e-6 relative
    pub monotone: bool,
    /// worst relative uptick between consecutive rows
    pub max_uptick: f64,
    /// 2π·lady_q(0) ≤ ‖∇⊗ω₀‖₂²
    pub initial_bound_ok: bool,
    pub pass: bool,
}

/// Check the decay of the Ladyzhenskaya quantity along a completed run and
/// its initial domination by the vorticity gradient.
pub fn ladyzhenskaya_monitor(ledger: &AxiLedger, initial_grad_omega_sq: f64) -> Result<MonitorReport> {
    if ledger.rows.len() < 2 {
        return Err(Error::contract("monitor needs a completed run"));
    }
    let mut max_uptick = 0.0_f64;
    for w in ledger.rows.windows(2) {
        let (prev, next) = (w[0].lady_q, w[1].lady_q);
        if prev > 0.0 {
            max_uptick = max_uptick.max((next - prev) / prev);
        } else if next > 0.0 {
            max_uptick = f64::INFINITY;
        }
    }
    let monotone = max_uptick <= 1e-6;
    let initial_bound_ok =
        2.0 * std::f64::consts::PI * ledger.rows[0].lady_q <= initial_grad_omega_sq * (1.0 + 1e-12);
    Ok(MonitorReport { monotone, max_uptick, initial_bound_ok, pass: monotone && initial_bound_ok })
}

#[derive(Debug, Clone, Serialize)]
pub struct Coe1Report {
    /// minimal constant closing the weighted enstrophy inequality row-wise
    pub c_min: f64,
    pub rows: usize,
}

/// Fit the minimal C in
///
/// ```text
///   ‖√Ψ ω(t)‖₂² + ∫₀ᵗ ‖√Ψ ∇⊗ω‖₂² ds
///     ≤ ‖√Ψ ω₀‖₂²
///       + C ∫₀ᵗ (1 + ‖√Φ u‖₂ + ‖√Φ u‖₂^{4/3}) ‖√Ψ ω‖₂²
///               + ‖√Ψ ω‖₂³ + ‖√Ψ ω‖₂⁶ ds
/// ```
///
/// with trapezoidal quadrature and bisection.
pub fn verify_coe1(ledger: &AxiLedger) -> Result<Coe1Report> {
    if ledger.rows.len() < 2 {
        return Err(Error::contract("verify_coe1 needs a completed run"));
    }
    let times: Vec<f64> = ledger.rows.iter().map(|r| r.t).collect();
    let omega: Vec<f64> = ledger.rows.iter().map(|r| r.e_psi_omega).collect();
    let grad: Vec<f64> = ledger.rows.iter().map(|r| r.e_psi_grad_omega).collect();
    let forcing: Vec<f64> = ledger
        .rows
        .iter()
        .map(|r| {
            let u = r.e_phi_u.sqrt();
            let w = r.e_psi_omega;
            (1.0 + u + u.powf(4.0 / 3.0)) * w + w.powf(1.5) + w.powi(3)
        })
        .collect();
    let cumtrapz = |f: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; f.len()];
        for i in 1..f.len() {
            out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (f[i] + f[i - 1]);
        }
        out
    };
    let lhs_cum = cumtrapz(&grad);
    let rhs_cum = cumtrapz(&forcing);
    let w0 = omega[0];
    let lhs: Vec<f64> = omega.iter().zip(lhs_cum.iter()).map(|(a, b)| a + b).collect();
    let holds = |c: f64| -> bool {
        lhs.iter()
            .zip(rhs_cum.iter())
            .all(|(&l, &r)| l <= w0 + c * r + 1e-13 * (1.0 + w0))
    };
    let c_min = if holds(0.0) {
        0.0
    } else {
        let mut hi = 1.0_f64;
        while !holds(hi) {
            hi *= 2.0;
            if hi > 1e18 {
                return Err(Error::contract("no finite constant closes the inequality"));
            }
        }
        let mut lo = 0.0;
        loop {
            let mid = 0.5 * (lo + hi);
            if holds(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-3 * hi {
                break hi;
            }
        }
    };
    Ok(Coe1Report { c_min, rows: ledger.rows.len() })
}

/// Evaluate both sides of the no-swirl stretching identity
/// (ω·∇)ω = −(ω_θ²/r) e_r at Cartesian sample points, taking ω from an
/// arbitrary sampler, and return the max residual relative to the right side.
pub fn stretching_residual_analytic(
    omega_theta: &dyn Fn(f64, f64) -> f64,
    samples: &[(f64, f64, f64)],
    delta: f64,
) -> f64 {
    // ω(x) = ω_θ(r, z) e_θ(x) as a 3-vector field of Cartesian position
    let field = |x: f64, y: f64, z: f64| -> [f64; 3] {
        let r = (x * x + y * y).sqrt();
        if r == 0.0 {
            return [0.0; 3];
        }
        let w = omega_theta(r, z);
        [-w * y / r, w * x / r, 0.0]
    };
    let mut max_resid = 0.0_f64;
    let mut max_rhs = 0.0_f64;
    for &(x, y, z) in samples {
        let w = field(x, y, z);
        // (ω·∇)ω by central differences
        let mut lhs = [0.0_f64; 3];
        for (axis, step) in [(0usize, [delta, 0.0, 0.0]), (1, [0.0, delta, 0.0]), (2, [0.0, 0.0, delta])] {
            let p = field(x + step[0], y + step[1], z + step[2]);
            let m = field(x - step[0], y - step[1], z - step[2]);
            for c in 0..3 {
                lhs[c] += w[axis] * (p[c] - m[c]) / (2.0 * delta);
            }
        }
        let r = (x * x + y * y).sqrt();
        let wtheta = omega_theta(r, z);
        let rhs = [-wtheta * wtheta / r * x / r, -wtheta * wtheta / r * y / r, 0.0];
        for c in 0..3 {
            max_resid = max_resid.max((lhs[c] - rhs[c]).abs());
            max_rhs = max_rhs.max(rhs[c].abs());
        }
    }
    if max_rhs == 0.0 {
        max_resid
    } else {
        max_resid / max_rhs
    }
}

/// Stretching-identity residual for a discrete state: ω_θ = rη sampled
/// bicubically, finite-difference step tied to the grid spacing.
pub fn stretching_identity_check(state: &AxiState) -> Result<f64> {
    let grid = state.grid;
    let omega = state.omega();
    let peak = omega.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Ok(0.0);
    }
    let samples = stretching_samples(&omega, grid, peak);
    if samples.is_empty() {
        return Err(Error::contract("state has no vorticity support to sample"));
    }
    let sampler = OmegaSampler::new(&omega, grid);
    let delta = grid.dr().min(grid.dz());
    Ok(stretching_residual_analytic(&|r, z| sampler.eval(r, z), &samples, delta))
}

/// Cartesian sample points over the vorticity core, a few azimuths per node.
fn stretching_samples(omega: &Array2<f64>, grid: CylGrid, peak: f64) -> Vec<(f64, f64, f64)> {
    let mut samples = Vec::new();
    let azimuths = [0.3_f64, 1.2, 2.4];
    for i in (0..grid.n_r).step_by(3) {
        let r = grid.r(i);
        // keep the finite-difference stencil away from the axis kink
        if r < 4.0 * grid.dr() {
            continue;
        }
        for j in (0..grid.n_z).step_by(3) {
            if omega[[i, j]].abs() > 0.3 * peak {
                let z = grid.z(j);
                for th in azimuths {
                    samples.push((r * th.cos(), r * th.sin(), z));
                }
            }
        }
    }
    samples
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axisym::ring::{vortex_ring, RingSpec};

    #[test]
    fn monitor_accepts_a_flow_at_rest() {
        use crate::axisym::ledger::{AxiLedger, AxiLedgerRow};
        let mut ledger = AxiLedger::new();
        for i in 0..4 {
            ledger
                .push(AxiLedgerRow {
                    t: i as f64 * 0.1,
                    lady_q: 0.0,
                    e_phi_u: 0.0,
                    e_psi_omega: 0.0,
                    e_psi_grad_omega: 0.0,
                })
                .unwrap();
        }
        let rep = ladyzhenskaya_monitor(&ledger, 0.0).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn pure_diffusion_strictly_decreases_the_lady_quantity() {
        use crate::axisym::step::step_diffusion;
        let grid = CylGrid::new(48, 48, 6.0, 6.0).unwrap();
        let mut eta = Array2::zeros((48, 48));
        for i in 0..48 {
            let r = grid.r(i);
            for j in 0..48 {
                let z = grid.z(j);
                eta[[i, j]] = (-(r - 2.0) * (r - 2.0) - (z - 3.0) * (z - 3.0)).exp();
            }
        }
        let q = |e: &Array2<f64>| {
            let sq = e.mapv(|v| v * v);
            grid.r_weighted_sum(&sq)
        };
        let mut prev = q(&eta);
        for _ in 0..10 {
            eta = step_diffusion(&eta, 2e-3, grid).unwrap();
            let cur = q(&eta);
            assert!(cur < prev, "diffusion failed to shrink the quantity: {cur} vs {prev}");
            prev = cur;
        }
    }

    #[test]
    fn zero_vorticity_has_zero_residual() {
        let grid = CylGrid::new(32, 32, 4.0, 4.0).unwrap();
        let st = AxiState::from_eta(0.0, Array2::zeros((32, 32)), grid).unwrap();
        assert_eq!(stretching_identity_check(&st).unwrap(), 0.0);
    }

    #[test]
    fn manufactured_profile_converges_at_second_order() {
        // ω_θ = r e^{−r²−z²}, exactly evaluable: residual is pure FD error
        let profile = |r: f64, z: f64| r * (-(r * r) - z * z).exp();
        let samples: Vec<(f64, f64, f64)> = (0..60)
            .map(|k| {
                let th = 0.1 + k as f64 * 0.05;
                let r = 0.4 + (k % 7) as f64 * 0.2;
                let z = -0.8 + (k % 11) as f64 * 0.15;
                (r * th.cos(), r * th.sin(), z)
            })
            .collect();
        let r1 = stretching_residual_analytic(&profile, &samples, 0.05);
        let r2 = stretching_residual_analytic(&profile, &samples, 0.025);
        let ratio = r1 / r2;
        assert!(ratio > 3.5 && ratio < 4.5, "ratios {r1} / {r2} = {ratio}");
    }

    #[test]
    fn ring_state_residual_is_small() {
        let grid = CylGrid::new(128, 128, 6.0, 6.0).unwrap();
        let st = vortex_ring(grid, RingSpec::default()).unwrap();
        let resid = stretching_identity_check(&st).unwrap();
        assert!(resid < 1e-2, "residual {resid}");
    }
}
