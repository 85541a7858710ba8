//! Ledger verifications: the a priori velocity inequality, the 2D vorticity
//! envelope and strong continuity at t = 0.

use super::ledger::EnergyLedger;
use crate::error::{Error, Result};
use serde::Serialize;

fn cumtrapz(times: &[f64], f: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; f.len()];
    for i in 1..f.len() {
        out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (f[i] + f[i - 1]);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct PcReport {
    /// smallest constant for which the inequality holds row-wise
    pub c_phi_min: f64,
    /// worst slack at the fitted constant (diagnostic)
    pub max_lhs: f64,
    pub rows: usize,
}

/// Fit the minimal C_Φ in
///
/// ```text
///   ‖√Φ u(t)‖₂² + ∫₀ᵗ ‖√Φ ∇⊗u‖₂² ds
///     ≤ ‖√Φ u₀‖₂² + C_Φ ∫₀ᵗ ‖√Φ u‖₂² + ‖√Φ u‖₂^{2d} ds
/// ```
///
/// with trapezoidal time quadrature and bisection to 1e-3 relative.
pub fn verify_pc(ledger: &EnergyLedger, dim: usize) -> Result<PcReport> {
    if ledger.rows.len() < 2 {
        return Err(Error::contract("verify_pc needs a completed run with >= 2 rows"));
    }
    let times = ledger.times();
    let e: Vec<f64> = ledger.rows.iter().map(|r| r.e_phi_u).collect();
    let grad: Vec<f64> = ledger.rows.iter().map(|r| r.e_phi_grad_u).collect();
    let d = dim as f64;
    let rhs_integrand: Vec<f64> = e.iter().map(|&v| v + v.powf(d)).collect();
    let lhs_cum = cumtrapz(&times, &grad);
    let rhs_cum = cumtrapz(&times, &rhs_integrand);
    let a0 = e[0];

    let lhs: Vec<f64> = e.iter().zip(lhs_cum.iter()).map(|(a, b)| a + b).collect();
    let holds = |c: f64| -> bool {
        lhs.iter()
            .zip(rhs_cum.iter())
            .all(|(&l, &r)| l <= a0 + c * r + 1e-13 * (1.0 + a0))
    };

    let c_phi_min = if holds(0.0) {
        0.0
    } else {
        let mut hi = 1.0_f64;
        while !holds(hi) {
            hi *= 2.0;
            if hi > 1e18 {
                return Err(Error::contract("no finite C_Φ fits this ledger"));
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
    let max_lhs = lhs.iter().cloned().fold(0.0, f64::max);
    Ok(PcReport { c_phi_min, max_lhs, rows: ledger.rows.len() })
}

#[derive(Debug, Clone, Serialize)]
pub struct VorticityReport {
    /// smallest C in the exponential envelope
    pub c_min: f64,
    pub rows: usize,
}

/// Fit the minimal C in the 2D vorticity envelope
///
/// ```text
///   ‖√Φ ω(t)‖₂² ≤ ‖√Φ ω₀‖₂² · exp( C ∫₀ᵗ 1 + ‖√Φ u‖₄^{4/3} ds ).
/// ```
pub fn verify_vorticity_2d(ledger: &EnergyLedger) -> Result<VorticityReport> {
    if ledger.rows.len() < 2 {
        return Err(Error::contract("verify_vorticity_2d needs >= 2 rows"));
    }
    let times = ledger.times();
    let omega: Vec<f64> = ledger.rows.iter().map(|r| r.e_phi_omega).collect();
    let forcing: Vec<f64> = ledger
        .rows
        .iter()
        .map(|r| 1.0 + r.u_l4_phi.powf(4.0 / 3.0))
        .collect();
    let cum = cumtrapz(&times, &forcing);
    let w0 = omega[0];
    if w0 <= 0.0 {
        // zero initial vorticity: envelope trivially holds with C = 0 as long
        // as ω stays zero
        let all_zero = omega.iter().all(|&w| w <= 1e-14);
        return Ok(VorticityReport { c_min: if all_zero { 0.0 } else { f64::INFINITY }, rows: omega.len() });
    }
    let mut c_min = 0.0_f64;
    for i in 1..omega.len() {
        if cum[i] > 0.0 && omega[i] > 0.0 {
            c_min = c_min.max((omega[i] / w0).ln() / cum[i]);
        }
    }
    Ok(VorticityReport { c_min, rows: omega.len() })
}

#[derive(Debug, Clone, Serialize)]
pub struct ContinuityReport {
    pub extrapolated: f64,
    pub at_zero: f64,
    pub relative_gap: f64,
    pub pass: bool,
}

/// Strong continuity at t = 0 as a ledger diagnostic: a quadratic fit
/// through the first positive-time rows must extrapolate back to the t = 0
/// norm within 1e-4 relative. Needs dense sampling near t = 0 (the
/// extrapolation bias scales with the cube of the row spacing).
pub fn continuity_at_zero(ledger: &EnergyLedger) -> Result<ContinuityReport> {
    if ledger.rows.len() < 5 {
        return Err(Error::contract("continuity check needs at least 5 rows near t = 0"));
    }
    let at_zero = ledger.rows[0].e_phi_u;
    // exact quadratic through rows 1, 2, 3, evaluated at t = 0 (Lagrange)
    let pts: [(f64, f64); 3] = [
        (ledger.rows[1].t, ledger.rows[1].e_phi_u),
        (ledger.rows[2].t, ledger.rows[2].e_phi_u),
        (ledger.rows[3].t, ledger.rows[3].e_phi_u),
    ];
    let mut extrapolated = 0.0;
    for i in 0..3 {
        let (ti, yi) = pts[i];
        let mut weight = 1.0;
        for j in 0..3 {
            if i != j {
                weight *= (0.0 - pts[j].0) / (ti - pts[j].0);
            }
        }
        extrapolated += weight * yi;
    }
    let relative_gap = (extrapolated - at_zero).abs() / at_zero.max(1e-30);
    Ok(ContinuityReport { extrapolated, at_zero, relative_gap, pass: relative_gap < 1e-4 })
}
