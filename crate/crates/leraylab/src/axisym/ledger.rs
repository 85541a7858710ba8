//! Axisymmetric run ledger and the run loop that fills it.

use super::ring::{vortex_ring, RingSpec};
use super::step::step_axi;
use super::{gradient_omega_sq, AxiState, CylGrid};
use crate::error::{Error, Result};
use crate::weights::WeightSpec;
use ndarray::Array2;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

pub const AXI_LEDGER_HEADER: &str = "t,lady_q,e_phi_u,e_psi_omega,e_psi_grad_omega";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiLedgerRow {
    pub t: f64,
    /// ∫ η² r dr dz (the Ladyzhenskaya quantity up to 2π)
    pub lady_q: f64,
    /// ‖√Φ u‖₂²
    pub e_phi_u: f64,
    /// ‖√Ψ ω‖₂²
    pub e_psi_omega: f64,
    /// ‖√Ψ ∇⊗ω‖₂²
    pub e_psi_grad_omega: f64,
}

#[derive(Debug, Clone, Default)]
pub struct AxiLedger {
    pub rows: Vec<AxiLedgerRow>,
}

impl AxiLedger {
    pub fn new() -> Self {
        AxiLedger { rows: Vec::new() }
    }

    pub fn push(&mut self, row: AxiLedgerRow) -> Result<()> {
        let entries = [row.lady_q, row.e_phi_u, row.e_psi_omega, row.e_psi_grad_omega];
        if entries.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::contract(format!("axisym ledger row at t = {} has a bad entry", row.t)));
        }
        if let Some(last) = self.rows.last() {
            if row.t <= last.t {
                return Err(Error::contract("ledger times must increase"));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{AXI_LEDGER_HEADER}")?;
        for r in &self.rows {
            writeln!(w, "{:e},{:e},{:e},{:e},{:e}", r.t, r.lady_q, r.e_phi_u, r.e_psi_omega, r.e_psi_grad_omega)?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::config("empty ledger file"))??;
        if header.trim() != AXI_LEDGER_HEADER {
            return Err(Error::config(format!("unexpected ledger header `{header}`")));
        }
        let mut ledger = AxiLedger::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(Error::ConfigLine { line: lineno + 2, msg: format!("expected 5 columns, found {}", fields.len()) });
            }
            let mut vals = [0.0_f64; 5];
            for (k, f) in fields.iter().enumerate() {
                vals[k] = f.trim().parse::<f64>().map_err(|e| Error::ConfigLine {
                    line: lineno + 2,
                    msg: format!("bad float `{f}`: {e}"),
                })?;
            }
            ledger.push(AxiLedgerRow {
                t: vals[0],
                lady_q: vals[1],
                e_phi_u: vals[2],
                e_psi_omega: vals[3],
                e_psi_grad_omega: vals[4],
            })?;
        }
        Ok(ledger)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiRunConfig {
    pub n_r: usize,
    pub n_z: usize,
    pub r_extent: f64,
    pub z_extent: f64,
    pub dt: f64,
    pub t_end: f64,
    pub cadence: usize,
    pub ring: RingSpec,
    /// velocity weight Φ (cylindrical)
    pub phi: WeightSpec,
    /// vorticity weight Ψ (cylindrical)
    pub psi: WeightSpec,
}

impl Default for AxiRunConfig {
    fn default() -> Self {
        AxiRunConfig {
            n_r: 64,
            n_z: 64,
            r_extent: 6.0,
            z_extent: 6.0,
            dt: 2e-3,
            t_end: 0.5,
            cadence: 10,
            ring: RingSpec::default(),
            phi: WeightSpec::cylindrical(1.0, crate::weights::WeightForm::OnePlusAbs).unwrap(),
            psi: WeightSpec::pair_member(1.0, crate::weights::WeightForm::OnePlusSqHalf).unwrap(),
        }
    }
}

impl AxiRunConfig {
    pub fn grid(&self) -> Result<CylGrid> {
        CylGrid::new(self.n_r, self.n_z, self.r_extent, self.z_extent)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !(self.t_end >= 0.0) || self.cadence == 0 {
            return Err(Error::config("dt, t_end, cadence must be positive"));
        }
        if !self.phi.is_cylindrical() || !self.psi.is_cylindrical() {
            return Err(Error::config("axisymmetric runs need cylindrical weights"));
        }
        self.grid()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AxiRunStatus {
    Completed,
    BlewUp { t: f64 },
}

#[derive(Debug)]
pub struct AxiRunOutput {
    pub ledger: AxiLedger,
    pub state: AxiState,
    pub status: AxiRunStatus,
    /// ‖∇⊗ω₀‖₂² of the initial state, the Ladyzhenskaya initial bound
    pub initial_grad_omega_sq: f64,
    /// circulation-like integral ∫ η r³ dr dz at t = 0 (drift diagnostic)
    pub initial_impulse: f64,
}

/// ∫ η r³ dr dz — conserved by the continuous dynamics.
pub fn impulse(state: &AxiState) -> f64 {
    let g = state.grid;
    let mut f = Array2::zeros((g.n_r, g.n_z));
    for i in 0..g.n_r {
        let r2 = g.r(i) * g.r(i);
        for j in 0..g.n_z {
            f[[i, j]] = state.eta[[i, j]] * r2;
        }
    }
    g.r_weighted_sum(&f)
}

pub fn make_axi_row(state: &AxiState, phi: &Array2<f64>, psi: &Array2<f64>) -> AxiLedgerRow {
    let g = state.grid;
    let speed_sq = {
        let mut f = Array2::zeros((g.n_r, g.n_z));
        for i in 0..g.n_r {
            for j in 0..g.n_z {
                f[[i, j]] = (state.u_r[[i, j]].powi(2) + state.u_z[[i, j]].powi(2)) * phi[[i, j]];
            }
        }
        f
    };
    let omega = state.omega();
    let omega_sq_psi = {
        let mut f = omega.clone();
        for (v, w) in f.iter_mut().zip(psi.iter()) {
            *v = *v * *v * w;
        }
        f
    };
    let grad_sq = gradient_omega_sq(&omega, g);
    let grad_sq_psi = {
        let mut f = grad_sq;
        for (v, w) in f.iter_mut().zip(psi.iter()) {
            *v *= w;
        }
        f
    };
    AxiLedgerRow {
        t: state.t,
        lady_q: state.lady_quantity(),
        e_phi_u: g.volume_integral(&speed_sq),
        e_psi_omega: g.volume_integral(&omega_sq_psi),
        e_psi_grad_omega: g.volume_integral(&grad_sq_psi),
    }
}

fn weight_grid(spec: &WeightSpec, grid: CylGrid) -> Array2<f64> {
    Array2::from_shape_fn((grid.n_r, grid.n_z), |(i, _)| spec.profile(grid.r(i)))
}

/// Run the vortex-ring experiment, returning the ledger plus the quantities
/// the monitors need from the initial state.
pub fn run_axi(config: &AxiRunConfig) -> Result<AxiRunOutput> {
    config.validate()?;
    let grid = config.grid()?;
    let mut state = vortex_ring(grid, config.ring)?;

    let vmax = state.max_speed();
    if vmax > 0.0 {
        let h = grid.dr().min(grid.dz());
        let bound = 0.25 * h / vmax;
        if config.dt > bound {
            return Err(Error::config(format!(
                "dt = {} violates the advective CFL bound {bound:.3e}",
                config.dt
            )));
        }
    }

    let phi = weight_grid(&config.phi, grid);
    let psi = weight_grid(&config.psi, grid);
    let initial_grad_omega_sq = state.grad_omega_norm_sq();
    let initial_impulse = impulse(&state);

    let n_steps = (config.t_end / config.dt).round() as usize;
    let mut ledger = AxiLedger::new();
    ledger.push(make_axi_row(&state, &phi, &psi))?;
    for k in 1..=n_steps {
        state = match step_axi(&state, config.dt) {
            Ok(s) => s,
            Err(Error::BlowUp { t }) => {
                return Ok(AxiRunOutput {
                    ledger,
                    state,
                    status: AxiRunStatus::BlewUp { t },
                    initial_grad_omega_sq,
                    initial_impulse,
                });
            }
            Err(e) => return Err(e),
        };
        if k % config.cadence == 0 || k == n_steps {
            ledger.push(make_axi_row(&state, &phi, &psi))?;
        }
    }
    Ok(AxiRunOutput {
        ledger,
        state,
        status: AxiRunStatus::Completed,
        initial_grad_omega_sq,
        initial_impulse,
    })
}
