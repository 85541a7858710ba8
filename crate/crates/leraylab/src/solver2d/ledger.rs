//! The energy ledger: the time series of weighted norms that every
//! verification in this crate runs against.

use crate::error::{Error, Result};
use std::io::{BufRead, Write};

pub const LEDGER_HEADER: &str = "t,e_phi_u,e_phi_grad_u,e_phi_omega,e_phi_grad_omega,diss_cum,e_u_l2,u_l4_phi";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerRow {
    pub t: f64,
    /// ‖√Φ u‖₂²
    pub e_phi_u: f64,
    /// ‖√Φ ∇⊗u‖₂²
    pub e_phi_grad_u: f64,
    /// ‖√Φ ω‖₂²
    pub e_phi_omega: f64,
    /// ‖√Φ ∇ω‖₂²
    pub e_phi_grad_omega: f64,
    /// 2∫₀ᵗ ‖∇⊗u‖₂² ds (unweighted, the energy-equality partner)
    pub diss_cum: f64,
    /// ‖u‖₂² unweighted
    pub e_u_l2: f64,
    /// ‖√Φ u‖₄
    pub u_l4_phi: f64,
}

#[derive(Debug, Clone, Default)]
pub struct EnergyLedger {
    pub rows: Vec<LedgerRow>,
}

impl EnergyLedger {
    pub fn new() -> Self {
        EnergyLedger { rows: Vec::new() }
    }

    /// Append a row, enforcing the ledger invariants: non-negative entries,
    /// increasing time, non-decreasing cumulative dissipation.
    pub fn push(&mut self, row: LedgerRow) -> Result<()> {
        let entries = [
            row.e_phi_u,
            row.e_phi_grad_u,
            row.e_phi_omega,
            row.e_phi_grad_omega,
            row.diss_cum,
            row.e_u_l2,
            row.u_l4_phi,
        ];
        if entries.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::contract(format!("ledger row at t = {} has a negative or non-finite entry", row.t)));
        }
        if let Some(last) = self.rows.last() {
            if row.t <= last.t {
                return Err(Error::contract("ledger times must increase"));
            }
            if row.diss_cum + 1e-15 < last.diss_cum {
                return Err(Error::contract("cumulative dissipation must be non-decreasing"));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.t).collect()
    }

    pub fn e_phi_u(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.e_phi_u).collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{LEDGER_HEADER}")?;
        for r in &self.rows {
            writeln!(
                w,
                "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                r.t, r.e_phi_u, r.e_phi_grad_u, r.e_phi_omega, r.e_phi_grad_omega, r.diss_cum, r.e_u_l2, r.u_l4_phi
            )?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::config("empty ledger file"))??;
        if header.trim() != LEDGER_HEADER {
            return Err(Error::config(format!("unexpected ledger header `{header}`")));
        }
        let mut ledger = EnergyLedger::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 8 {
                return Err(Error::ConfigLine { line: lineno + 2, msg: format!("expected 8 columns, found {}", fields.len()) });
            }
            let mut vals = [0.0_f64; 8];
            for (k, f) in fields.iter().enumerate() {
                vals[k] = f.trim().parse::<f64>().map_err(|e| Error::ConfigLine {
                    line: lineno + 2,
                    msg: format!("bad float `{f}`: {e}"),
                })?;
            }
            ledger.push(LedgerRow {
                t: vals[0],
                e_phi_u: vals[1],
                e_phi_grad_u: vals[2],
                e_phi_omega: vals[3],
                e_phi_grad_omega: vals[4],
                diss_cum: vals[5],
                e_u_l2: vals[6],
                u_l4_phi: vals[7],
            })?;
        }
        Ok(ledger)
    }
}
