//! Uniform periodic grid on [-L/2, L/2)².

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicGrid {
    /// points per axis (power of two, >= 16)
    pub n: usize,
    /// box side length
    pub length: f64,
}

impl PeriodicGrid {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::contract(format!("grid size must be a power of two >= 16, got {n}")));
        }
        if !(length > 0.0) {
            return Err(Error::contract("box length must be positive"));
        }
        Ok(PeriodicGrid { n, length })
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.spacing() * self.spacing()
    }

    /// Physical coordinate of node index i along one axis.
    pub fn coord(&self, i: usize) -> f64 {
        -0.5 * self.length + i as f64 * self.spacing()
    }

    /// Signed integer mode for FFT bin i.
    pub fn mode(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i <= n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Wavenumber 2π·mode/L for FFT bin i.
    pub fn wavenumber(&self, i: usize) -> f64 {
        2.0 * std::f64::consts::PI * self.mode(i) as f64 / self.length
    }

    /// Largest retained |mode| under the 2/3 rule, chosen so that triple
    /// products stay below the grid's aliasing limit (3·cutoff < n).
    pub fn dealias_cutoff(&self) -> i64 {
        ((self.n - 1) / 3) as i64
    }
}
