//! Axisymmetric no-swirl solver on an (r, z) grid in the η = ω_θ/r
//! formulation.
//!
//! Without swirl the vorticity has the single component ω = ω_θ e_θ and the
//! ratio η = ω_θ/r obeys a transport-diffusion equation
//!
//! ```text
//!   ∂_t η + u_r ∂_r η + u_z ∂_z η = (∂_r² + ∂_z² + (3/r) ∂_r) η,
//! ```
//!
//! whose radial part is the flux form r⁻³∂_r(r³∂_r·): the discrete operator
//! is built dissipative so the Ladyzhenskaya quantity ∫η² r dr dz has a
//! structural reason to decay, which the monitor then verifies rather than
//! assumes.
//!
//! Grid: r is staggered (first node at Δr/2, no 1/r evaluation on the axis),
//! z periodic so the elliptic solves diagonalize by trigonometric transform.

mod interp;
mod ledger;
mod ring;
mod step;
mod stream;
mod verify;

pub use ledger::{
    impulse, make_axi_row, run_axi, AxiLedger, AxiLedgerRow, AxiRunConfig, AxiRunOutput,
    AxiRunStatus, AXI_LEDGER_HEADER,
};
pub use ring::{vortex_ring, RingSpec};
pub use step::{step_axi, step_diffusion};
pub use stream::{discrete_divergence, stream_solve, StreamSolution};
pub use verify::{
    ladyzhenskaya_monitor, stretching_identity_check, stretching_residual_analytic, verify_coe1,
    Coe1Report, MonitorReport,
};

use crate::error::{Error, Result};
use ndarray::Array2;
use serde::{Deserialize, Serialize};

/// Uniform (r, z) grid: r ∈ (0, R) staggered, z ∈ [0, Z) periodic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylGrid {
    pub n_r: usize,
    pub n_z: usize,
    pub r_extent: f64,
    pub z_extent: f64,
}

impl CylGrid {
    pub fn new(n_r: usize, n_z: usize, r_extent: f64, z_extent: f64) -> Result<Self> {
        if n_r < 8 || n_z < 8 {
            return Err(Error::contract("cylindrical grid needs at least 8 points per axis"));
        }
        if !(r_extent > 0.0) || !(z_extent > 0.0) {
            return Err(Error::contract("grid extents must be positive"));
        }
        Ok(CylGrid { n_r, n_z, r_extent, z_extent })
    }

    pub fn dr(&self) -> f64 {
        self.r_extent / self.n_r as f64
    }

    pub fn dz(&self) -> f64 {
        self.z_extent / self.n_z as f64
    }

    /// Radial coordinate of node i: (i + 1/2)Δr.
    pub fn r(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dr()
    }

    pub fn z(&self, j: usize) -> f64 {
        j as f64 * self.dz()
    }

    /// Axial wavenumber of FFT bin m.
    pub fn kz(&self, m: usize) -> f64 {
        let n = self.n_z as i64;
        let m = m as i64;
        let mode = if m <= n / 2 { m } else { m - n };
        2.0 * std::f64::consts::PI * mode as f64 / self.z_extent
    }

    /// ∫∫ f r dr dz by midpoint quadrature (no 2π).
    pub fn r_weighted_sum(&self, f: &Array2<f64>) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n_r {
            let r = self.r(i);
            for j in 0..self.n_z {
                acc += f[[i, j]] * r;
            }
        }
        acc * self.dr() * self.dz()
    }

    /// Full Cartesian integral 2π ∫∫ f r dr dz.
    pub fn volume_integral(&self, f: &Array2<f64>) -> f64 {
        2.0 * std::f64::consts::PI * self.r_weighted_sum(f)
    }
}

/// Axisymmetric no-swirl state: η with the reconstructed stream function and
/// velocities kept in sync.
#[derive(Debug, Clone)]
pub struct AxiState {
    pub t: f64,
    pub eta: Array2<f64>,
    pub psi: Array2<f64>,
    pub u_r: Array2<f64>,
    pub u_z: Array2<f64>,
    pub grid: CylGrid,
}

impl AxiState {
    /// Assemble a state from η by solving the stream-function problem.
    pub fn from_eta(t: f64, eta: Array2<f64>, grid: CylGrid) -> Result<Self> {
        if eta.dim() != (grid.n_r, grid.n_z) {
            return Err(Error::contract("eta shape must match the grid"));
        }
        if eta.iter().any(|v| !v.is_finite()) {
            return Err(Error::BlowUp { t });
        }
        let sol = stream::stream_solve(&eta, grid)?;
        Ok(AxiState { t, eta, psi: sol.psi, u_r: sol.u_r, u_z: sol.u_z, grid })
    }

    /// ω_θ = r η.
    pub fn omega(&self) -> Array2<f64> {
        let mut w = self.eta.clone();
        for i in 0..self.grid.n_r {
            let r = self.grid.r(i);
            for j in 0..self.grid.n_z {
                w[[i, j]] *= r;
            }
        }
        w
    }

    pub fn max_speed(&self) -> f64 {
        self.u_r
            .iter()
            .zip(self.u_z.iter())
            .map(|(a, b)| (a * a + b * b).sqrt())
            .fold(0.0, f64::max)
    }

    /// Relative discrete divergence of the reconstructed velocity.
    pub fn relative_divergence(&self) -> f64 {
        stream::discrete_divergence(self)
    }

    /// ∫ η² r dr dz — the Ladyzhenskaya quantity up to 2π.
    pub fn lady_quantity(&self) -> f64 {
        let sq = self.eta.mapv(|v| v * v);
        self.grid.r_weighted_sum(&sq)
    }

    /// ‖∇⊗ω‖₂² (Cartesian, including the 2π): |∂_r ω|² + |∂_z ω|² + |ω/r|².
    pub fn grad_omega_norm_sq(&self) -> f64 {
        let w = self.omega();
        let g = gradient_omega_sq(&w, self.grid);
        self.grid.volume_integral(&g)
    }
}

/// |∇⊗ω|² for ω = ω_θ(r,z) e_θ: (∂_r ω)² + (∂_z ω)² + (ω/r)².
/// Radial derivative by central differences with odd ghosts (ω_θ is odd in r
/// and vanishes at R); axial derivative spectrally.
pub(crate) fn gradient_omega_sq(omega: &Array2<f64>, grid: CylGrid) -> Array2<f64> {
    let (n_r, n_z) = omega.dim();
    let dr = grid.dr();
    let mut out = Array2::zeros((n_r, n_z));
    let dz = step::spectral_dz(omega, grid);
    for i in 0..n_r {
        let r = grid.r(i);
        for j in 0..n_z {
            let w_m = if i == 0 { -omega[[0, j]] } else { omega[[i - 1, j]] };
            let w_p = if i + 1 == n_r { -omega[[n_r - 1, j]] } else { omega[[i + 1, j]] };
            let d_r = (w_p - w_m) / (2.0 * dr);
            let w = omega[[i, j]];
            out[[i, j]] = d_r * d_r + dz[[i, j]] * dz[[i, j]] + (w / r) * (w / r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_coordinates_are_staggered() {
        let g = CylGrid::new(8, 8, 4.0, 4.0).unwrap();
        assert!((g.r(0) - 0.25).abs() < 1e-15);
        assert!((g.r(7) - 3.75).abs() < 1e-15);
        assert_eq!(g.z(0), 0.0);
    }

    #[test]
    fn quadrature_of_one_gives_half_r_squared_z() {
        // ∫∫ r dr dz over (0,R)x(0,Z) = R²Z/2, exact for the staggered midpoint rule
        let g = CylGrid::new(32, 16, 2.0, 3.0).unwrap();
        let f = Array2::from_elem((32, 16), 1.0);
        assert!((g.r_weighted_sum(&f) - 0.5 * 4.0 * 3.0).abs() < 1e-12);
    }
}
