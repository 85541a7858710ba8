//! Stream-function reconstruction.
//!
//! In the substitution χ = ψ/r the elliptic relation for the Stokes stream
//! function becomes
//!
//! ```text
//!   χ'' + (1/r)χ' − χ/r² + ∂_z²χ = −r η,
//! ```
//!
//! which is regular at the axis (χ is odd in r). The z-direction
//! diagonalizes by FFT, leaving one complex tridiagonal solve per mode.
//! Velocities come from ψ = rχ through
//!
//! ```text
//!   u_r = −(1/r) ∂_z ψ,   u_z = (1/r) D_r ψ,
//! ```
//!
//! with ghost values generated from χ (even ψ at the axis, Dirichlet at R).
//! Built this way the discrete divergence (1/r)D_r(r u_r) + D_z u_z
//! telescopes to zero identically.

use super::{AxiState, CylGrid};
use crate::error::{Error, Result};
use crate::spectral::fft::{fft1, ifft1};
use ndarray::Array2;
use rustfft::num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct StreamSolution {
    pub chi: Array2<f64>,
    pub psi: Array2<f64>,
    pub u_r: Array2<f64>,
    pub u_z: Array2<f64>,
}

/// Thomas algorithm for a complex tridiagonal system; diag is consumed.
pub(crate) fn tridiag_solve(
    sub: &[f64],
    diag: &mut [Complex64],
    sup: &[f64],
    rhs: &mut [Complex64],
) -> Result<()> {
    let n = diag.len();
    for i in 1..n {
        let denom = diag[i - 1];
        if denom.norm() == 0.0 {
            return Err(Error::config("singular tridiagonal system: degenerate grid"));
        }
        let w = sub[i] / denom;
        diag[i] = diag[i] - w * sup[i - 1];
        let prev = rhs[i - 1];
        rhs[i] = rhs[i] - w * prev;
    }
    if diag[n - 1].norm() == 0.0 {
        return Err(Error::config("singular tridiagonal system: degenerate grid"));
    }
    rhs[n - 1] = rhs[n - 1] / diag[n - 1];
    for i in (0..n - 1).rev() {
        rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
    }
    Ok(())
}

/// FFT each z-row (rows of shape (n_r, n_z) are contiguous z-lines).
fn fft_z(field: &Array2<f64>, grid: CylGrid) -> Array2<Complex64> {
    let mut out = field.mapv(|v| Complex64::new(v, 0.0));
    for mut row in out.rows_mut() {
        fft1(row.as_slice_mut().expect("contiguous row"));
    }
    let _ = grid;
    out
}

fn ifft_z_real(mut field: Array2<Complex64>) -> Array2<f64> {
    for mut row in field.rows_mut() {
        ifft1(row.as_slice_mut().expect("contiguous row"));
    }
    field.mapv(|v| v.re)
}

/// Solve for χ, assemble ψ = rχ and the velocities.
pub fn stream_solve(eta: &Array2<f64>, grid: CylGrid) -> Result<StreamSolution> {
    let (n_r, n_z) = (grid.n_r, grid.n_z);
    if eta.dim() != (n_r, n_z) {
        return Err(Error::contract("eta shape must match the grid"));
    }
    let h = grid.dr();

    // rhs = −r η, transformed in z
    let mut rhs = Array2::zeros((n_r, n_z));
    for i in 0..n_r {
        let r = grid.r(i);
        for j in 0..n_z {
            rhs[[i, j]] = -r * eta[[i, j]];
        }
    }
    let rhs_hat = fft_z(&rhs, grid);

    // per-mode tridiagonal: a χ_{i-1} + b χ_i + c χ_{i+1} = rhs
    let mut sub = vec![0.0; n_r];
    let mut sup = vec![0.0; n_r];
    let mut base = vec![0.0; n_r];
    for i in 0..n_r {
        let r = grid.r(i);
        sub[i] = 1.0 / (h * h) - 1.0 / (2.0 * h * r);
        sup[i] = 1.0 / (h * h) + 1.0 / (2.0 * h * r);
        base[i] = -2.0 / (h * h) - 1.0 / (r * r);
    }

    let mut chi_hat: Array2<Complex64> = Array2::zeros((n_r, n_z));
    let mut diag = vec![Complex64::default(); n_r];
    let mut col = vec![Complex64::default(); n_r];
    for m in 0..n_z {
        let k2 = grid.kz(m).powi(2);
        for i in 0..n_r {
            diag[i] = Complex64::new(base[i] - k2, 0.0);
            col[i] = rhs_hat[[i, m]];
        }
        // ghosts: χ_{-1} = −χ_0 (odd at the axis), χ_N = −χ_{N-1} (ψ(R) = 0)
        diag[0] -= Complex64::new(sub[0], 0.0);
        diag[n_r - 1] -= Complex64::new(sup[n_r - 1], 0.0);
        tridiag_solve(&sub, &mut diag, &sup, &mut col)?;
        for i in 0..n_r {
            chi_hat[[i, m]] = col[i];
        }
    }
    let chi = ifft_z_real(chi_hat);

    // ψ = r χ with ghost rows from χ
    let mut psi = Array2::zeros((n_r, n_z));
    for i in 0..n_r {
        let r = grid.r(i);
        for j in 0..n_z {
            psi[[i, j]] = r * chi[[i, j]];
        }
    }

    // u_r = −∂_z χ (spectral)
    let u_r = {
        let mut chat = fft_z(&chi, grid);
        for i in 0..n_r {
            for m in 0..n_z {
                let k = grid.kz(m);
                chat[[i, m]] *= Complex64::new(0.0, -k);
            }
        }
        ifft_z_real(chat)
    };

    // u_z = (1/r) D_r ψ with ψ ghosts: ψ_{-1} = ψ_0, ψ_N = −(R + h/2) χ_{N-1}
    let mut u_z = Array2::zeros((n_r, n_z));
    let r_ghost_outer = grid.r_extent + 0.5 * h;
    for i in 0..n_r {
        let r = grid.r(i);
        for j in 0..n_z {
            let psi_m = if i == 0 { psi[[0, j]] } else { psi[[i - 1, j]] };
            let psi_p = if i + 1 == n_r {
                -r_ghost_outer * chi[[n_r - 1, j]]
            } else {
                psi[[i + 1, j]]
            };
            u_z[[i, j]] = (psi_p - psi_m) / (2.0 * h * r);
        }
    }

    Ok(StreamSolution { chi, psi, u_r, u_z })
}

/// Relative discrete divergence (1/r)D_r(r u_r) + D_z u_z, using the same
/// ghost conventions the reconstruction used.
pub fn discrete_divergence(state: &AxiState) -> f64 {
    let grid = state.grid;
    let (n_r, n_z) = (grid.n_r, grid.n_z);
    let h = grid.dr();

    // g = r u_r; ghost rows follow from g = −∂_z ψ with the ψ ghosts
    let mut g = Array2::zeros((n_r, n_z));
    for i in 0..n_r {
        let r = grid.r(i);
        for j in 0..n_z {
            g[[i, j]] = r * state.u_r[[i, j]];
        }
    }
    // ghost row at the axis equals row 0 (ψ ghost is even); outer ghost is
    // −(R+h/2)/(R−h/2) times the last row (ψ_N = −(R+h/2)χ_{N-1})
    let outer_factor = -(grid.r_extent + 0.5 * h) / (grid.r_extent - 0.5 * h);

    let dzu = super::step::spectral_dz(&state.u_z, grid);
    let mut max_div = 0.0_f64;
    let mut max_vel = 0.0_f64;
    for i in 0..n_r {
        let r = grid.r(i);
        for j in 0..n_z {
            let g_m = if i == 0 { g[[0, j]] } else { g[[i - 1, j]] };
            let g_p = if i + 1 == n_r { outer_factor * g[[n_r - 1, j]] } else { g[[i + 1, j]] };
            let div = (g_p - g_m) / (2.0 * h * r) + dzu[[i, j]];
            max_div = max_div.max(div.abs());
            max_vel = max_vel
                .max(state.u_r[[i, j]].abs())
                .max(state.u_z[[i, j]].abs());
        }
    }
    if max_vel == 0.0 {
        0.0
    } else {
        max_div / max_vel
    }
}
