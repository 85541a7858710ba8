//! Initial-data generators. Every generated field goes through the Leray
//! projection, mirroring the regularized data of the mollified scheme.

use crate::error::{Error, Result};
use crate::spectral::{leray_project, PeriodicGrid, SpectralField};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InitialData {
    /// u = (cos κx sin κy, −sin κx cos κy) with κ = 2π/L; decays as e^{−2κ²t}.
    TaylorGreen,
    /// Random divergence-free field with a power-law mode spectrum,
    /// normalized to the requested L² norm.
    RandomDivFree {
        l2_norm: f64,
        spectrum_exponent: f64,
        k_max: i64,
    },
    /// Checkpoint file written by the harness.
    File(PathBuf),
}

impl InitialData {
    pub fn random_default() -> Self {
        InitialData::RandomDivFree { l2_norm: 1.0, spectrum_exponent: 2.0, k_max: 8 }
    }
}

/// Build the initial velocity on `grid`. Deterministic for a given seed.
pub fn init_data(kind: &InitialData, grid: PeriodicGrid, seed: u64) -> Result<[SpectralField; 2]> {
    let u = match kind {
        InitialData::TaylorGreen => {
            let kappa = 2.0 * std::f64::consts::PI / grid.length;
            [
                SpectralField::from_fn(grid, move |x, y| (kappa * x).cos() * (kappa * y).sin()),
                SpectralField::from_fn(grid, move |x, y| -(kappa * x).sin() * (kappa * y).cos()),
            ]
        }
        InitialData::RandomDivFree { l2_norm, spectrum_exponent, k_max } => {
            random_divfree(grid, seed, *l2_norm, *spectrum_exponent, *k_max)?
        }
        InitialData::File(path) => {
            let (state, _) = crate::harness::read_checkpoint_2d(path)?;
            if state.grid != grid {
                return Err(Error::contract(format!(
                    "checkpoint grid (n={}, L={}) does not match the run grid (n={}, L={})",
                    state.grid.n, state.grid.length, grid.n, grid.length
                )));
            }
            state.u
        }
    };
    Ok(leray_project(&u))
}

fn random_divfree(
    grid: PeriodicGrid,
    seed: u64,
    l2_norm: f64,
    spectrum_exponent: f64,
    k_max: i64,
) -> Result<[SpectralField; 2]> {
    if k_max < 1 || k_max > grid.dealias_cutoff() {
        return Err(Error::contract(format!(
            "spectrum k_max must lie in [1, {}]",
            grid.dealias_cutoff()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.n;
    let idx = |m: i64| -> usize { m.rem_euclid(n as i64) as usize };
    let mut comps = Vec::with_capacity(2);
    for _ in 0..2 {
        let mut c: Array2<Complex64> = Array2::zeros((n, n));
        // fill one representative per conjugate mode pair, fixed order
        for m0 in -k_max..=k_max {
            for m1 in -k_max..=k_max {
                if (m0, m1) == (0, 0) || m0 < 0 || (m0 == 0 && m1 < 0) {
                    continue;
                }
                let kk = ((m0 * m0 + m1 * m1) as f64).sqrt();
                if kk > k_max as f64 {
                    continue;
                }
                let amp = kk.powf(-spectrum_exponent) * rng.gen::<f64>().max(1e-12);
                let phase = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
                let z = Complex64::from_polar(amp, phase);
                c[[idx(m0), idx(m1)]] = z;
                c[[idx(-m0), idx(-m1)]] = z.conj();
            }
        }
        comps.push(SpectralField::from_coeffs(grid, c));
    }
    let mut u = leray_project(&[comps.remove(0), comps.remove(0)]);
    let norm = (u[0].norm_sq() + u[1].norm_sq()).sqrt();
    if norm > 0.0 {
        let s = l2_norm / norm;
        u = [u[0].scale(s), u[1].scale(s)];
    }
    Ok(u)
}
