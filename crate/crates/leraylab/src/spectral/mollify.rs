//! Mollification by θ_ε: discrete convolution with a non-negative, radially
//! decreasing, unit-mass kernel, realized as a transform-space product.

use super::field::SpectralField;
use super::fft::fft2;
use super::grid::PeriodicGrid;
use crate::error::{Error, Result};
use ndarray::Array2;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MollifierShape {
    /// Normalized C^∞ bump supported on |x| < ε.
    CompactBump,
    /// Gaussian with σ = ε/3; its transform is analytic, which makes it the
    /// convenient choice for convergence studies.
    GaussianSurrogate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MollifierSpec {
    pub epsilon: f64,
    pub shape: MollifierShape,
}

impl MollifierSpec {
    pub fn new(epsilon: f64, shape: MollifierShape) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::contract("mollifier width must be positive"));
        }
        Ok(MollifierSpec { epsilon, shape })
    }

    pub fn compact(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, MollifierShape::CompactBump)
    }

    fn profile(&self, r: f64) -> f64 {
        match self.shape {
            MollifierShape::CompactBump => {
                let s = r / self.epsilon;
                if s < 1.0 {
                    (-1.0 / (1.0 - s * s)).exp()
                } else {
                    0.0
                }
            }
            MollifierShape::GaussianSurrogate => {
                let sigma = self.epsilon / 3.0;
                (-0.5 * (r / sigma) * (r / sigma)).exp()
            }
        }
    }

    /// Transfer function of the discrete convolution: multiply a field's
    /// coefficients by this to mollify. The zero mode is exactly 1.
    pub fn transfer(&self, grid: PeriodicGrid) -> Array2<Complex64> {
        let mut khat = self.kernel(grid).mapv(|v| Complex64::new(v, 0.0));
        fft2(&mut khat);
        let cell = grid.cell_area();
        khat.mapv(|v| v * cell)
    }

    /// Kernel samples in wrapped (FFT) order so the convolution is unshifted,
    /// normalized to unit discrete mass.
    pub fn kernel(&self, grid: PeriodicGrid) -> Array2<f64> {
        let n = grid.n;
        let h = grid.spacing();
        let wrapped = |i: usize| -> f64 {
            let m = if i <= n / 2 { i as f64 } else { i as f64 - n as f64 };
            m * h
        };
        let mut k = Array2::from_shape_fn((n, n), |(i, j)| {
            let (x, y) = (wrapped(i), wrapped(j));
            self.profile((x * x + y * y).sqrt())
        });
        let mass: f64 = k.sum() * grid.cell_area();
        k.mapv_inplace(|v| v / mass);
        k
    }
}

/// θ_ε ∗ f on the torus. Requires ε < L/4 so the compactly supported kernel
/// does not see its own periodic images.
pub fn mollify(f: &SpectralField, m: &MollifierSpec) -> Result<SpectralField> {
    let grid = f.grid();
    if m.epsilon >= grid.length / 4.0 {
        return Err(Error::contract(format!(
            "mollifier width {} too large for box length {}",
            m.epsilon, grid.length
        )));
    }
    let out = f.coeffs() * &m.transfer(grid);
    Ok(SpectralField::from_coeffs(grid, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::derivative;

    #[test]
    fn kernel_has_unit_mass_and_no_negative_values() {
        let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        for shape in [MollifierShape::CompactBump, MollifierShape::GaussianSurrogate] {
            let m = MollifierSpec::new(0.4, shape).unwrap();
            let k = m.kernel(grid);
            let mass: f64 = k.sum() * grid.cell_area();
            assert!((mass - 1.0).abs() < 1e-12);
            assert!(k.iter().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn constants_are_fixed_points() {
        let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |_, _| 2.5);
        let m = MollifierSpec::compact(0.4).unwrap();
        let g = mollify(&f, &m).unwrap();
        let err = g.values().iter().map(|v| (v - 2.5).abs()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn mean_preserved_and_max_not_amplified() {
        let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |x, y| (3.0 * x).sin() + 0.3 * (y * 2.0).cos());
        let m = MollifierSpec::compact(0.5).unwrap();
        let g = mollify(&f, &m).unwrap();
        let mean = |h: &SpectralField| h.values().sum() / (grid.n * grid.n) as f64;
        assert!((mean(&f) - mean(&g)).abs() < 1e-12);
        assert!(g.max_abs() <= f.max_abs() * (1.0 + 1e-12));
    }

    #[test]
    fn tiny_width_approaches_identity() {
        let grid = PeriodicGrid::new(128, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |x, y| x.sin() * y.cos());
        let m = MollifierSpec::compact(grid.spacing()).unwrap();
        let g = mollify(&f, &m).unwrap();
        let rel = g.sub(&f).norm_sq().sqrt() / f.norm_sq().sqrt();
        assert!(rel < 1e-3, "rel {rel}");
    }

    #[test]
    fn convolution_commutes_with_derivative() {
        let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |x, y| (2.0 * x + y).sin());
        let m = MollifierSpec::compact(0.5).unwrap();
        let a = derivative(&mollify(&f, &m).unwrap(), 0);
        let b = mollify(&derivative(&f, 0), &m).unwrap();
        let err = a
            .values()
            .iter()
            .zip(b.values().iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn too_wide_kernel_is_a_contract_error() {
        let grid = PeriodicGrid::new(32, 2.0).unwrap();
        let f = SpectralField::zeros(grid);
        let m = MollifierSpec::compact(0.6).unwrap();
        assert!(mollify(&f, &m).is_err());
    }
}
