//! Real scalar fields with a lazily synchronized transform-space mirror.
//!
//! Fields are immutable after construction; every operation returns a new
//! field, so sharing across threads is free.

use super::fft::{fft2, ifft2};
use super::grid::PeriodicGrid;
use ndarray::Array2;
use rustfft::num_complex::Complex64;
use std::sync::OnceLock;

pub struct SpectralField {
    grid: PeriodicGrid,
    values: OnceLock<Array2<f64>>,
    coeffs: OnceLock<Array2<Complex64>>,
}

impl Clone for SpectralField {
    fn clone(&self) -> Self {
        let f = SpectralField::bare(self.grid);
        if let Some(v) = self.values.get() {
            let _ = f.values.set(v.clone());
        }
        if let Some(c) = self.coeffs.get() {
            let _ = f.coeffs.set(c.clone());
        }
        f
    }
}

impl std::fmt::Debug for SpectralField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralField")
            .field("grid", &self.grid)
            .field("has_values", &self.values.get().is_some())
            .field("has_coeffs", &self.coeffs.get().is_some())
            .finish()
    }
}

impl SpectralField {
    fn bare(grid: PeriodicGrid) -> Self {
        SpectralField { grid, values: OnceLock::new(), coeffs: OnceLock::new() }
    }

    pub fn from_values(grid: PeriodicGrid, values: Array2<f64>) -> Self {
        assert_eq!(values.dim(), (grid.n, grid.n), "field shape must match the grid");
        let f = Self::bare(grid);
        let _ = f.values.set(values);
        f
    }

    pub fn from_coeffs(grid: PeriodicGrid, coeffs: Array2<Complex64>) -> Self {
        assert_eq!(coeffs.dim(), (grid.n, grid.n), "field shape must match the grid");
        let f = Self::bare(grid);
        let _ = f.coeffs.set(coeffs);
        f
    }

    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self::from_values(grid, Array2::zeros((grid.n, grid.n)))
    }

    /// Sample a function of the physical coordinates on the grid.
    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = Array2::from_shape_fn((grid.n, grid.n), |(i, j)| {
            f(grid.coord(i), grid.coord(j))
        });
        Self::from_values(grid, values)
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn values(&self) -> &Array2<f64> {
        self.values.get_or_init(|| {
            let mut data = self.coeffs.get().expect("field has neither representation").clone();
            ifft2(&mut data);
            data.mapv(|v| v.re)
        })
    }

    pub fn coeffs(&self) -> &Array2<Complex64> {
        self.coeffs.get_or_init(|| {
            let v = self.values.get().expect("field has neither representation");
            let mut data = v.mapv(|x| Complex64::new(x, 0.0));
            fft2(&mut data);
            data
        })
    }

    /// New field with coefficients transformed bin-by-bin; the closure gets
    /// the integer modes (m0, m1) and the current coefficient.
    pub fn map_coeffs(&self, f: impl Fn(i64, i64, Complex64) -> Complex64) -> SpectralField {
        let c = self.coeffs();
        let n = self.grid.n;
        let out = Array2::from_shape_fn((n, n), |(i, j)| {
            f(self.grid.mode(i), self.grid.mode(j), c[[i, j]])
        });
        SpectralField::from_coeffs(self.grid, out)
    }

    pub fn add(&self, other: &SpectralField) -> SpectralField {
        assert_eq!(self.grid, other.grid);
        SpectralField::from_coeffs(self.grid, self.coeffs() + other.coeffs())
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        assert_eq!(self.grid, other.grid);
        SpectralField::from_coeffs(self.grid, self.coeffs() - other.coeffs())
    }

    pub fn scale(&self, a: f64) -> SpectralField {
        SpectralField::from_coeffs(self.grid, self.coeffs().mapv(|c| c * a))
    }

    /// max |f| over nodes.
    pub fn max_abs(&self) -> f64 {
        self.values().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// ∫ f² dx by the grid quadrature.
    pub fn norm_sq(&self) -> f64 {
        let a = self.grid.cell_area();
        self.values().iter().map(|v| v * v).sum::<f64>() * a
    }

    /// ∫ |∇f|² dx via Parseval, straight from the coefficients.
    pub fn grad_norm_sq(&self) -> f64 {
        let n = self.grid.n as f64;
        let scale = self.grid.length * self.grid.length / (n * n * n * n);
        let mut acc = 0.0;
        let c = self.coeffs();
        for i in 0..self.grid.n {
            let k0 = self.grid.wavenumber(i);
            for j in 0..self.grid.n {
                let k1 = self.grid.wavenumber(j);
                acc += (k0 * k0 + k1 * k1) * c[[i, j]].norm_sqr();
            }
        }
        acc * scale
    }

    pub fn is_finite(&self) -> bool {
        match (self.values.get(), self.coeffs.get()) {
            (Some(v), _) => v.iter().all(|x| x.is_finite()),
            (None, Some(c)) => c.iter().all(|x| x.re.is_finite() && x.im.is_finite()),
            (None, None) => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_coeffs() {
        let grid = PeriodicGrid::new(32, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |x, y| (x.sin() + (2.0 * y).cos()) * 0.7);
        let g = SpectralField::from_coeffs(grid, f.coeffs().clone());
        let err = f
            .values()
            .iter()
            .zip(g.values().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-12 * f.max_abs());
    }

    #[test]
    fn parseval_gradient_matches_physical() {
        let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |x, y| x.sin() * (3.0 * y).cos());
        // |∇f|² integrates to (1 + 9)·(π²·...): compute against the exact value
        // ∫ sin²x cos²3y (dx) terms: ∫cos²x cos²3y + 9 sin²x sin²3y = (1+9)π²
        let expect = 10.0 * std::f64::consts::PI.powi(2);
        assert!((f.grad_norm_sq() - expect).abs() < 1e-10 * expect);
    }
}
