//! Weighted quadrature on the periodic grid.

use super::field::SpectralField;
use super::grid::PeriodicGrid;
use super::ops::gradient;
use crate::error::{Error, Result};
use crate::weights::WeightSpec;
use ndarray::Array2;

/// Weight values at the grid nodes. The weight must be two-dimensional
/// (the 2D solver's box); the origin sits at the box center.
pub fn weight_on_grid(spec: &WeightSpec, grid: PeriodicGrid) -> Result<Array2<f64>> {
    if spec.dim != 2 {
        return Err(Error::contract("the periodic box is two-dimensional"));
    }
    Ok(Array2::from_shape_fn((grid.n, grid.n), |(i, j)| {
        let rho = (grid.coord(i).powi(2) + grid.coord(j).powi(2)).sqrt();
        spec.profile(rho)
    }))
}

/// ∫ f² Φ dx by midpoint quadrature.
pub fn weighted_norm_sq_field(f: &SpectralField, weight: &Array2<f64>) -> f64 {
    let cell = f.grid().cell_area();
    f.values()
        .iter()
        .zip(weight.iter())
        .map(|(v, w)| v * v * w)
        .sum::<f64>()
        * cell
}

/// ∫ |u|² Φ dx for a vector field.
pub fn weighted_norm_sq_vec(u: &[SpectralField], weight: &Array2<f64>) -> f64 {
    u.iter().map(|c| weighted_norm_sq_field(c, weight)).sum()
}

/// ∫ Φ (|u|² + |∇⊗u|²) dx — the weighted H¹ norm squared in the equivalent
/// form that the axiom (H2) makes exact.
pub fn weighted_h1_norm_sq(u: &[SpectralField], weight: &Array2<f64>) -> f64 {
    let mut acc = weighted_norm_sq_vec(u, weight);
    for c in u {
        let g = gradient(c);
        acc += weighted_norm_sq_vec(&g, weight);
    }
    acc
}

/// ‖√Φ u‖₄ = (∫ Φ² |u|⁴ dx)^{1/4}.
pub fn weighted_l4_norm(u: &[SpectralField; 2], weight: &Array2<f64>) -> f64 {
    let grid = u[0].grid();
    let cell = grid.cell_area();
    let v0 = u[0].values();
    let v1 = u[1].values();
    let mut acc = 0.0;
    for ((a, b), w) in v0.iter().zip(v1.iter()).zip(weight.iter()) {
        let speed_sq = a * a + b * b;
        acc += w * w * speed_sq * speed_sq;
    }
    (acc * cell).powf(0.25)
}
