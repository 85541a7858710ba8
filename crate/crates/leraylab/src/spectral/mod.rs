//! Periodic-grid transform machinery for the 2D solver: fast trigonometric
//! transforms, Riesz and Leray multipliers, mollification, dealiased products
//! and weighted quadrature.
//!
//! The solver approximates ℝ² by the torus [-L/2, L/2)²; weights are
//! evaluated on the box without periodization, which is harmless because
//! every verified quantity is an integral dominated by the bulk.

pub(crate) mod fft;
mod field;
mod grid;
mod mollify;
mod ops;
mod quad;

pub use field::SpectralField;
pub use grid::PeriodicGrid;
pub use mollify::{mollify, MollifierShape, MollifierSpec};
pub use ops::{
    curl2d, dealiased_product, derivative, divergence2d, gradient, leray_project, pressure_field,
    riesz,
};
pub use quad::{
    weight_on_grid, weighted_h1_norm_sq, weighted_l4_norm, weighted_norm_sq_field,
    weighted_norm_sq_vec,
};
