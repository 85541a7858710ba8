//! # leraylab
//!
//! A numerical laboratory for weighted energy estimates of the incompressible
//! Navier-Stokes equations.
//!
//! The crate bundles four pieces of machinery:
//!
//! * [`weights`] — decaying weight functions `(1+ρ)^{-γ}` / `(1+ρ²)^{-γ/2}`,
//!   numerical checks of the adapted-weight axioms, Muckenhoupt `A_q`
//!   scans over dyadic cube families, and weight-pair conditions.
//! * [`spectral`] — periodic-grid transforms, Riesz and Leray multipliers,
//!   mollification, dealiased products and weighted quadrature.
//! * [`solver2d`] / [`axisym`] — a mollified 2D pseudo-spectral solver and an
//!   axisymmetric no-swirl `(r,z)` solver in the η = ω_θ/r formulation, each
//!   emitting a ledger of weighted norms that the a priori inequalities are
//!   fitted against.
//! * [`gronwall`] — the nonlinear Gronwall envelope (the `3A` bound up to
//!   `T₀`), its ODE oracle, and envelope fits on solver ledgers.
//!
//! The [`harness`] module ties everything together behind reproducible
//! preset experiments; the `leraylab` CLI crate is a thin front door over it.

pub mod axisym;
pub mod error;
pub mod gronwall;
pub mod harness;
pub mod solver2d;
pub mod spectral;
pub mod weights;

pub mod book;
mod trend;

pub use error::{Error, Result};
