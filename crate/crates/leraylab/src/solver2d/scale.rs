//! The parabolic rescaling u_λ(t, x) = λ u(λ²t, λx).

use super::SimState2D;
use crate::error::{Error, Result};
use crate::spectral::SpectralField;
use ndarray::Array2;

/// Rescale a state by an integer factor λ ≥ 1.
///
/// For integer λ the dilated field is again a trigonometric polynomial on
/// the same grid, so the interpolation is exact: node i maps to node
/// (1-λ)n/2 + λi (mod n). The time tag becomes t/λ² and the mollification
/// parameter ε/λ, which is the width that makes the rescaled trajectory
/// solve the mollified system exactly; λ must respect both the resolvability
/// bound λ ≤ n/8 and the field's active modes.
pub fn scale_state(state: &SimState2D, lambda: f64) -> Result<SimState2D> {
    if !(lambda >= 1.0) {
        return Err(Error::contract("scaling factor must be >= 1"));
    }
    if (lambda - lambda.round()).abs() > 1e-12 {
        return Err(Error::contract(
            "spectral rescaling is exact only for integer factors; got a non-integer λ",
        ));
    }
    let lam = lambda.round() as i64;
    let grid = state.grid;
    let n = grid.n as i64;
    if lam > n / 8 {
        return Err(Error::contract(format!(
            "λ = {lam} unresolvable: λ·(grid spacing) must stay ≤ L/8 (λ ≤ {})",
            n / 8
        )));
    }
    // active-mode check: λ·m_max must stay under the Nyquist mode
    let mut m_max = 0i64;
    for comp in &state.u {
        let c = comp.coeffs();
        let tol = 1e-9 * c.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for i in 0..grid.n {
            for j in 0..grid.n {
                if c[[i, j]].norm() > tol {
                    m_max = m_max.max(grid.mode(i).abs().max(grid.mode(j).abs()));
                }
            }
        }
    }
    if lam * m_max >= n / 2 {
        return Err(Error::contract(format!(
            "λ = {lam} would push mode {m_max} past the Nyquist limit"
        )));
    }

    let map = |i: usize| -> usize {
        let shifted = (1 - lam) * (n / 2) + lam * i as i64;
        shifted.rem_euclid(n) as usize
    };
    let rescale = |f: &SpectralField| -> SpectralField {
        let v = f.values();
        let out = Array2::from_shape_fn((grid.n, grid.n), |(i, j)| lambda * v[[map(i), map(j)]]);
        SpectralField::from_values(grid, out)
    };
    Ok(SimState2D::new(
        state.t / (lambda * lambda),
        [rescale(&state.u[0]), rescale(&state.u[1])],
        state.epsilon / lambda,
    ))
}
