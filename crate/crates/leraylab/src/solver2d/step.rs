//! Integrating-factor RK4 time stepping.

use super::SimState2D;
use crate::error::{Error, Result};
use crate::spectral::{
    dealiased_product, derivative, leray_project, MollifierShape, MollifierSpec, PeriodicGrid,
    SpectralField,
};
use ndarray::Array2;
use rustfft::num_complex::Complex64;

/// One-grid stepper with the mollifier transfer function precomputed.
pub struct Stepper {
    grid: PeriodicGrid,
    transfer: Option<Array2<Complex64>>,
}

impl Stepper {
    pub fn new(grid: PeriodicGrid, epsilon: f64, shape: MollifierShape) -> Result<Self> {
        let transfer = if epsilon > 0.0 {
            if epsilon >= grid.length / 4.0 {
                return Err(Error::contract("mollifier width must stay below L/4"));
            }
            Some(MollifierSpec::new(epsilon, shape)?.transfer(grid))
        } else {
            None
        };
        Ok(Stepper { grid, transfer })
    }

    fn mollify(&self, f: &SpectralField) -> SpectralField {
        match &self.transfer {
            None => f.clone(),
            Some(t) => SpectralField::from_coeffs(self.grid, f.coeffs() * t),
        }
    }

    /// N(u) = −P[(b_ε·∇)u], dealiased.
    pub fn nonlinear(&self, u: &[SpectralField; 2]) -> [SpectralField; 2] {
        let b = [self.mollify(&u[0]), self.mollify(&u[1])];
        let mut adv = Vec::with_capacity(2);
        for j in 0..2 {
            let mut acc = SpectralField::zeros(self.grid);
            for (i, bi) in b.iter().enumerate() {
                acc = acc.add(&dealiased_product(bi, &derivative(&u[j], i)));
            }
            adv.push(acc);
        }
        let p = leray_project(&[adv.remove(0), adv.remove(0)]);
        [p[0].scale(-1.0), p[1].scale(-1.0)]
    }

    fn heat(&self, f: &SpectralField, dt: f64) -> SpectralField {
        let two_pi_over_l = 2.0 * std::f64::consts::PI / self.grid.length;
        f.map_coeffs(|m0, m1, c| {
            let k0 = two_pi_over_l * m0 as f64;
            let k1 = two_pi_over_l * m1 as f64;
            c * (-(k0 * k0 + k1 * k1) * dt).exp()
        })
    }

    fn heat_pair(&self, u: &[SpectralField; 2], dt: f64) -> [SpectralField; 2] {
        [self.heat(&u[0], dt), self.heat(&u[1], dt)]
    }

    fn axpy(u: &[SpectralField; 2], a: f64, v: &[SpectralField; 2]) -> [SpectralField; 2] {
        [u[0].add(&v[0].scale(a)), u[1].add(&v[1].scale(a))]
    }

    /// One integrating-factor RK4 step: the heat semigroup is exact, the
    /// projected advection is treated with the classical 4-stage scheme.
    pub fn step(&self, state: &SimState2D, dt: f64) -> Result<SimState2D> {
        if !(dt > 0.0) {
            return Err(Error::contract("dt must be positive"));
        }
        let u = &state.u;
        let k1 = self.nonlinear(u);
        let ua = self.heat_pair(&Self::axpy(u, 0.5 * dt, &k1), 0.5 * dt);
        let k2 = self.nonlinear(&ua);
        let ub = Self::axpy(&self.heat_pair(u, 0.5 * dt), 0.5 * dt, &k2);
        let k3 = self.nonlinear(&ub);
        let uc = Self::axpy(&self.heat_pair(u, dt), dt, &self.heat_pair(&k3, 0.5 * dt));
        let k4 = self.nonlinear(&uc);

        let e_full_u = self.heat_pair(u, dt);
        let e_full_k1 = self.heat_pair(&k1, dt);
        let e_half_k2 = self.heat_pair(&k2, 0.5 * dt);
        let e_half_k3 = self.heat_pair(&k3, 0.5 * dt);
        let mut next = e_full_u;
        next = Self::axpy(&next, dt / 6.0, &e_full_k1);
        next = Self::axpy(&next, dt / 3.0, &e_half_k2);
        next = Self::axpy(&next, dt / 3.0, &e_half_k3);
        next = Self::axpy(&next, dt / 6.0, &k4);

        if !(next[0].is_finite() && next[1].is_finite()) {
            return Err(Error::BlowUp { t: state.t });
        }
        Ok(SimState2D::new(state.t + dt, next, state.epsilon))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver2d::{init_data, InitialData};

    fn grid(n: usize) -> PeriodicGrid {
        PeriodicGrid::new(n, 2.0 * std::f64::consts::PI).unwrap()
    }

    #[test]
    fn zero_stays_zero() {
        let g = grid(16);
        let st = Stepper::new(g, 0.0, MollifierShape::CompactBump).unwrap();
        let state = SimState2D::new(0.0, [SpectralField::zeros(g), SpectralField::zeros(g)], 0.0);
        let next = st.step(&state, 0.01).unwrap();
        assert_eq!(next.u[0].max_abs(), 0.0);
        assert_eq!(next.u[1].max_abs(), 0.0);
    }

    #[test]
    fn shear_mode_decays_exactly() {
        // u = (sin y, 0): (u·∇)u ≡ 0, so the step is the pure heat factor
        let g = grid(32);
        let st = Stepper::new(g, 0.0, MollifierShape::CompactBump).unwrap();
        let u = [
            SpectralField::from_fn(g, |_, y| y.sin()),
            SpectralField::zeros(g),
        ];
        let state = SimState2D::new(0.0, u, 0.0);
        let dt = 0.05;
        let next = st.step(&state, dt).unwrap();
        let expect = SpectralField::from_fn(g, |_, y| (-dt).exp() * y.sin());
        let err = next.u[0]
            .values()
            .iter()
            .zip(expect.values().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-14, "heat factor error {err}");
    }

    #[test]
    fn taylor_green_decays_at_rate_two() {
        let g = grid(64);
        let st = Stepper::new(g, 0.0, MollifierShape::CompactBump).unwrap();
        let u0 = init_data(&InitialData::TaylorGreen, g, 0).unwrap();
        let mut state = SimState2D::new(0.0, u0.clone(), 0.0);
        let dt = 1e-3;
        for _ in 0..100 {
            state = st.step(&state, dt).unwrap();
        }
        let decay = (-2.0 * state.t).exp();
        let expect = [u0[0].scale(decay), u0[1].scale(decay)];
        let num = (state.u[0].sub(&expect[0]).norm_sq() + state.u[1].sub(&expect[1]).norm_sq()).sqrt();
        let den = (expect[0].norm_sq() + expect[1].norm_sq()).sqrt();
        assert!(num / den < 1e-10, "relative error {}", num / den);
    }

    #[test]
    fn divergence_free_is_preserved() {
        let g = grid(64);
        let st = Stepper::new(g, 0.2, MollifierShape::CompactBump).unwrap();
        let u0 = init_data(&InitialData::random_default(), g, 5).unwrap();
        let mut state = SimState2D::new(0.0, u0, 0.2);
        for _ in 0..20 {
            state = st.step(&state, 2e-3).unwrap();
            assert!(state.relative_divergence() < 1e-9);
        }
    }
}
