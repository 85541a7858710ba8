//! Fourier-multiplier operators and the dealiased product.

use super::field::SpectralField;
use rustfft::num_complex::Complex64;

/// ∂f/∂x_axis via the ik multiplier.
pub fn derivative(f: &SpectralField, axis: usize) -> SpectralField {
    let grid = f.grid();
    let two_pi_over_l = 2.0 * std::f64::consts::PI / grid.length;
    f.map_coeffs(|m0, m1, c| {
        let m = if axis == 0 { m0 } else { m1 };
        let k = two_pi_over_l * m as f64;
        Complex64::new(0.0, k) * c
    })
}

pub fn gradient(f: &SpectralField) -> [SpectralField; 2] {
    [derivative(f, 0), derivative(f, 1)]
}

pub fn divergence2d(u: &[SpectralField; 2]) -> SpectralField {
    derivative(&u[0], 0).add(&derivative(&u[1], 1))
}

/// Scalar vorticity ω = ∂x u_y − ∂y u_x.
pub fn curl2d(u: &[SpectralField; 2]) -> SpectralField {
    derivative(&u[1], 0).sub(&derivative(&u[0], 1))
}

/// Riesz transform R_j: multiplier −i k_j/|k|, zero on the k = 0 mode
/// (mean-free convention).
pub fn riesz(f: &SpectralField, axis: usize) -> SpectralField {
    f.map_coeffs(|m0, m1, c| {
        if m0 == 0 && m1 == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let (a, b) = (m0 as f64, m1 as f64);
        let kj = if axis == 0 { a } else { b };
        let norm = (a * a + b * b).sqrt();
        Complex64::new(0.0, -kj / norm) * c
    })
}

/// Leray projection onto divergence-free fields: û − k (k·û)/|k|².
pub fn leray_project(u: &[SpectralField; 2]) -> [SpectralField; 2] {
    let grid = u[0].grid();
    assert_eq!(grid, u[1].grid(), "components must share a grid");
    let c0 = u[0].coeffs();
    let c1 = u[1].coeffs();
    let n = grid.n;
    let mut out0 = c0.clone();
    let mut out1 = c1.clone();
    for i in 0..n {
        let a = grid.mode(i) as f64;
        for j in 0..n {
            let b = grid.mode(j) as f64;
            let k2 = a * a + b * b;
            if k2 == 0.0 {
                continue;
            }
            let kdotu = (a * c0[[i, j]] + b * c1[[i, j]]) / k2;
            out0[[i, j]] -= a * kdotu;
            out1[[i, j]] -= b * kdotu;
        }
    }
    [
        SpectralField::from_coeffs(grid, out0),
        SpectralField::from_coeffs(grid, out1),
    ]
}

/// Zero out modes beyond the 2/3-rule cutoff.
pub fn dealias(f: &SpectralField) -> SpectralField {
    let cutoff = f.grid().dealias_cutoff();
    f.map_coeffs(|m0, m1, c| {
        if m0.abs() > cutoff || m1.abs() > cutoff {
            Complex64::new(0.0, 0.0)
        } else {
            c
        }
    })
}

/// Pointwise product with the 2/3 rule applied before and after, so the
/// quadratic interaction is alias-free.
pub fn dealiased_product(f: &SpectralField, g: &SpectralField) -> SpectralField {
    assert_eq!(f.grid(), g.grid(), "operands must share a grid");
    let ft = dealias(f);
    let gt = dealias(g);
    let prod = ft.values() * gt.values();
    dealias(&SpectralField::from_values(f.grid(), prod))
}

/// Pressure of the (mollified) system: p = Σ_{ij} R_i R_j (b_i u_j), with
/// dealiased products. Satisfies −Δp = div div (b ⊗ u) identically on the
/// retained modes.
pub fn pressure_field(u: &[SpectralField; 2], b: &[SpectralField; 2]) -> SpectralField {
    let grid = u[0].grid();
    let mut acc = SpectralField::zeros(grid);
    for i in 0..2 {
        for j in 0..2 {
            let bij = dealiased_product(&b[i], &u[j]);
            let term = riesz(&riesz(&bij, i), j);
            acc = acc.add(&term);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::PeriodicGrid;

    fn tg(grid: PeriodicGrid) -> [SpectralField; 2] {
        [
            SpectralField::from_fn(grid, |x, y| x.cos() * y.sin()),
            SpectralField::from_fn(grid, |x, y| -x.sin() * y.cos()),
        ]
    }

    fn linf(a: &SpectralField, b: &SpectralField) -> f64 {
        a.values()
            .iter()
            .zip(b.values().iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn riesz_multiplier_on_single_mode() {
        // -i k/|k| sends e^{ix} to -i e^{ix}, so cos x goes to sin x
        let grid = PeriodicGrid::new(32, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |x, _| x.cos());
        let rf = riesz(&f, 0);
        let expect = SpectralField::from_fn(grid, |x, _| x.sin());
        assert!(linf(&rf, &expect) < 1e-12);
    }

    #[test]
    fn riesz_annihilates_constants() {
        let grid = PeriodicGrid::new(16, 1.0).unwrap();
        let f = SpectralField::from_fn(grid, |_, _| 3.25);
        let rf = riesz(&f, 1);
        assert!(rf.max_abs() < 1e-13);
    }

    #[test]
    fn riesz_squares_sum_to_minus_identity() {
        let grid = PeriodicGrid::new(32, 2.0).unwrap();
        // mean-zero field
        let f = SpectralField::from_fn(grid, |x, y| {
            (2.0 * std::f64::consts::PI * x).sin() + (4.0 * std::f64::consts::PI * y).cos()
        });
        let sum = riesz(&riesz(&f, 0), 0).add(&riesz(&riesz(&f, 1), 1));
        let neg = f.scale(-1.0);
        assert!(linf(&sum, &neg) < 1e-12);
    }

    #[test]
    fn leray_annihilates_gradients() {
        let grid = PeriodicGrid::new(32, 2.0 * std::f64::consts::PI).unwrap();
        let phi = SpectralField::from_fn(grid, |x, y| (x + 2.0 * y).sin() + (3.0 * x).cos());
        let g = gradient(&phi);
        let p = leray_project(&g);
        assert!(p[0].max_abs() < 1e-12);
        assert!(p[1].max_abs() < 1e-12);
    }

    #[test]
    fn leray_fixes_divergence_free_fields() {
        let grid = PeriodicGrid::new(32, 2.0 * std::f64::consts::PI).unwrap();
        let u = tg(grid);
        let p = leray_project(&u);
        assert!(linf(&p[0], &u[0]) < 1e-12);
        assert!(linf(&p[1], &u[1]) < 1e-12);
    }

    #[test]
    fn leray_output_is_divergence_free_and_idempotent() {
        let grid = PeriodicGrid::new(32, 2.0 * std::f64::consts::PI).unwrap();
        let u = [
            SpectralField::from_fn(grid, |_, y| y.sin()),
            SpectralField::from_fn(grid, |x, y| (x + y).cos()),
        ];
        let p = leray_project(&u);
        let div = divergence2d(&p);
        assert!(div.max_abs() < 1e-10 * (1.0 + p[0].max_abs()));
        let pp = leray_project(&p);
        assert!(linf(&pp[0], &p[0]) < 1e-12);
        assert!(linf(&pp[1], &p[1]) < 1e-12);
        // orthogonality: <Pu, u - Pu> tiny
        let inner = |a: &SpectralField, b: &SpectralField| -> f64 {
            let cell = grid.cell_area();
            a.values()
                .iter()
                .zip(b.values().iter())
                .map(|(x, y)| x * y)
                .sum::<f64>()
                * cell
        };
        let res = [u[0].sub(&p[0]), u[1].sub(&p[1])];
        let cross = inner(&p[0], &res[0]) + inner(&p[1], &res[1]);
        let norm = inner(&u[0], &u[0]) + inner(&u[1], &u[1]);
        assert!(cross.abs() < 1e-10 * norm);
    }

    #[test]
    fn dealiased_product_of_low_modes_is_exact() {
        let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |x, _| (3.0 * x).cos());
        let g = SpectralField::from_fn(grid, |_, y| (2.0 * y).sin());
        let p = dealiased_product(&f, &g);
        let expect = SpectralField::from_fn(grid, |x, y| (3.0 * x).cos() * (2.0 * y).sin());
        assert!(linf(&p, &expect) < 1e-12);
    }

    #[test]
    fn dealiased_product_with_constant_truncates() {
        let grid = PeriodicGrid::new(16, 2.0 * std::f64::consts::PI).unwrap();
        // mode 6 > cutoff 5 on n=16 must vanish
        let f = SpectralField::from_fn(grid, |_, _| 1.0);
        let g = SpectralField::from_fn(grid, |x, _| (6.0 * x).cos() + x.cos());
        let p = dealiased_product(&f, &g);
        let expect = SpectralField::from_fn(grid, |x, _| x.cos());
        assert!(linf(&p, &expect) < 1e-12);
    }

    #[test]
    fn pressure_of_rest_is_zero() {
        let grid = PeriodicGrid::new(16, 1.0).unwrap();
        let zero = [SpectralField::zeros(grid), SpectralField::zeros(grid)];
        assert_eq!(pressure_field(&zero, &zero).max_abs(), 0.0);
    }

    #[test]
    fn pressure_identity_on_random_fields() {
        let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let u = [
            SpectralField::from_fn(grid, |x, y| (x + y).sin() + (2.0 * x - y).cos()),
            SpectralField::from_fn(grid, |x, y| (3.0 * y).sin() - (x - 2.0 * y).cos()),
        ];
        let b = [
            SpectralField::from_fn(grid, |x, y| (2.0 * x).cos() * y.sin()),
            SpectralField::from_fn(grid, |x, y| (y - x).sin()),
        ];
        let p = pressure_field(&u, &b);
        // residual of Δp + div div (b⊗u) against ‖p‖
        let lap_p = derivative(&derivative(&p, 0), 0).add(&derivative(&derivative(&p, 1), 1));
        let mut divdiv = SpectralField::zeros(grid);
        for i in 0..2 {
            for j in 0..2 {
                let bij = dealiased_product(&b[i], &u[j]);
                divdiv = divdiv.add(&derivative(&derivative(&bij, i), j));
            }
        }
        let resid = lap_p.add(&divdiv);
        assert!(resid.norm_sq().sqrt() < 1e-10 * p.norm_sq().sqrt());
    }

    #[test]
    fn pressure_of_taylor_green_matches_closed_form() {
        let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let u = tg(grid);
        let p = pressure_field(&u, &u);
        let expect = SpectralField::from_fn(grid, |x, y| -((2.0 * x).cos() + (2.0 * y).cos()) / 4.0);
        assert!(linf(&p, &expect) < 1e-12);
    }
}
