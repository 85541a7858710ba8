//! Property tests for the module invariants.

use leraylab::axisym::{self, AxiRunConfig};
use leraylab::gronwall::{t0_bound, GronwallParams};
use leraylab::spectral::{
    derivative, gradient, riesz, weight_on_grid, weighted_h1_norm_sq, weighted_norm_sq_field,
    weighted_norm_sq_vec, PeriodicGrid, SpectralField,
};
use leraylab::weights::{check_h2, check_pair, default_cloud, lemma4_bound, pair_cloud, WeightForm, WeightSpec};
use proptest::prelude::*;

fn arb_weight() -> impl Strategy<Value = WeightSpec> {
    (0.0_f64..3.0, prop_oneof![Just(2usize), Just(3usize)], prop::bool::ANY, prop::bool::ANY).prop_map(
        |(gamma, dim, cylindrical, smooth)| {
            let form = if smooth { WeightForm::OnePlusSqHalf } else { WeightForm::OnePlusAbs };
            if cylindrical {
                WeightSpec::cylindrical(gamma, form).unwrap()
            } else {
                WeightSpec::radial(gamma, dim, form).unwrap()
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// (H1): every supported weight evaluates into (0, 1] everywhere.
    #[test]
    fn weight_values_stay_in_unit_interval(
        spec in arb_weight(),
        coords in prop::collection::vec(-1.0e4_f64..1.0e4, 3),
    ) {
        let point = &coords[..spec.dim];
        let v = spec.eval(point).unwrap();
        prop_assert!(v > 0.0 && v <= 1.0, "Φ = {v}");
    }

    /// The slow-decay bound holds for every spec that passes (H2).
    #[test]
    fn lemma4_verified_whenever_h2_passes(spec in arb_weight()) {
        let rep = check_h2(&spec, &default_cloud(&spec)).unwrap();
        if rep.pass {
            let b = lemma4_bound(&spec, rep.c1_est).unwrap();
            prop_assert!(b.verified, "c3 = {} failed the pointwise check", b.c3);
        }
    }

    /// T₀ is monotone non-increasing in A and B; in T₁ the formula branch is
    /// non-increasing (the min branch equals T₁ itself and may grow with it).
    #[test]
    fn t0_monotonicity(
        a in 0.01_f64..50.0,
        b_const in 0.0_f64..50.0,
        exponent in 1.0_f64..4.0,
        t1 in 0.01_f64..10.0,
        bump in 1.0_f64..4.0,
    ) {
        let p = GronwallParams::new(a, b_const, exponent, t1).unwrap();
        let t0 = t0_bound(&p);
        let pa = GronwallParams::new(a * bump, b_const, exponent, t1).unwrap();
        prop_assert!(t0_bound(&pa) <= t0 + 1e-15);
        let pb = GronwallParams::new(a, b_const * bump, exponent, t1).unwrap();
        prop_assert!(t0_bound(&pb) <= t0 + 1e-15);
        // formula branch in T₁
        let formula = |t: f64| -> f64 {
            let bm1 = exponent - 1.0;
            let denom = 3.0_f64.powf(exponent) * b_const * (a.powf(bm1) + (b_const * t).powf(bm1));
            if denom > 0.0 { 1.0 / denom } else { f64::INFINITY }
        };
        prop_assert!(formula(t1 * bump) <= formula(t1) + 1e-15);
    }
}

/// Consistency of the single-weight setting as a degenerate pair: for the
/// adapted cylindrical powers, check_pair(Φ, Φ) passes.
#[test]
fn degenerate_pair_consistency_on_the_power_family() {
    for gamma in [0.5, 1.0, 1.5] {
        let phi = WeightSpec::cylindrical(gamma, WeightForm::OnePlusAbs).unwrap();
        let rep = check_pair(&phi, &phi, &pair_cloud()).unwrap();
        assert!(rep.pass, "γ = {gamma}: {rep:?}");
    }
}

/// Riesz transforms are skew-adjoint on mean-zero fields:
/// ⟨R_j f, g⟩ = −⟨f, R_j g⟩.
#[test]
fn riesz_skew_symmetry() {
    let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
    let f = SpectralField::from_fn(grid, |x, y| (2.0 * x).sin() * y.cos() + (x + 3.0 * y).cos());
    let g = SpectralField::from_fn(grid, |x, y| (x - y).sin() + (2.0 * y).cos());
    let inner = |a: &SpectralField, b: &SpectralField| -> f64 {
        a.values()
            .iter()
            .zip(b.values().iter())
            .map(|(p, q)| p * q)
            .sum::<f64>()
            * grid.cell_area()
    };
    for axis in 0..2 {
        let lhs = inner(&riesz(&f, axis), &g);
        let rhs = -inner(&f, &riesz(&g, axis));
        let scale = inner(&f, &f).sqrt() * inner(&g, &g).sqrt();
        assert!((lhs - rhs).abs() < 1e-12 * scale, "axis {axis}: {lhs} vs {rhs}");
    }
}

/// Weighted H¹ equivalence through divergence and curl: the two-sided ratio
///
///   ‖√Φ u‖_{H¹} / (‖√Φ u‖₂ + ‖√Φ ∇·u‖₂ + ‖√Φ ∇∧u‖₂)
///
/// stays inside a fixed interval across random divergence-free-plus-gradient
/// fields.
#[test]
fn weighted_h1_equivalence_ratio_is_bounded() {
    use rand::{Rng, SeedableRng};
    let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI).unwrap();
    let spec = WeightSpec::radial(1.0, 2, WeightForm::OnePlusAbs).unwrap();
    let w = weight_on_grid(&spec, grid).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let mut ratios = Vec::new();
    for _ in 0..20 {
        // stream + potential parts with random low modes
        let mut stream = SpectralField::zeros(grid);
        let mut potential = SpectralField::zeros(grid);
        for _ in 0..6 {
            let (m0, m1) = (rng.gen_range(-4i64..=4), rng.gen_range(-4i64..=4));
            if (m0, m1) == (0, 0) {
                continue;
            }
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(-1.0..1.0);
            let p: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let add = SpectralField::from_fn(grid, move |x, y| {
                (m0 as f64 * x + m1 as f64 * y + p).cos()
            });
            stream = stream.add(&add.scale(a));
            potential = potential.add(&add.scale(b));
        }
        let sg = gradient(&stream);
        let pg = gradient(&potential);
        let u = [pg[0].sub(&sg[1]), pg[1].add(&sg[0])];
        let h1 = weighted_h1_norm_sq(&u, &w).sqrt();
        let div = derivative(&u[0], 0).add(&derivative(&u[1], 1));
        let curl = derivative(&u[1], 0).sub(&derivative(&u[0], 1));
        let rhs = weighted_norm_sq_vec(&u, &w).sqrt()
            + weighted_norm_sq_field(&div, &w).sqrt()
            + weighted_norm_sq_field(&curl, &w).sqrt();
        ratios.push(h1 / rhs);
    }
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    assert!(lo > 0.1 && hi < 10.0, "equivalence ratios drifted: [{lo}, {hi}]");
}

/// Discrete maximum-principle check: with η₀ ≥ 0 the transport-diffusion
/// step keeps η above a tiny negative floor.
#[test]
fn eta_stays_essentially_nonnegative() {
    let config = AxiRunConfig { n_r: 64, n_z: 64, dt: 1.5e-3, t_end: 0.3, cadence: 20, ..Default::default() };
    let out = axisym::run_axi(&config).unwrap();
    let eta0_max = 1.0; // ring amplitude
    let min = out.state.eta.iter().cloned().fold(f64::MAX, f64::min);
    assert!(min >= -1e-8 * eta0_max, "η undershot to {min}");
}

/// The coe1 fit is self-consistent: re-checking the inequality with the
/// fitted constant succeeds on the same ledger.
#[test]
fn coe1_fit_is_self_consistent() {
    let config = AxiRunConfig { n_r: 48, n_z: 48, dt: 2e-3, t_end: 0.2, cadence: 10, ..Default::default() };
    let out = axisym::run_axi(&config).unwrap();
    let rep = axisym::verify_coe1(&out.ledger).unwrap();
    assert!(rep.c_min.is_finite());
    // envelope column never outruns the fitted inequality
    let rows = &out.ledger.rows;
    let w0 = rows[0].e_psi_omega;
    let mut lhs_cum = 0.0;
    let mut rhs_cum = 0.0;
    for w in rows.windows(2) {
        let dt = w[1].t - w[0].t;
        lhs_cum += 0.5 * dt * (w[1].e_psi_grad_omega + w[0].e_psi_grad_omega);
        let f = |r: &leraylab::axisym::AxiLedgerRow| {
            let u = r.e_phi_u.sqrt();
            let om = r.e_psi_omega;
            (1.0 + u + u.powf(4.0 / 3.0)) * om + om.powf(1.5) + om.powi(3)
        };
        rhs_cum += 0.5 * dt * (f(&w[1]) + f(&w[0]));
        assert!(
            w[1].e_psi_omega + lhs_cum <= w0 + rep.c_min * rhs_cum + 1e-10 * (1.0 + w0),
            "fitted constant violated at t = {}",
            w[1].t
        );
    }
}
