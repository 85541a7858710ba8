//! The nonlinear Gronwall envelope.
//!
//! For a continuous α ≥ 0 with α(t) ≤ A + B∫₀ᵗ α + α^b ds, the bound
//! α(t) ≤ 3A holds for t up to
//!
//! ```text
//!   T₀ = min( T₁, 1 / (3^b B (A^{b-1} + (B T₁)^{b-1})) ).
//! ```
//!
//! The B factor in the denominator is forced by dimensional analysis
//! ([B] = 1/time) and by the first-crossing argument itself: bounding
//! B∫α with A + B(BT₁/A)^{b-1}∫α^b and feeding α ≤ 3A back in yields
//! T*·3^b·B·(A^{b-1} + (BT₁)^{b-1}) ≥ 1 at any first crossing time T*.
//! With B = 1 both constants disappear and T₀ reduces to the familiar
//! min(T₁, 3^{-b}(A^{b-1} + T₁^{b-1})^{-1}).
//!
//! Verification runs two independent devices: the extremal trajectory (the
//! integral inequality saturated as the ODE α' = B(α + α^b)) must stay below
//! 3A on [0, T₀], and when the trajectory does reach 3A at some first time
//! T*, the crossing inequality above must hold.

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GronwallParams {
    /// initial bound A > 0
    pub a: f64,
    /// growth constant B ≥ 0
    pub b_const: f64,
    /// nonlinearity exponent b ≥ 1
    pub exponent: f64,
    /// horizon T₁ > 0
    pub t1: f64,
}

impl GronwallParams {
    pub fn new(a: f64, b_const: f64, exponent: f64, t1: f64) -> Result<Self> {
        if !(a > 0.0) || !(b_const >= 0.0) || !(exponent >= 1.0) || !(t1 > 0.0) {
            return Err(Error::contract(
                "Gronwall parameters need A > 0, B >= 0, b >= 1, T1 > 0",
            ));
        }
        Ok(GronwallParams { a, b_const, exponent, t1 })
    }
}

/// T₀ = min(T₁, 1/(3^b B (A^{b-1} + (BT₁)^{b-1}))).
///
/// `powf` gives 0⁰ = 1, which is exactly the b = 1 reading of the formula;
/// B = 0 sends the second branch to +∞, so T₀ = T₁ (no growth at all).
pub fn t0_bound(p: &GronwallParams) -> f64 {
    let bm1 = p.exponent - 1.0;
    let denom = (3.0_f64).powf(p.exponent)
        * p.b_const
        * (p.a.powf(bm1) + (p.b_const * p.t1).powf(bm1));
    if denom <= 0.0 {
        return p.t1;
    }
    p.t1.min(1.0 / denom)
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeReport {
    pub t0: f64,
    /// max of α/A over [0, T₀]
    pub max_ratio: f64,
    /// envelope α ≤ 3A held on [0, T₀]
    pub pass: bool,
    /// first time α reached 3A within [0, T₁], when it did
    pub first_crossing: Option<f64>,
    /// T*·3^b(A^{b-1} + (BT₁)^{b-1}) ≥ 1 whenever T* exists
    pub crossing_inequality_ok: bool,
}

/// Integrate the extremal ODE α' = B(α + α^b), α(0) = A, with classical RK4,
/// and check the 3A envelope on [0, T₀] plus the first-crossing inequality
/// on [0, T₁]. A failing envelope indicates an integrator or formula bug,
/// never new mathematics.
pub fn verify_envelope(p: &GronwallParams, steps: usize) -> Result<EnvelopeReport> {
    if steps < 10_000 {
        return Err(Error::contract("envelope verification wants at least 1e4 steps"));
    }
    let t0 = t0_bound(p);
    let rhs = |alpha: f64| p.b_const * (alpha + alpha.powf(p.exponent));
    let target = 3.0 * p.a;

    let dt = p.t1 / steps as f64;
    let mut alpha = p.a;
    let mut t = 0.0;
    let mut max_ratio: f64 = 1.0;
    let mut first_crossing = None;
    for _ in 0..steps {
        let k1 = rhs(alpha);
        let k2 = rhs(alpha + 0.5 * dt * k1);
        let k3 = rhs(alpha + 0.5 * dt * k2);
        let k4 = rhs(alpha + dt * k3);
        let next = alpha + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let t_next = t + dt;
        if first_crossing.is_none() && next >= target {
            let frac = if next > alpha { (target - alpha) / (next - alpha) } else { 1.0 };
            first_crossing = Some(t + frac * dt);
        }
        if t_next <= t0 + dt * 1e-9 {
            max_ratio = max_ratio.max(next / p.a);
        }
        alpha = next;
        t = t_next;
        // trajectories with b > 1 blow up before T1; nothing to learn past 3A
        if !alpha.is_finite() || alpha > 1e12 * p.a {
            break;
        }
    }

    let pass = max_ratio <= 3.0 + 1e-9;
    let crossing_inequality_ok = match first_crossing {
        None => true,
        Some(ts) => {
            let bm1 = p.exponent - 1.0;
            ts * (3.0_f64).powf(p.exponent)
                * p.b_const
                * (p.a.powf(bm1) + (p.b_const * p.t1).powf(bm1))
                >= 1.0 - 1e-9
        }
    };
    Ok(EnvelopeReport { t0, max_ratio, pass, first_crossing, crossing_inequality_ok })
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeFit {
    pub a_fit: f64,
    pub b_fit: f64,
    pub t0: f64,
    /// α stayed ≤ 3·A_fit on [0, min(T₀, T_end)]
    pub envelope_ok: bool,
    pub max_ratio: f64,
}

/// Fit the smallest B such that α(t) ≤ α(0) + B∫₀ᵗ(α + α^b)ds holds row-wise
/// (trapezoidal quadrature, bisection to 1e-6 relative), then report whether
/// α stayed below three times its initial value up to the resulting T₀.
pub fn fit_envelope(times: &[f64], alpha: &[f64], exponent: f64) -> Result<EnvelopeFit> {
    if times.len() != alpha.len() || times.len() < 2 {
        return Err(Error::contract("envelope fit needs two aligned columns with >= 2 rows"));
    }
    if alpha.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::contract("alpha column must be finite and non-negative"));
    }
    let a_fit = alpha[0];

    let integrand: Vec<f64> = alpha.iter().map(|&v| v + v.powf(exponent)).collect();
    let mut cum = vec![0.0_f64; times.len()];
    for i in 1..times.len() {
        let dt = times[i] - times[i - 1];
        cum[i] = cum[i - 1] + 0.5 * dt * (integrand[i] + integrand[i - 1]);
    }

    let holds = |b: f64| -> bool {
        alpha
            .iter()
            .zip(cum.iter())
            .all(|(&v, &c)| v <= a_fit + b * c + 1e-14 * (1.0 + a_fit))
    };
    let mut b_fit = 0.0;
    if !holds(0.0) {
        let mut hi = alpha
            .iter()
            .zip(cum.iter())
            .filter(|(_, &c)| c > 0.0)
            .map(|(&v, &c)| (v - a_fit) / c)
            .fold(0.0_f64, f64::max)
            .max(1e-30);
        while !holds(hi) {
            hi *= 2.0;
        }
        let mut lo = 0.0_f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if holds(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-6 * hi {
                break;
            }
        }
        b_fit = hi;
    }

    let t_end = *times.last().unwrap();
    let params = GronwallParams::new(a_fit.max(1e-300), b_fit, exponent, t_end)?;
    let t0 = t0_bound(&params);
    let mut max_ratio = 0.0_f64;
    for (&t, &v) in times.iter().zip(alpha.iter()) {
        if t <= t0 {
            max_ratio = max_ratio.max(v / a_fit);
        }
    }
    Ok(EnvelopeFit { a_fit, b_fit, t0, envelope_ok: max_ratio <= 3.0 + 1e-9, max_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn t0_examples_from_the_formula() {
        // b = 1 makes both powers vanish: T0 = 1/(6B), independent of A
        let p = GronwallParams::new(5.0, 1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(t0_bound(&p), 1.0 / 6.0);
        let p = GronwallParams::new(0.3, 2.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(t0_bound(&p), 1.0 / 12.0);

        // A = B = T1 = 1, b = 3: 3^3 * (1+1) = 54
        let p = GronwallParams::new(1.0, 1.0, 3.0, 1.0).unwrap();
        assert_relative_eq!(t0_bound(&p), 1.0 / 54.0);

        // tiny horizon wins the min
        let p = GronwallParams::new(1.0, 1.0, 3.0, 1e-9).unwrap();
        assert_relative_eq!(t0_bound(&p), 1e-9);

        // no growth at all: the horizon is the only limit
        let p = GronwallParams::new(1.0, 0.0, 2.0, 0.7).unwrap();
        assert_relative_eq!(t0_bound(&p), 0.7);
    }

    #[test]
    fn t0_monotone_nonincreasing_in_a_and_b() {
        let base = GronwallParams::new(1.0, 1.0, 2.0, 1.0).unwrap();
        let t0 = t0_bound(&base);
        for k in 1..=10 {
            let a = GronwallParams::new(1.0 + k as f64, 1.0, 2.0, 1.0).unwrap();
            assert!(t0_bound(&a) <= t0 + 1e-15);
            let b = GronwallParams::new(1.0, 1.0 + k as f64, 2.0, 1.0).unwrap();
            assert!(t0_bound(&b) <= t0 + 1e-15);
        }
    }

    #[test]
    fn zero_growth_keeps_alpha_at_a() {
        let p = GronwallParams::new(2.0, 0.0, 2.0, 1.0).unwrap();
        let rep = verify_envelope(&p, 10_000).unwrap();
        assert!(rep.pass);
        assert_relative_eq!(rep.max_ratio, 1.0, epsilon = 1e-12);
        assert!(rep.first_crossing.is_none());
    }

    #[test]
    fn cubic_case_stays_below_3a() {
        let p = GronwallParams::new(1.0, 1.0, 3.0, 1.0).unwrap();
        let rep = verify_envelope(&p, 50_000).unwrap();
        assert!(rep.pass, "max ratio {}", rep.max_ratio);
        assert!(rep.max_ratio < 3.0);
        assert!(rep.crossing_inequality_ok);
    }

    #[test]
    fn linear_case_matches_exact_solution() {
        // b = 1: alpha = A e^{2Bt}; at T0 = 1/6 with B = 1 the ratio is e^{1/3}
        let p = GronwallParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let rep = verify_envelope(&p, 20_000).unwrap();
        assert!(rep.pass);
        // max over step endpoints inside [0, T0]; granularity is T1/steps
        assert_relative_eq!(rep.max_ratio, (1.0_f64 / 3.0).exp(), max_relative = 1e-4);
    }

    #[test]
    fn fit_on_constant_ledger_gives_zero_b() {
        let times: Vec<f64> = (0..50).map(|i| i as f64 * 0.01).collect();
        let alpha = vec![0.7; 50];
        let fit = fit_envelope(&times, &alpha, 2.0).unwrap();
        assert_eq!(fit.b_fit, 0.0);
        assert!(fit.envelope_ok);
    }

    #[test]
    fn fit_on_decaying_ledger_gives_zero_b() {
        let times: Vec<f64> = (0..100).map(|i| i as f64 * 0.01).collect();
        let alpha: Vec<f64> = times.iter().map(|t| (-2.0 * t).exp()).collect();
        let fit = fit_envelope(&times, &alpha, 2.0).unwrap();
        assert_eq!(fit.b_fit, 0.0);
        assert!(fit.envelope_ok);
    }

    #[test]
    fn fit_recovers_planted_growth() {
        // alpha solving alpha' = B(alpha + alpha^2) saturates the inequality
        let b_true = 0.8;
        let p = GronwallParams::new(1.0, b_true, 2.0, 0.5).unwrap();
        let mut times = vec![0.0];
        let mut alpha = vec![p.a];
        let steps = 4000;
        let dt = p.t1 / steps as f64;
        let mut a = p.a;
        let rhs = |x: f64| b_true * (x + x * x);
        for i in 0..steps {
            let k1 = rhs(a);
            let k2 = rhs(a + 0.5 * dt * k1);
            let k3 = rhs(a + 0.5 * dt * k2);
            let k4 = rhs(a + dt * k3);
            a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            times.push((i + 1) as f64 * dt);
            alpha.push(a);
        }
        let fit = fit_envelope(&times, &alpha, 2.0).unwrap();
        assert_relative_eq!(fit.b_fit, b_true, max_relative = 1e-3);
        // self-consistency: the fitted pair passes the envelope verifier
        let params = GronwallParams::new(fit.a_fit, fit.b_fit, 2.0, 0.5).unwrap();
        let rep = verify_envelope(&params, 20_000).unwrap();
        assert!(rep.pass);
    }
}
