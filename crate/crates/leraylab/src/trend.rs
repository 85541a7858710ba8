//! Dyadic growth-trend rule shared by the weight scans.
//!
//! Several checks reduce to the same question: does a sequence of per-scale
//! suprema keep growing as the dyadic scale increases, or does it level off?
//! We declare divergence when the growth factor exceeds a fixed threshold
//! across the last three scales, i.e. on both of the last two dyadic steps.

pub const GROWTH_THRESHOLD: f64 = 1.05;

/// True when `s` grows by more than [`GROWTH_THRESHOLD`] on each of the last
/// two dyadic steps. Sequences shorter than three entries never diverge.
pub fn diverging_trend(s: &[f64]) -> bool {
    let n = s.len();
    if n < 3 {
        return false;
    }
    let (a, b, c) = (s[n - 3], s[n - 2], s[n - 1]);
    if a <= 0.0 || b <= 0.0 {
        return false;
    }
    b / a > GROWTH_THRESHOLD && c / b > GROWTH_THRESHOLD
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_sequence_is_not_divergent() {
        assert!(!diverging_trend(&[1.0, 1.0, 1.0, 1.0]));
    }

    #[test]
    fn geometric_growth_is_divergent() {
        assert!(diverging_trend(&[1.0, 1.2, 1.44, 1.73]));
    }

    #[test]
    fn only_the_tail_matters() {
        // grew early, then saturated
        assert!(!diverging_trend(&[1.0, 2.0, 4.0, 4.1, 4.12]));
    }

    #[test]
    fn short_sequences_never_diverge() {
        assert!(!diverging_trend(&[1.0, 10.0]));
    }
}
