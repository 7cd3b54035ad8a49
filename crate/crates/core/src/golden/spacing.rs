//! How close is a run of coordinates to Fibonacci proportions 1:1:2:3:5:8?

use crate::error::{Error, Result};
use crate::fib::fib_exact;
use num_traits::ToPrimitive;

/// Score the first `terms` gaps of `coords` against the Fibonacci pattern.
///
/// Gaps are normalized by the first gap and compared with the targets
/// `F(1), F(2), ..., F(terms)` = 1, 1, 2, 3, 5, ...; the score is the
/// largest relative deviation (0 means a perfect Fibonacci progression).
/// `coords` must be strictly increasing with at least `terms + 1` entries,
/// and `terms >= 3` so the comparison says something.
pub fn fibonacci_spacing_score(coords: &[f64], terms: usize) -> Result<f64> {
    if terms < 3 {
        return Err(Error::domain(format!("need terms >= 3, got {terms}")));
    }
    if coords.len() < terms + 1 {
        return Err(Error::domain(format!(
            "need {} coordinates for {terms} gaps, got {}",
            terms + 1,
            coords.len()
        )));
    }
    let coords = &coords[..terms + 1];
    for w in coords.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::domain(format!(
                "coordinates must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    let first_gap = coords[1] - coords[0];
    let mut worst = 0.0f64;
    for i in 0..terms {
        let gap = (coords[i + 1] - coords[i]) / first_gap;
        let target = fib_exact(i as u64 + 1).to_f64().unwrap();
        worst = worst.max((gap - target).abs() / target);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_fibonacci_spacing_scores_zero() {
        let coords = [0.0, 1.0, 2.0, 4.0, 7.0, 12.0, 20.0];
        assert_eq!(fibonacci_spacing_score(&coords, 6).unwrap(), 0.0);
        // Scaling the whole ruler changes nothing.
        let scaled: Vec<f64> = coords.iter().map(|c| 2.5 * c + 10.0).collect();
        assert_eq!(fibonacci_spacing_score(&scaled, 6).unwrap(), 0.0);
    }

    #[test]
    fn worst_gap_sets_the_score() {
        // Gaps 1, 1, 2, 3.35: last gap misses its target 3 by 0.35/3.
        let coords = [0.0, 1.0, 2.0, 4.0, 7.35];
        let score = fibonacci_spacing_score(&coords, 4).unwrap();
        assert!((score - 0.35 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_short_or_unsorted_input() {
        assert!(fibonacci_spacing_score(&[0.0, 1.0, 2.0], 3).is_err());
        assert!(fibonacci_spacing_score(&[0.0, 1.0, 2.0, 4.0], 2).is_err());
        assert!(fibonacci_spacing_score(&[0.0, 1.0, 1.0, 4.0], 3).is_err());
        assert!(fibonacci_spacing_score(&[0.0, 2.0, 1.0, 4.0], 3).is_err());
    }
}
