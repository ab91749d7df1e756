//! Contraction of column-stochastic matrices on the sum-zero subspace.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::markov::ALGEBRAIC_TOL;
use crate::rng::SplitMix64;

/// Random sum-zero vectors tried per check.
pub const NORM_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormCheck {
    /// `1 − θ/d`.
    pub bound: f64,
    /// Largest observed `‖Pa‖₁ / ‖a‖₁`.
    pub max_ratio: f64,
}

fn l1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Verifies `‖Pa‖₁ ≤ (1 − θ/d)‖a‖₁` for sum-zero `a ∈ R^{d+1}`, on
/// [`NORM_SAMPLES`] random vectors and every `e_{j₁} − e_{j₂}`.
///
/// `p` has `d + 1` columns, each a probability vector, and every pair of
/// columns must share a row where both entries are at least `theta`.
pub fn column_stochastic_norm_bound(p: &Matrix<f64>, theta: f64, seed: u64) -> Result<NormCheck> {
    let cols = p.first().map_or(0, Vec::len);
    if cols < 2 || p.iter().any(|row| row.len() != cols) {
        return Err(Error::Precondition("need a rectangular matrix with at least two columns".into()));
    }
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::Precondition("theta must be positive".into()));
    }
    for c in 0..cols {
        let sum: f64 = p.iter().map(|row| row[c]).sum();
        if p.iter().any(|row| row[c] < 0.0) || (sum - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::ColumnSum { column: c.to_string(), sum });
        }
    }
    for c1 in 0..cols {
        for c2 in c1 + 1..cols {
            if !p.iter().any(|row| row[c1] >= theta && row[c2] >= theta) {
                return Err(Error::Precondition(format!(
                    "columns {c1} and {c2} share no row with entries ≥ θ"
                )));
            }
        }
    }
    let d = (cols - 1) as f64;
    let bound = 1.0 - theta / d;
    let ratio = |a: &[f64]| l1(&linalg::mat_vec(p, a)) / l1(a);
    let mut max_ratio: f64 = 0.0;
    for c1 in 0..cols {
        for c2 in 0..cols {
            if c1 != c2 {
                let mut a = vec![0.0; cols];
                a[c1] = 1.0;
                a[c2] = -1.0;
                max_ratio = max_ratio.max(ratio(&a));
            }
        }
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..NORM_SAMPLES {
        let mut a: Vec<f64> = (0..cols).map(|_| 2.0 * rng.next_f64() - 1.0).collect();
        let mean = a.iter().sum::<f64>() / cols as f64;
        a.iter_mut().for_each(|x| *x -= mean);
        if l1(&a) > 0.0 {
            max_ratio = max_ratio.max(ratio(&a));
        }
    }
    if max_ratio > bound + ALGEBRAIC_TOL {
        return Err(Error::Numerical(format!("ratio {max_ratio} exceeds bound {bound}")));
    }
    Ok(NormCheck { bound, max_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_kills_sum_zero() {
        let check = column_stochastic_norm_bound(&vec![vec![0.5, 0.5]; 2], 0.5, 0).unwrap();
        assert_eq!(check.bound, 0.5);
        assert!(check.max_ratio < 1e-15);
    }

    #[test]
    fn two_by_two() {
        let p = vec![vec![0.75, 0.25], vec![0.25, 0.75]];
        let check = column_stochastic_norm_bound(&p, 0.25, 0).unwrap();
        assert_eq!(check.bound, 0.75);
        assert!((check.max_ratio - 0.5).abs() < 1e-15);
    }

    #[test]
    fn precondition_violated() {
        let p = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(matches!(
            column_stochastic_norm_bound(&p, 0.1, 0),
            Err(Error::Precondition(_))
        ));
    }
}
