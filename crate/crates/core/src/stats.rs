//! Goodness-of-fit helpers for the statistical checks.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

impl ChiSquareTest {
    /// True when the null hypothesis is not rejected at `significance`.
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

fn survival(statistic: f64, dof: usize) -> Result<f64> {
    let dist = ChiSquared::new(dof as f64)
        .map_err(|e| Error::Internal(format!("chi-square distribution: {e}")))?;
    Ok(dist.sf(statistic))
}

/// Pearson test of `observed` counts against category probabilities `expected`.
pub fn chi_square_gof(observed: &[u64], expected: &[f64]) -> Result<ChiSquareTest> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(Error::invalid("need matching category lists with at least two entries"));
    }
    let total: u64 = observed.iter().sum();
    if total == 0 {
        return Err(Error::invalid("no observations"));
    }
    let mut statistic = 0.0;
    for (&o, &p) in observed.iter().zip(expected) {
        let e = p * total as f64;
        if e <= 0.0 {
            if o > 0 {
                return Err(Error::invalid("observation in a zero-probability category"));
            }
            continue;
        }
        statistic += (o as f64 - e).powi(2) / e;
    }
    let dof = expected.iter().filter(|&&p| p > 0.0).count() - 1;
    Ok(ChiSquareTest {
        statistic,
        dof,
        p_value: survival(statistic, dof)?,
    })
}

/// Two-sample homogeneity test on a `2 × k` contingency table.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> Result<ChiSquareTest> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::invalid("need matching category lists with at least two entries"));
    }
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    if na == 0 || nb == 0 {
        return Err(Error::invalid("empty sample"));
    }
    let n = (na + nb) as f64;
    let mut statistic = 0.0;
    let mut used = 0;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        used += 1;
        let ea = col * na as f64 / n;
        let eb = col * nb as f64 / n;
        statistic += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    let dof = used.max(2) - 1;
    Ok(ChiSquareTest {
        statistic,
        dof,
        p_value: survival(statistic, dof)?,
    })
}

/// `|k/n - p| ≤ sigmas·√(p(1-p)/n)`.
pub fn within_binomial(successes: u64, trials: u64, p: f64, sigmas: f64) -> bool {
    let n = trials as f64;
    let rate = successes as f64 / n;
    let sd = (p * (1.0 - p) / n).sqrt();
    (rate - p).abs() <= sigmas * sd + 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_fit_has_p_one() {
        let t = chi_square_gof(&[25, 25, 25, 25], &[0.25; 4]).unwrap();
        assert_eq!(t.statistic, 0.0);
        assert_eq!(t.dof, 3);
        assert!((t.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn known_quantile() {
        // statistic 10.828 is the 0.001 upper quantile for 1 dof
        let t = chi_square_gof(&[0, 0], &[0.5, 0.5]);
        assert!(t.is_err());
        let p = survival(10.828, 1).unwrap();
        assert!((p - 0.001).abs() < 1e-5, "{p}");
    }

    #[test]
    fn skewed_sample_rejected() {
        let t = chi_square_gof(&[900, 100], &[0.5, 0.5]).unwrap();
        assert!(!t.passes(0.001));
        let t2 = chi_square_two_sample(&[500, 500], &[900, 100]).unwrap();
        assert!(!t2.passes(0.001));
        let t3 = chi_square_two_sample(&[500, 500], &[510, 490]).unwrap();
        assert!(t3.passes(0.001));
    }

    #[test]
    fn binomial_window() {
        assert!(within_binomial(500, 1000, 0.5, 4.0));
        assert!(!within_binomial(600, 1000, 0.5, 4.0));
    }
}
