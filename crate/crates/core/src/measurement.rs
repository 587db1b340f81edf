//! Collective spin measurements along a common direction.
//!
//! Every site is measured along the same axis. Outcome `i` on a site is the
//! eigenvalue `m = s - i` of `n·S`, so for the `N`-level antisymmetric state
//! each joint outcome is a permutation of `0..N`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{apply_collective, basis_rotation, Direction, Permutation, StateVector};

/// One joint measurement: the direction used and the local index seen by each party.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub direction: Direction,
    pub outcomes: Vec<usize>,
}

impl OutcomeRecord {
    pub fn is_permutation(&self) -> bool {
        Permutation::new(self.outcomes.clone()).is_ok()
    }
}

/// Probability of every joint outcome, indexed like the state's amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    num_sites: usize,
    local_dim: usize,
    direction: Direction,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.num_sites];
        for slot in digits.iter_mut().rev() {
            *slot = index % self.local_dim;
            index /= self.local_dim;
        }
        digits
    }

    pub fn probability(&self, outcomes: &[usize]) -> f64 {
        if outcomes.len() != self.num_sites || outcomes.iter().any(|&x| x >= self.local_dim) {
            return 0.0;
        }
        let idx = outcomes.iter().fold(0, |acc, &x| acc * self.local_dim + x);
        self.probs[idx]
    }

    /// Distribution of a single party's outcome.
    pub fn marginal(&self, site: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.local_dim];
        let stride = self.local_dim.pow((self.num_sites - 1 - site) as u32);
        for (idx, p) in self.probs.iter().enumerate() {
            out[(idx / stride) % self.local_dim] += p;
        }
        out
    }

    pub fn total_variation(&self, other: &OutcomeDistribution) -> f64 {
        0.5 * self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }
}

/// Probabilities below this are rounding residue of the basis change.
const PROB_FLOOR: f64 = 1e-14;

/// Born-rule table for measuring every site along `direction`.
pub fn outcome_distribution(state: &StateVector, direction: Direction) -> Result<OutcomeDistribution> {
    let d = state.local_dim();
    let to_direction = basis_rotation(d, direction)?;
    let rotated = apply_collective(state, &to_direction.adjoint())?;
    let probs: Vec<f64> = rotated
        .amplitudes()
        .iter()
        .map(|a| a.norm_sqr())
        .map(|p| if p < PROB_FLOOR { 0.0 } else { p })
        .collect();
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::invalid(format!("state is not normalized (‖ψ‖² = {total})")));
    }
    Ok(OutcomeDistribution {
        num_sites: state.num_sites(),
        local_dim: d,
        direction,
        probs,
    })
}

/// Inverse-CDF sampler over the full joint table.
#[derive(Debug, Clone)]
pub struct JointSampler {
    dist: OutcomeDistribution,
    cumulative: Vec<f64>,
}

impl JointSampler {
    pub fn new(state: &StateVector, direction: Direction) -> Result<Self> {
        Ok(Self::from_distribution(outcome_distribution(state, direction)?))
    }

    pub fn from_distribution(dist: OutcomeDistribution) -> Self {
        let mut acc = 0.0;
        let cumulative = dist
            .probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        JointSampler { dist, cumulative }
    }

    pub fn distribution(&self) -> &OutcomeDistribution {
        &self.dist
    }

    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().unwrap();
        let u = rng.random::<f64>() * total;
        let idx = self.cumulative.partition_point(|&c| c <= u);
        // guard the rounding tail: never land past the last nonzero entry
        let idx = idx.min(self.cumulative.len() - 1);
        if self.dist.probs[idx] > 0.0 {
            idx
        } else {
            (0..=idx).rev().find(|&i| self.dist.probs[i] > 0.0).unwrap_or(idx)
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> OutcomeRecord {
        OutcomeRecord {
            direction: self.dist.direction,
            outcomes: self.dist.digits_of(self.sample_index(rng)),
        }
    }
}

/// Samples one joint outcome of `state` measured along `direction`.
pub fn measure_joint<R: Rng + ?Sized>(
    state: &StateVector,
    direction: Direction,
    rng: &mut R,
) -> Result<OutcomeRecord> {
    Ok(JointSampler::new(state, direction)?.sample(rng))
}
