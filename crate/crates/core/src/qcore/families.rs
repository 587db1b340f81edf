//! Constructors for the three supersinglet families.

use num_complex::Complex64;

use super::permutation::{factorial, Permutation};
use super::state::{checked_space_dim, StateVector};
use crate::caps::Caps;
use crate::error::{Error, Result};

pub(crate) fn resource_error(what: &str, d: usize, n: usize, cap: usize, hint: &str) -> Error {
    let required = match checked_space_dim(d, n) {
        Some(v) => v.to_string(),
        None => format!("{d}^{n}"),
    };
    Error::ResourceLimit {
        what: format!("{what} with N={n}"),
        required: format!("{required} (d^N with d={d})"),
        cap,
        hint: hint.to_string(),
    }
}

/// `(1/√d) Σ_i (-1)^i |i⟩|d-i-1⟩`, the two-site spin-zero state.
pub fn make_pair_singlet(d: usize) -> Result<StateVector> {
    if d < 2 {
        return Err(Error::invalid(format!("pair singlet needs d >= 2, got {d}")));
    }
    let amp = 1.0 / (d as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        amps[i * d + (d - 1 - i)] = Complex64::new(sign * amp, 0.0);
    }
    StateVector::new(2, d, amps)
}

/// Totally antisymmetric state of `N` sites with `N` levels each, under default caps.
pub fn make_nn_supersinglet(n: usize) -> Result<StateVector> {
    make_nn_supersinglet_capped(n, &Caps::default())
}

/// `(1/√N!) Σ_perm sign(perm) |perm⟩`.
pub fn make_nn_supersinglet_capped(n: usize, caps: &Caps) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::invalid(format!("N-level supersinglet needs N >= 2, got {n}")));
    }
    if n > caps.nn_max {
        return Err(resource_error(
            "N-site N-level supersinglet",
            n,
            n,
            caps.nn_max,
            "; raise the cap explicitly if the memory is available",
        ));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); checked_space_dim(n, n).unwrap()];
    let amp = 1.0 / (factorial(n) as f64).sqrt();
    for p in Permutation::all(n) {
        let idx = p.images().iter().fold(0, |acc, &x| acc * n + x);
        amps[idx] = Complex64::new(p.sign() as f64 * amp, 0.0);
    }
    StateVector::new(n, n, amps)
}

/// `N`-qubit spin-zero state (N even), under default caps.
pub fn make_qubit_supersinglet(n: usize) -> Result<StateVector> {
    make_qubit_supersinglet_capped(n, &Caps::default())
}

/// Superposition over balanced bitstrings with coefficient
/// `z!(N/2-z)!(-1)^(N/2-z) / ((N/2)! √(N/2+1))`, where `z` counts zeros in the
/// first half. The factorial ratio is evaluated as `1/C(N/2, z)`.
pub fn make_qubit_supersinglet_capped(n: usize, caps: &Caps) -> Result<StateVector> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!("qubit supersinglet needs even N >= 2, got {n}")));
    }
    if n > caps.qubit_max {
        return Err(resource_error(
            "N-qubit supersinglet",
            2,
            n,
            caps.qubit_max,
            "; raise the cap explicitly if the memory is available",
        ));
    }
    let half = n / 2;
    let binom: Vec<f64> = {
        let mut row = vec![1.0f64; half + 1];
        for k in 1..=half {
            row[k] = row[k - 1] * (half - k + 1) as f64 / k as f64;
        }
        row
    };
    let norm = 1.0 / ((half + 1) as f64).sqrt();
    let first_half_mask = ((1usize << half) - 1) << half;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (idx, amp) in amps.iter_mut().enumerate() {
        if idx.count_ones() as usize != half {
            continue;
        }
        let ones_first = (idx & first_half_mask).count_ones() as usize;
        let z = half - ones_first;
        let sign = if (half - z).is_multiple_of(2) { 1.0 } else { -1.0 };
        *amp = Complex64::new(sign * norm / binom[z], 0.0);
    }
    StateVector::new(n, 2, amps)
}
