//! Dense state vectors, one-site operators and the supersinglet families.

mod families;
mod operator;
mod permutation;
mod spin;
mod state;

use num_complex::Complex64;

pub use families::{
    make_nn_supersinglet, make_nn_supersinglet_capped, make_pair_singlet,
    make_qubit_supersinglet, make_qubit_supersinglet_capped,
};
pub use operator::LocalOperator;
pub use permutation::{permutation_sign, Permutation};
pub(crate) use families::resource_error;
pub(crate) use permutation::factorial;
pub use spin::{
    basis_rotation, random_rotation, random_special_unitary, random_unitary, rotation_operator,
    spin_matrices, Direction, SpinMatrices,
};
pub use state::{StateDoc, StateVector};

use crate::error::Result;

/// `(op ⊗ … ⊗ op)|state⟩`, one site at a time.
pub fn apply_collective(state: &StateVector, op: &LocalOperator) -> Result<StateVector> {
    let mut out = state.clone();
    for k in 0..state.num_sites() {
        out.apply_local_in_place(k, op)?;
    }
    Ok(out)
}

/// Result of comparing a state with its collective image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceCheck {
    /// `min_φ ‖e^{iφ} U^{⊗N}|ψ⟩ - |ψ⟩‖`.
    pub deviation: f64,
    /// `⟨ψ|U^{⊗N}|ψ⟩`; its argument is the phase picked up.
    pub overlap: Complex64,
}

/// Phase-optimal distance between `state` and `op^{⊗N}|state⟩`.
///
/// Mathematically equal to `√(2 - 2|⟨ψ|U^{⊗N}|ψ⟩|)` for unit vectors, but that
/// form loses half the digits near zero (`√ε ≈ 1e-8`), so the residual is
/// formed explicitly after removing the optimal phase.
pub fn invariance_check(state: &StateVector, op: &LocalOperator) -> Result<InvarianceCheck> {
    let image = apply_collective(state, op)?;
    let overlap = state.inner(&image)?;
    let phase = if overlap.norm() > 0.0 {
        overlap.conj() / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let deviation = image
        .amplitudes()
        .iter()
        .zip(state.amplitudes())
        .map(|(u, s)| (phase * u - s).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(InvarianceCheck { deviation, overlap })
}

pub fn invariance_deviation(state: &StateVector, op: &LocalOperator) -> Result<f64> {
    Ok(invariance_check(state, op)?.deviation)
}

/// `(Σ_k S_z^(k)) |state⟩`.
pub fn total_spin_z(state: &StateVector) -> Result<StateVector> {
    let spin = spin_matrices(state.local_dim())?;
    state.apply_sum_local(&spin.z)
}

/// `S_total² |state⟩` with `S_total = Σ_k S^(k)`.
pub fn total_spin_squared(state: &StateVector) -> Result<StateVector> {
    let spin = spin_matrices(state.local_dim())?;
    let mut acc = StateVector::zeros(state.num_sites(), state.local_dim())?;
    for op in [&spin.x, &spin.y, &spin.z] {
        let once = state.apply_sum_local(op)?;
        let twice = once.apply_sum_local(op)?;
        acc = acc.add_scaled(Complex64::new(1.0, 0.0), &twice)?;
    }
    Ok(acc)
}
