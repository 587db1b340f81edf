//! Size caps for dense constructions.

use serde::{Deserialize, Serialize};

/// Upper bounds on the number of sites for each dense family.
///
/// Amplitude count grows as `d^N`; the defaults keep every vector under a
/// million entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest `N` for the `N`-site, `N`-level antisymmetric state (7^7 ≈ 8.2e5 amplitudes).
    pub nn_max: usize,
    /// Largest `N` for the `N`-qubit singlet (2^16 amplitudes).
    pub qubit_max: usize,
    /// Largest `N` for the decoherence-free basis construction.
    pub df_max: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            nn_max: 7,
            qubit_max: 16,
            df_max: 12,
        }
    }
}
