//! Supersinglet states and the protocols built on them.
//!
//! * [`qcore`]: dense states, spin rotations and the three supersinglet families.
//! * [`measurement`]: Born-rule sampling of collective spin measurements.
//! * [`bell`]: dichotomic spin observables, correlation functions and CHSH-type maximization.
//! * [`protocols`]: N-strangers, secret-sharing and liar-detection simulations.
//! * [`dfsub`]: decoherence-free subspaces spanned by products of qubit singlets.

pub mod bell;
pub mod caps;
pub mod dfsub;
pub mod error;
pub mod measurement;
pub mod protocols;
pub mod qcore;
pub mod rng;
pub mod stats;

pub use caps::Caps;
pub use error::{Error, Result};
pub use qcore::{Direction, LocalOperator, Permutation, StateVector};
pub use rng::SeededRng;
