use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    A,
    B,
    C,
}

/// The closed set of party behaviours the simulations know about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    Honest,
    /// Liar detection, sender A: different messages to B and C, each with its true position list.
    SendDifferentMessages { to_b: u8, to_c: u8 },
    /// Liar detection, relay B: forwards `to_c` instead of what A sent. Both of its
    /// lists are drawn from its own true list for `to_c`.
    ForwardAlteredMessage { to_c: u8 },
    /// Secret sharing agent: declares a symbol other than its own, uniformly among
    /// those not yet declared.
    DeclareFalseShare,
    /// Liar detection sender: pads each position list it sends with `n` positions
    /// where its own symbol differs from the claimed one.
    InjectFakePositions { n: usize },
}

impl Strategy {
    pub fn is_honest(&self) -> bool {
        matches!(self, Strategy::Honest)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyBehavior {
    pub role: Role,
    pub strategy: Strategy,
}
