//! Liar detection among three parties A (0), B (1) and C (2).
//!
//! A sends a trit message to B and to C; B relays it to C. Every message is
//! accompanied by the list of positions where the sender's row holds the
//! message symbol. A receiver rejects a list that hits any of its own
//! positions for that symbol (impossible for an honest list, since columns are
//! permutations) or that is implausibly short. B also forwards to C the list
//! it got from A. When C's two messages disagree, the lists from B settle who
//! lied: an honest B holds two disjoint true lists covering about `2L/3`
//! positions, while a lying B can only draw on its own list of about `L/3`.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::strategy::Strategy;
use super::table::SequenceTable;
use super::TRANSCRIPT_SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Lower bound on an acceptable list length: `L/3 - sigmas·√(2L/9)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthThreshold {
    pub sigmas: f64,
}

impl Default for LengthThreshold {
    /// Five standard deviations: an honest list of binomial length is refused
    /// with probability below 3e-7.
    fn default() -> Self {
        LengthThreshold { sigmas: 5.0 }
    }
}

impl LengthThreshold {
    pub fn min_length(&self, l: usize) -> f64 {
        let l = l as f64;
        l / 3.0 - self.sigmas * (2.0 * l / 9.0).sqrt()
    }
}

/// Minimum combined length of B's two lists for C to blame A: `2L/3 - 3·√(4L/9)`.
pub fn combined_threshold(l: usize) -> f64 {
    let l = l as f64;
    2.0 * l / 3.0 - 3.0 * (4.0 * l / 9.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RejectReason {
    /// The receiver holds the claimed symbol at `position`.
    Intersection { position: usize },
    TooShort { length: usize },
    Malformed { position: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Validation {
    Accept,
    Reject(RejectReason),
}

impl Validation {
    pub fn is_accept(&self) -> bool {
        matches!(self, Validation::Accept)
    }
}

/// Positions where `sequence` holds `symbol`.
pub fn ldp_list(sequence: &[usize], symbol: usize) -> Vec<usize> {
    sequence
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == symbol)
        .map(|(i, _)| i)
        .collect()
}

pub fn ldp_validate(received: &[usize], receiver: &[usize], symbol: usize) -> Validation {
    ldp_validate_with(received, receiver, symbol, receiver.len(), LengthThreshold::default())
}

pub fn ldp_validate_with(
    received: &[usize],
    receiver: &[usize],
    symbol: usize,
    l: usize,
    threshold: LengthThreshold,
) -> Validation {
    for &p in received {
        match receiver.get(p) {
            None => return Validation::Reject(RejectReason::Malformed { position: p }),
            Some(&x) if x == symbol => {
                return Validation::Reject(RejectReason::Intersection { position: p })
            }
            _ => {}
        }
    }
    if (received.len() as f64) < threshold.min_length(l) {
        return Validation::Reject(RejectReason::TooShort { length: received.len() });
    }
    Validation::Accept
}

/// `list` plus `n` positions, drawn uniformly, where `sequence` does not hold `symbol`.
pub fn inject_fake_positions(
    list: &[usize],
    sequence: &[usize],
    symbol: usize,
    n: usize,
    rng: &mut SeededRng,
) -> Vec<usize> {
    let pool: Vec<usize> = sequence
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != symbol)
        .map(|(i, _)| i)
        .collect();
    let n = n.min(pool.len());
    let mut out = list.to_vec();
    out.extend(sample(rng, pool.len(), n).into_iter().map(|i| pool[i]));
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hop {
    /// A → B.
    AB,
    /// A → C.
    AC,
    /// B → C, B's own list.
    BC,
    /// B → C, the list B says it got from A.
    BCForwarded,
}

impl Hop {
    /// The party that sent the failing list.
    pub fn sender(&self) -> super::Role {
        match self {
            Hop::AB | Hop::AC => super::Role::A,
            Hop::BC | Hop::BCForwarded => super::Role::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LdpVerdict {
    Consistent,
    ALies,
    BLies,
    RejectMessage { hop: Hop, reason: RejectReason },
}

impl LdpVerdict {
    /// Who the verdict points at, if anyone.
    pub fn culprit(&self) -> Option<super::Role> {
        match self {
            LdpVerdict::Consistent => None,
            LdpVerdict::ALies => Some(super::Role::A),
            LdpVerdict::BLies => Some(super::Role::B),
            LdpVerdict::RejectMessage { hop, .. } => Some(hop.sender()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct LdpBehaviors {
    pub a: Strategy,
    pub b: Strategy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdpTranscript {
    pub schema_version: u32,
    pub length: usize,
    pub m_ab: u8,
    pub m_ac: u8,
    pub m_bc: u8,
    pub l_ab: Vec<usize>,
    pub l_ac: Vec<usize>,
    pub l_bc: Vec<usize>,
    /// The list B presents as the one A sent it.
    pub l_bc_forwarded: Vec<usize>,
    pub verdict: LdpVerdict,
}

impl LdpTranscript {
    /// Same transcript without the position lists.
    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": self.schema_version,
            "length": self.length,
            "m_ab": self.m_ab,
            "m_ac": self.m_ac,
            "m_bc": self.m_bc,
            "list_lengths": [self.l_ab.len(), self.l_ac.len(), self.l_bc.len(), self.l_bc_forwarded.len()],
            "verdict": self.verdict,
        })
    }
}

fn check_trit(m: u8) -> Result<()> {
    if m > 2 {
        return Err(Error::invalid(format!("messages are trits, got {m}")));
    }
    Ok(())
}

/// Runs one exchange of A's intended `message` over a three-row table.
pub fn ldp_run(
    table: &SequenceTable,
    behaviors: &LdpBehaviors,
    message: u8,
    rng: &mut SeededRng,
) -> Result<LdpTranscript> {
    ldp_run_with(table, behaviors, message, LengthThreshold::default(), rng)
}

pub fn ldp_run_with(
    table: &SequenceTable,
    behaviors: &LdpBehaviors,
    message: u8,
    threshold: LengthThreshold,
    rng: &mut SeededRng,
) -> Result<LdpTranscript> {
    if table.num_parties() != 3 {
        return Err(Error::invalid(format!(
            "liar detection needs a three-row table, got {}",
            table.num_parties()
        )));
    }
    check_trit(message)?;
    let l = table.len();
    let (row_a, row_b, row_c) = (table.row(0), table.row(1), table.row(2));

    let (m_ab, m_ac, a_fakes) = match behaviors.a {
        Strategy::Honest => (message, message, 0),
        Strategy::SendDifferentMessages { to_b, to_c } => (to_b, to_c, 0),
        Strategy::InjectFakePositions { n } => (message, message, n),
        other => return Err(Error::invalid(format!("strategy {other:?} does not apply to A"))),
    };
    check_trit(m_ab)?;
    check_trit(m_ac)?;
    let mut a_list = |m: u8| {
        let honest = ldp_list(row_a, m as usize);
        if a_fakes > 0 {
            inject_fake_positions(&honest, row_a, m as usize, a_fakes, rng)
        } else {
            honest
        }
    };
    let l_ab = a_list(m_ab);
    let l_ac = a_list(m_ac);

    let (m_bc, l_bc, l_bc_forwarded) = match behaviors.b {
        Strategy::Honest => (m_ab, ldp_list(row_b, m_ab as usize), l_ab.clone()),
        Strategy::InjectFakePositions { n } => {
            let own = ldp_list(row_b, m_ab as usize);
            (m_ab, inject_fake_positions(&own, row_b, m_ab as usize, n, rng), l_ab.clone())
        }
        Strategy::ForwardAlteredMessage { to_c } => {
            check_trit(to_c)?;
            // B cannot know where A holds `to_c`; its only safe material is its own list.
            let own = ldp_list(row_b, to_c as usize);
            (to_c, own.clone(), own)
        }
        other => return Err(Error::invalid(format!("strategy {other:?} does not apply to B"))),
    };

    let mut transcript = LdpTranscript {
        schema_version: TRANSCRIPT_SCHEMA_VERSION,
        length: l,
        m_ab,
        m_ac,
        m_bc,
        l_ab,
        l_ac,
        l_bc,
        l_bc_forwarded,
        verdict: LdpVerdict::Consistent,
    };

    let checks = [
        (Hop::AB, &transcript.l_ab, row_b, m_ab),
        (Hop::AC, &transcript.l_ac, row_c, m_ac),
        (Hop::BC, &transcript.l_bc, row_c, m_bc),
        (Hop::BCForwarded, &transcript.l_bc_forwarded, row_c, m_bc),
    ];
    let rejection = checks.into_iter().find_map(|(hop, list, receiver, symbol)| {
        match ldp_validate_with(list, receiver, symbol as usize, l, threshold) {
            Validation::Reject(reason) => Some(LdpVerdict::RejectMessage { hop, reason }),
            Validation::Accept => None,
        }
    });
    if let Some(verdict) = rejection {
        transcript.verdict = verdict;
        return Ok(transcript);
    }

    if m_ac != m_bc {
        let own = &transcript.l_bc;
        let fwd = &transcript.l_bc_forwarded;
        let disjoint = sorted_disjoint(own, fwd);
        let combined = own.len() + fwd.len();
        transcript.verdict = if disjoint && combined as f64 >= combined_threshold(l) {
            LdpVerdict::ALies
        } else {
            LdpVerdict::BLies
        };
    }
    Ok(transcript)
}

fn sorted_disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}
