//! Distribute-and-test: sacrifice a random subset of positions to check, by
//! public comparison, that every tested column is a permutation.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::table::{generate_table_capped, SequenceTable, TableSource};
use super::TRANSCRIPT_SCHEMA_VERSION;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TamperModel {
    #[default]
    None,
    /// Each column is independently corrupted with probability `fraction`; a
    /// corrupted column has one party's symbol overwritten by another's.
    CorruptColumns { fraction: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DtestOutcome {
    /// The tested positions were all permutations; the rest of the table is usable.
    Accept { usable: SequenceTable },
    /// `column` at `position` failed the check.
    Abort { position: usize, column: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DtestReport {
    pub schema_version: u32,
    pub rounds: usize,
    pub tested: usize,
    pub corrupted: usize,
    pub outcome: DtestOutcome,
}

impl DtestReport {
    pub fn accepted(&self) -> bool {
        matches!(self.outcome, DtestOutcome::Accept { .. })
    }
}

pub fn distribute_and_test(
    num_parties: usize,
    rounds: usize,
    test_fraction: f64,
    tamper: TamperModel,
    source: TableSource,
    rng: &mut SeededRng,
) -> Result<DtestReport> {
    distribute_and_test_capped(num_parties, rounds, test_fraction, tamper, source, &Caps::default(), rng)
}

pub fn distribute_and_test_capped(
    num_parties: usize,
    rounds: usize,
    test_fraction: f64,
    tamper: TamperModel,
    source: TableSource,
    caps: &Caps,
    rng: &mut SeededRng,
) -> Result<DtestReport> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::invalid(format!("test fraction must lie in (0, 1), got {test_fraction}")));
    }
    if let TamperModel::CorruptColumns { fraction } = tamper {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::invalid(format!("tamper fraction must lie in [0, 1], got {fraction}")));
        }
    }
    let mut table = generate_table_capped(num_parties, rounds, source, caps, rng)?;

    let mut corrupted = 0;
    if let TamperModel::CorruptColumns { fraction } = tamper {
        for j in 0..rounds {
            if rng.random_bool(fraction) {
                let mut col = table.column(j);
                let k = rng.random_range(0..num_parties);
                col[k] = col[(k + 1) % num_parties];
                table.set_column(j, &col);
                corrupted += 1;
            }
        }
    }

    let tested = ((test_fraction * rounds as f64).round() as usize).clamp(1, rounds);
    let mut positions = sample(rng, rounds, tested).into_vec();
    positions.sort_unstable();

    let failure = positions
        .iter()
        .map(|&p| (p, table.column(p)))
        .find(|(_, col)| crate::qcore::Permutation::new(col.clone()).is_err());
    let outcome = match failure {
        Some((position, column)) => DtestOutcome::Abort { position, column },
        None => DtestOutcome::Accept {
            usable: table.without_positions(&positions),
        },
    };
    Ok(DtestReport {
        schema_version: TRANSCRIPT_SCHEMA_VERSION,
        rounds,
        tested,
        corrupted,
        outcome,
    })
}
