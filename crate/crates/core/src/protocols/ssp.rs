//! Secret sharing: the key is the dealer's row, recovered from the others' declarations.
//!
//! Each round the agents (parties `1..N`) publicly declare their symbols in a
//! given order. In an honest round the `N-1` declared symbols are distinct and
//! the one missing symbol is the dealer's. A false declaration necessarily
//! names a symbol held by some party whose symbol is still hidden; if that
//! party is honest (the dealer included) it sees the clash and stops the
//! process.

use rand::seq::IndexedRandom;
use serde::{Deserialize, Serialize};

use super::strategy::Strategy;
use super::table::SequenceTable;
use super::TRANSCRIPT_SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "order", rename_all = "lowercase")]
pub enum DeclarationOrder {
    /// Same order every round.
    Fixed(Vec<usize>),
    /// Round `r` uses the base order rotated left by `r`, so the last declarer changes each round.
    Rotating(Vec<usize>),
}

impl DeclarationOrder {
    pub fn for_round(&self, round: usize) -> Vec<usize> {
        match self {
            DeclarationOrder::Fixed(o) => o.clone(),
            DeclarationOrder::Rotating(o) => {
                let mut v = o.clone();
                if !v.is_empty() {
                    let k = round % v.len();
                    v.rotate_left(k);
                }
                v
            }
        }
    }

    fn base(&self) -> &[usize] {
        match self {
            DeclarationOrder::Fixed(o) | DeclarationOrder::Rotating(o) => o,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Declaration {
    pub party: usize,
    pub symbol: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SspOutcome {
    Recovered { digit: usize },
    /// `detector` held `symbol`, which `liar` declared.
    Aborted { liar: usize, detector: usize, symbol: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SspRound {
    pub round: usize,
    pub order: Vec<usize>,
    pub declarations: Vec<Declaration>,
    pub outcome: SspOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SspReport {
    pub schema_version: u32,
    pub rounds: Vec<SspRound>,
    /// Recovered key digit per round; `None` where the round was stopped.
    pub key: Vec<Option<usize>>,
    pub aborted: usize,
    pub detection_rate: f64,
}

fn validate_order(n: usize, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n - 1 {
        return Err(Error::invalid(format!(
            "declaration order must list the {} agents exactly once",
            n - 1
        )));
    }
    for &p in order {
        if p == 0 || p >= n {
            return Err(Error::invalid(format!("party {p} cannot declare (agents are 1..{n})")));
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::invalid(format!("party {p} appears twice in the declaration order")));
        }
    }
    Ok(())
}

/// Runs every position of `table` as one round.
pub fn ssp_run(
    table: &SequenceTable,
    behaviors: &[Strategy],
    order: &DeclarationOrder,
    rng: &mut SeededRng,
) -> Result<SspReport> {
    let n = table.num_parties();
    if behaviors.len() != n {
        return Err(Error::invalid(format!("{} behaviours for {n} parties", behaviors.len())));
    }
    if !behaviors[0].is_honest() {
        return Err(Error::invalid("the dealer (party 0) is honest by assumption"));
    }
    if let Some(b) = behaviors
        .iter()
        .find(|b| !matches!(b, Strategy::Honest | Strategy::DeclareFalseShare))
    {
        return Err(Error::invalid(format!("strategy {b:?} does not apply to secret sharing")));
    }
    validate_order(n, order.base())?;
    if table.is_empty() {
        return Err(Error::invalid("need at least one round"));
    }

    let mut rounds = Vec::with_capacity(table.len());
    for j in 0..table.len() {
        let column = table.column(j);
        let order = order.for_round(j);
        rounds.push(run_round(j, &column, behaviors, order, rng));
    }
    let key: Vec<Option<usize>> = rounds
        .iter()
        .map(|r| match r.outcome {
            SspOutcome::Recovered { digit } => Some(digit),
            SspOutcome::Aborted { .. } => None,
        })
        .collect();
    let aborted = key.iter().filter(|k| k.is_none()).count();
    Ok(SspReport {
        schema_version: TRANSCRIPT_SCHEMA_VERSION,
        detection_rate: aborted as f64 / rounds.len() as f64,
        rounds,
        key,
        aborted,
    })
}

fn run_round(
    round: usize,
    column: &[usize],
    behaviors: &[Strategy],
    order: Vec<usize>,
    rng: &mut SeededRng,
) -> SspRound {
    let n = column.len();
    let mut declared_symbol = vec![false; n];
    let mut declarations = Vec::with_capacity(n - 1);
    for &party in &order {
        let own = column[party];
        let symbol = match behaviors[party] {
            Strategy::DeclareFalseShare => {
                let options: Vec<usize> = (0..n).filter(|&s| s != own && !declared_symbol[s]).collect();
                *options.choose(rng).unwrap_or(&own)
            }
            _ => own,
        };
        declarations.push(Declaration { party, symbol });
        if symbol != own {
            let holder = column.iter().position(|&x| x == symbol).expect("column is a permutation");
            if behaviors[holder].is_honest() {
                return SspRound {
                    round,
                    order,
                    declarations,
                    outcome: SspOutcome::Aborted {
                        liar: party,
                        detector: holder,
                        symbol,
                    },
                };
            }
        }
        declared_symbol[symbol] = true;
    }
    let digit = (0..n).find(|&s| !declared_symbol[s]).unwrap_or(column[0]);
    SspRound {
        round,
        order,
        declarations,
        outcome: SspOutcome::Recovered { digit },
    }
}
