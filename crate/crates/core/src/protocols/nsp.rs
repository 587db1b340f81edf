use serde::{Deserialize, Serialize};

use super::table::SequenceTable;
use crate::error::{Error, Result};

/// Victim assignment for one round: party `i` takes task `victims[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NspAssignment {
    pub round: usize,
    pub victims: Vec<usize>,
    /// Parties drawn their own task; they sit this round out and join another.
    pub self_assigned: Vec<usize>,
}

impl NspAssignment {
    pub fn is_bijection(&self) -> bool {
        crate::qcore::Permutation::new(self.victims.clone()).is_ok()
    }
}

pub fn nsp_assign(table: &SequenceTable, round: usize) -> Result<NspAssignment> {
    if round >= table.len() {
        return Err(Error::invalid(format!(
            "round {round} out of range for a table of length {}",
            table.len()
        )));
    }
    let victims = table.column(round);
    let self_assigned = victims
        .iter()
        .enumerate()
        .filter(|(i, &v)| *i == v)
        .map(|(i, _)| i)
        .collect();
    Ok(NspAssignment {
        round,
        victims,
        self_assigned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn read_off() {
        let t = SequenceTable::from_columns(3, &[vec![1, 0, 2]]).unwrap();
        let a = nsp_assign(&t, 0).unwrap();
        assert_eq!(a.victims, vec![1, 0, 2]);
        assert_eq!(a.self_assigned, vec![2]);
        assert!(a.is_bijection());
        assert!(nsp_assign(&t, 1).is_err());
    }
}
