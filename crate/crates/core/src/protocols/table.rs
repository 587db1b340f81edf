use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::measurement::JointSampler;
use crate::qcore::{make_nn_supersinglet_capped, Direction, Permutation};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableSource {
    /// Collective measurements of the `N`-level antisymmetric state.
    Quantum,
    /// Uniform permutations drawn directly.
    Direct,
}

/// `rows[k][j]` is party `k`'s symbol at position `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    num_parties: usize,
    length: usize,
    rows: Vec<Vec<usize>>,
}

impl SequenceTable {
    /// Checks shape and symbol range only; columns need not be permutations
    /// (tampered tables are representable).
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::invalid("a table needs at least two parties"));
        }
        let length = rows[0].len();
        if rows.iter().any(|r| r.len() != length) {
            return Err(Error::invalid("all rows must have the same length"));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(Error::invalid(format!("symbols must lie in 0..{n}")));
        }
        Ok(SequenceTable {
            num_parties: n,
            length,
            rows,
        })
    }

    pub fn from_columns(num_parties: usize, columns: &[Vec<usize>]) -> Result<Self> {
        let mut rows = vec![Vec::with_capacity(columns.len()); num_parties];
        for col in columns {
            if col.len() != num_parties {
                return Err(Error::invalid("column length differs from party count"));
            }
            for (row, &x) in rows.iter_mut().zip(col) {
                row.push(x);
            }
        }
        SequenceTable::new(rows)
    }

    pub fn num_parties(&self) -> usize {
        self.num_parties
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, party: usize) -> &[usize] {
        &self.rows[party]
    }

    pub fn column(&self, position: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[position]).collect()
    }

    pub fn set_column(&mut self, position: usize, column: &[usize]) {
        for (row, &x) in self.rows.iter_mut().zip(column) {
            row[position] = x;
        }
    }

    pub fn first_invalid_column(&self) -> Option<usize> {
        (0..self.length).find(|&j| Permutation::new(self.column(j)).is_err())
    }

    pub fn columns_are_permutations(&self) -> bool {
        self.first_invalid_column().is_none()
    }

    /// Copy of the table without the given positions.
    pub fn without_positions(&self, positions: &[usize]) -> SequenceTable {
        let mut drop = vec![false; self.length];
        for &p in positions {
            if p < self.length {
                drop[p] = true;
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().zip(&drop).filter(|(_, &d)| !d).map(|(&x, _)| x).collect())
            .collect::<Vec<Vec<usize>>>();
        SequenceTable {
            num_parties: self.num_parties,
            length: rows[0].len(),
            rows,
        }
    }

    /// Counts of each column permutation, indexed by lexicographic rank.
    /// Columns that are not permutations are skipped.
    pub fn column_histogram(&self) -> Vec<u64> {
        let mut counts = vec![0u64; crate::qcore::factorial(self.num_parties)];
        for j in 0..self.length {
            if let Ok(p) = Permutation::new(self.column(j)) {
                counts[p.lex_rank()] += 1;
            }
        }
        counts
    }
}

pub fn generate_table(n: usize, length: usize, source: TableSource, rng: &mut SeededRng) -> Result<SequenceTable> {
    generate_table_capped(n, length, source, &Caps::default(), rng)
}

/// `length` positions for `n` parties.
///
/// The quantum source announces one uniformly random measurement direction per
/// table and samples `length` independent joint outcomes along it.
pub fn generate_table_capped(
    n: usize,
    length: usize,
    source: TableSource,
    caps: &Caps,
    rng: &mut SeededRng,
) -> Result<SequenceTable> {
    if n < 2 {
        return Err(Error::invalid(format!("need at least two parties, got {n}")));
    }
    if length < 1 {
        return Err(Error::invalid("table length must be at least 1"));
    }
    let mut columns = Vec::with_capacity(length);
    match source {
        TableSource::Quantum => {
            let state = make_nn_supersinglet_capped(n, caps).map_err(|e| match e {
                Error::ResourceLimit { what, required, cap, .. } => Error::ResourceLimit {
                    what,
                    required,
                    cap,
                    hint: "; use source=direct for larger N".into(),
                },
                other => other,
            })?;
            let direction = Direction::random(rng);
            let sampler = JointSampler::new(&state, direction)?;
            for _ in 0..length {
                columns.push(sampler.sample(rng).outcomes);
            }
        }
        TableSource::Direct => {
            for _ in 0..length {
                let mut col: Vec<usize> = (0..n).collect();
                col.shuffle(rng);
                columns.push(col);
            }
        }
    }
    SequenceTable::from_columns(n, &columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{chi_square_gof, chi_square_two_sample};

    #[test]
    fn quantum_columns_are_permutations() {
        let mut rng = SeededRng::new(5);
        let t = generate_table(3, 1000, TableSource::Quantum, &mut rng).unwrap();
        assert_eq!(t.len(), 1000);
        assert!(t.columns_are_permutations());
    }

    #[test]
    fn quantum_table_is_uniform_and_matches_direct() {
        let mut rng = SeededRng::new(77);
        let q = generate_table(3, 10_000, TableSource::Quantum, &mut rng).unwrap();
        let d = generate_table(3, 10_000, TableSource::Direct, &mut rng).unwrap();
        let hq = q.column_histogram();
        let hd = d.column_histogram();
        assert!(chi_square_gof(&hq, &[1.0 / 6.0; 6]).unwrap().passes(0.001));
        assert!(chi_square_gof(&hd, &[1.0 / 6.0; 6]).unwrap().passes(0.001));
        assert!(chi_square_two_sample(&hq, &hd).unwrap().passes(0.001));
    }

    #[test]
    fn cap_error_suggests_direct() {
        let mut rng = SeededRng::new(1);
        let err = generate_table(9, 10, TableSource::Quantum, &mut rng).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
        assert!(err.to_string().contains("source=direct"));
        let t = generate_table(9, 10, TableSource::Direct, &mut rng).unwrap();
        assert!(t.columns_are_permutations());
    }

    #[test]
    fn shape_validation() {
        assert!(SequenceTable::new(vec![vec![0, 1], vec![1]]).is_err());
        assert!(SequenceTable::new(vec![vec![0, 2], vec![1, 0]]).is_err());
        let t = SequenceTable::new(vec![vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(t.first_invalid_column(), Some(1));
        assert_eq!(t.without_positions(&[1]).len(), 1);
    }
}
