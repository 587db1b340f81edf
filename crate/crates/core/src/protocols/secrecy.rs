use crate::qcore::Permutation;

/// Every column consistent with the `(party, symbol)` pairs a coalition knows.
///
/// Columns are uniform over permutations, so each returned completion is
/// equally likely from the coalition's point of view.
pub fn consistent_completions(n: usize, revealed: &[(usize, usize)]) -> Vec<Permutation> {
    Permutation::all(n)
        .into_iter()
        .filter(|p| revealed.iter().all(|&(party, sym)| p.images().get(party) == Some(&sym)))
        .collect()
}
