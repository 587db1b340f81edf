use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{0, …, n-1}` stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::invalid(format!(
                    "permutation entry {x} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::invalid(format!("permutation entry {x} repeated")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(-1)^t` where `t` is the number of transpositions needed to sort the
    /// images. A cycle of length `k` contributes `k - 1` transpositions.
    pub fn sign(&self) -> i32 {
        let n = self.0.len();
        let mut visited = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.0[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of `n` elements in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Position of this permutation in the lexicographic order of [`Permutation::all`].
    pub fn lex_rank(&self) -> usize {
        let n = self.0.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Result<Self> {
        let total = factorial(n);
        if rank >= total {
            return Err(Error::invalid(format!("rank {rank} >= {n}!")));
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let block = factorial(n - 1 - i);
            let k = rank / block;
            rank %= block;
            images.push(pool.remove(k));
        }
        Ok(Permutation(images))
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Convenience wrapper: sign of a raw image list.
pub fn permutation_sign(images: &[usize]) -> Result<i32> {
    Ok(Permutation::new(images.to_vec())?.sign())
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inversions(p: &[usize]) -> usize {
        let mut c = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn signs_from_expansions() {
        assert_eq!(permutation_sign(&[0, 1, 2]).unwrap(), 1);
        assert_eq!(permutation_sign(&[0, 2, 1]).unwrap(), -1);
        assert_eq!(permutation_sign(&[2, 1, 3, 0]).unwrap(), 1);
    }

    #[test]
    fn malformed() {
        assert!(matches!(permutation_sign(&[0, 0, 1]), Err(Error::InvalidInput(_))));
        assert!(matches!(permutation_sign(&[0, 3, 1]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        for (r, p) in all.iter().enumerate() {
            assert_eq!(p.lex_rank(), r);
            assert_eq!(&Permutation::from_lex_rank(4, r).unwrap(), p);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Permutation::all(1).len(), 1);
    }

    proptest! {
        #[test]
        fn cycle_sign_matches_inversion_parity(rank in 0usize..5040) {
            let p = Permutation::from_lex_rank(7, rank).unwrap();
            let expected = if inversions(p.images()).is_multiple_of(2) { 1 } else { -1 };
            prop_assert_eq!(p.sign(), expected);
        }
    }
}
