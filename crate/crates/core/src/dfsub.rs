//! Decoherence-free subspaces of `N` qubits spanned by products of pair singlets.
//!
//! The spin-zero sector of `N` qubits has dimension given by the Catalan
//! number `C_{N/2}`; a spanning set is obtained by pairing the sites along
//! every noncrossing perfect matching and placing a two-qubit singlet on
//! each pair.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::qcore::{resource_error, StateVector};

/// Relative singular-value cutoff for the Gram rank.
pub const RANK_TOL: f64 = 1e-8;

/// A perfect matching of `0..N`, pairs `(i, j)` with `i < j`, sorted by `i`.
pub type Matching = Vec<(usize, usize)>;

fn check_even(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!("N must be even and at least 2, got {n}")));
    }
    Ok(())
}

/// `N! / ((N/2)! (N/2+1)!)`, exactly.
pub fn df_dimension(n: usize) -> Result<BigUint> {
    check_even(n)?;
    let half = n / 2;
    let mut binom = BigUint::one();
    for k in 1..=half {
        binom = binom * BigUint::from(n - half + k) / BigUint::from(k);
    }
    Ok(binom / BigUint::from(half + 1))
}

/// All noncrossing perfect matchings of `N` points on a line.
pub fn noncrossing_pairings(n: usize) -> Result<Vec<Matching>> {
    check_even(n)?;
    let mut out = Vec::new();
    for mut m in pairings_of(0, n) {
        m.sort_unstable();
        out.push(m);
    }
    Ok(out)
}

fn pairings_of(lo: usize, hi: usize) -> Vec<Matching> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in (lo + 1..hi).step_by(2) {
        let inner = pairings_of(lo + 1, j);
        let outer = pairings_of(j + 1, hi);
        for a in &inner {
            for b in &outer {
                let mut m = Vec::with_capacity((hi - lo) / 2);
                m.push((lo, j));
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.push(m);
            }
        }
    }
    out
}

/// `⊗_{(i,j)} (|0_i 1_j⟩ - |1_i 0_j⟩)/√2` on `n` qubits.
pub fn singlet_product(n: usize, matching: &[(usize, usize)]) -> Result<StateVector> {
    let mut seen = vec![false; n];
    for &(i, j) in matching {
        if i >= j || j >= n || seen[i] || seen[j] {
            return Err(Error::invalid(format!("{matching:?} is not a perfect matching of 0..{n}")));
        }
        seen[i] = true;
        seen[j] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::invalid(format!("{matching:?} does not cover 0..{n}")));
    }
    let bit = |site: usize| 1usize << (n - 1 - site);
    let amp = 0.5f64.powf(matching.len() as f64 / 2.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for choice in 0usize..(1 << matching.len()) {
        let mut idx = 0;
        let mut sign = 1.0;
        for (p, &(i, j)) in matching.iter().enumerate() {
            if choice & (1 << p) == 0 {
                idx |= bit(j);
            } else {
                idx |= bit(i);
                sign = -sign;
            }
        }
        amps[idx] = Complex64::new(sign * amp, 0.0);
    }
    StateVector::new(n, 2, amps)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfBasis {
    #[serde(rename = "N")]
    pub n: usize,
    pub matchings: Vec<Matching>,
    pub vectors: Vec<StateVector>,
    pub rank: usize,
}

impl DfBasis {
    /// Distance from `state` to its least-squares projection onto the span.
    pub fn projection_residual(&self, state: &StateVector) -> Result<f64> {
        if state.num_sites() != self.n || state.local_dim() != 2 {
            return Err(Error::invalid("state does not live on the basis' qubits"));
        }
        let dim = 1usize << self.n;
        let b = DMatrix::from_fn(dim, self.vectors.len(), |r, c| self.vectors[c].amplitudes()[r]);
        let target = DVector::from_column_slice(state.amplitudes());
        let svd = b.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let coeffs = svd
            .solve(&target, RANK_TOL * smax)
            .map_err(|e| Error::Internal(e.to_string()))?;
        Ok((b * coeffs - target).norm())
    }
}

/// `⟨v_a|v_b⟩` for every pair, rows assembled in parallel.
pub fn gram_matrix(vectors: &[StateVector]) -> Result<DMatrix<f64>> {
    let k = vectors.len();
    let rows: Vec<Vec<f64>> = vectors
        .par_iter()
        .map(|a| vectors.iter().map(|b| a.inner(b).map(|z| z.re)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_fn(k, k, |r, c| rows[r][c]))
}

/// Number of singular values above `tol` times the largest.
pub fn numerical_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    let sv = m.singular_values();
    let smax = sv.max();
    if smax <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * smax).count()
}

pub fn df_basis(n: usize) -> Result<DfBasis> {
    df_basis_capped(n, &Caps::default())
}

pub fn df_basis_capped(n: usize, caps: &Caps) -> Result<DfBasis> {
    check_even(n)?;
    if n > caps.df_max {
        return Err(resource_error(
            "decoherence-free basis",
            2,
            n,
            caps.df_max,
            "; use the df efficiency report for large N",
        ));
    }
    let matchings = noncrossing_pairings(n)?;
    let vectors = matchings
        .iter()
        .map(|m| singlet_product(n, m))
        .collect::<Result<Vec<_>>>()?;
    let rank = numerical_rank(&gram_matrix(&vectors)?, RANK_TOL);
    Ok(DfBasis {
        n,
        matchings,
        vectors,
        rank,
    })
}

/// `log2` of an arbitrary-size integer, from its top 64 bits.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return x.to_u64().expect("fits").to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("fits") as f64;
    top.log2() + shift as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "decimal")]
    pub dimension: BigUint,
    pub encoded_qubits: f64,
    pub efficiency: f64,
    /// `N - 1.5·log2 N`.
    pub asymptotic: f64,
}

pub fn encoding_efficiency(n: usize) -> Result<EfficiencyReport> {
    let dimension = df_dimension(n)?;
    let encoded_qubits = log2_biguint(&dimension);
    Ok(EfficiencyReport {
        n,
        encoded_qubits,
        efficiency: encoded_qubits / n as f64,
        asymptotic: n as f64 - 1.5 * (n as f64).log2(),
        dimension,
    })
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom("not a decimal integer"))
    }
}
