use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::operator::LocalOperator;
use crate::error::{Error, Result};

/// Dense amplitude vector over `N` sites of local dimension `d`.
///
/// Index `i` enumerates kets `|i_0 i_1 … i_{N-1}⟩` in row-major order with
/// site 0 as the most significant digit. Local basis index `i` is the spin
/// state with `m = (d-1)/2 - i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateDoc", into = "StateDoc")]
pub struct StateVector {
    num_sites: usize,
    local_dim: usize,
    amplitudes: Vec<Complex64>,
}

/// JSON interchange form: `{num_sites, local_dim, amplitudes: [[re, im], …]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateDoc {
    pub num_sites: usize,
    pub local_dim: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl TryFrom<StateDoc> for StateVector {
    type Error = Error;
    fn try_from(doc: StateDoc) -> Result<Self> {
        let amps = doc
            .amplitudes
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        StateVector::new(doc.num_sites, doc.local_dim, amps)
    }
}

impl From<StateVector> for StateDoc {
    fn from(s: StateVector) -> Self {
        StateDoc {
            num_sites: s.num_sites,
            local_dim: s.local_dim,
            amplitudes: s.amplitudes.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

pub(crate) fn checked_space_dim(local_dim: usize, num_sites: usize) -> Option<usize> {
    let mut total: usize = 1;
    for _ in 0..num_sites {
        total = total.checked_mul(local_dim)?;
    }
    Some(total)
}

impl StateVector {
    pub fn new(num_sites: usize, local_dim: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if local_dim < 1 || num_sites < 1 {
            return Err(Error::invalid("state needs at least one site of dimension >= 1"));
        }
        let expected = checked_space_dim(local_dim, num_sites)
            .ok_or_else(|| Error::invalid("d^N overflows usize"))?;
        if amplitudes.len() != expected {
            return Err(Error::invalid(format!(
                "expected {expected} amplitudes for d={local_dim}, N={num_sites}, got {}",
                amplitudes.len()
            )));
        }
        Ok(StateVector {
            num_sites,
            local_dim,
            amplitudes,
        })
    }

    pub fn zeros(num_sites: usize, local_dim: usize) -> Result<Self> {
        let len = checked_space_dim(local_dim, num_sites)
            .ok_or_else(|| Error::invalid("d^N overflows usize"))?;
        StateVector::new(num_sites, local_dim, vec![Complex64::new(0.0, 0.0); len])
    }

    /// Product basis ket `|digits[0] digits[1] …⟩`.
    pub fn basis(local_dim: usize, digits: &[usize]) -> Result<Self> {
        let mut s = StateVector::zeros(digits.len(), local_dim)?;
        let idx = s.index_of(digits)?;
        s.amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.num_sites {
            return Err(Error::invalid(format!(
                "ket has {} digits, state has {} sites",
                digits.len(),
                self.num_sites
            )));
        }
        digits.iter().try_fold(0usize, |acc, &x| {
            if x >= self.local_dim {
                Err(Error::invalid(format!("digit {x} >= d={}", self.local_dim)))
            } else {
                Ok(acc * self.local_dim + x)
            }
        })
    }

    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.num_sites];
        for slot in digits.iter_mut().rev() {
            *slot = index % self.local_dim;
            index /= self.local_dim;
        }
        digits
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<Complex64> {
        Ok(self.amplitudes[self.index_of(digits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_space(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`; 1 for states equal up to a global phase.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// Default equality: global-phase insensitive, `|⟨a|b⟩| ≥ 1 - tol`.
    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.fidelity(other).map(|f| f >= 1.0 - tol).unwrap_or(false)
    }

    /// Largest amplitude-wise deviation; the strict comparison mode.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        self.check_same_space(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn scale(&self, c: Complex64) -> StateVector {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: Complex64, other: &StateVector) -> Result<StateVector> {
        self.check_same_space(other)?;
        Ok(StateVector {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + c * b)
                .collect(),
            ..self.clone()
        })
    }

    pub fn normalized(&self) -> Result<StateVector> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::invalid("cannot normalize the zero vector"));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// Exchanges the contents of sites `a` and `b`.
    pub fn swap_sites(&self, a: usize, b: usize) -> Result<StateVector> {
        if a >= self.num_sites || b >= self.num_sites {
            return Err(Error::invalid("site index out of range"));
        }
        let mut out = self.clone();
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let mut digits = self.digits_of(idx);
            digits.swap(a, b);
            let j = self.index_of(&digits)?;
            out.amplitudes[j] = *amp;
        }
        Ok(out)
    }

    /// Applies `op` to a single site.
    pub fn apply_local(&self, site: usize, op: &LocalOperator) -> Result<StateVector> {
        let mut out = self.clone();
        out.apply_local_in_place(site, op)?;
        Ok(out)
    }

    pub(crate) fn apply_local_in_place(&mut self, site: usize, op: &LocalOperator) -> Result<()> {
        let d = self.local_dim;
        if op.dim() != d {
            return Err(Error::invalid(format!(
                "operator dimension {} does not match local dimension {d}",
                op.dim()
            )));
        }
        if site >= self.num_sites {
            return Err(Error::invalid(format!("site {site} out of range")));
        }
        let inner = d.pow((self.num_sites - 1 - site) as u32);
        let block = inner * d;
        let m = op.matrix();
        let mut scratch = vec![Complex64::new(0.0, 0.0); d];
        for chunk in self.amplitudes.chunks_mut(block) {
            for r in 0..inner {
                for (i, s) in scratch.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..d {
                        acc += m[(i, j)] * chunk[j * inner + r];
                    }
                    *s = acc;
                }
                for (i, s) in scratch.iter().enumerate() {
                    chunk[i * inner + r] = *s;
                }
            }
        }
        Ok(())
    }

    /// Applies `ops[k]` to site `k` for every site.
    pub fn apply_product(&self, ops: &[LocalOperator]) -> Result<StateVector> {
        if ops.len() != self.num_sites {
            return Err(Error::invalid(format!(
                "{} operators for {} sites",
                ops.len(),
                self.num_sites
            )));
        }
        let mut out = self.clone();
        for (k, op) in ops.iter().enumerate() {
            out.apply_local_in_place(k, op)?;
        }
        Ok(out)
    }

    /// `Σ_k op^(k) |self⟩`, the collective (summed) action of a one-site operator.
    pub fn apply_sum_local(&self, op: &LocalOperator) -> Result<StateVector> {
        let mut acc = StateVector::zeros(self.num_sites, self.local_dim)?;
        for k in 0..self.num_sites {
            let term = self.apply_local(k, op)?;
            for (a, t) in acc.amplitudes.iter_mut().zip(term.amplitudes) {
                *a += t;
            }
        }
        Ok(acc)
    }

    fn check_same_space(&self, other: &StateVector) -> Result<()> {
        if self.num_sites != other.num_sites || self.local_dim != other.local_dim {
            return Err(Error::invalid(format!(
                "state spaces differ: (N={}, d={}) vs (N={}, d={})",
                self.num_sites, self.local_dim, other.num_sites, other.local_dim
            )));
        }
        Ok(())
    }
}
