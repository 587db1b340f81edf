use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense `d × d` complex matrix acting on one site.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator(pub(crate) DMatrix<Complex64>);

impl LocalOperator {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::invalid(format!(
                "local operator must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(LocalOperator(m))
    }

    /// Row-major entries.
    pub fn from_rows(d: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != d * d {
            return Err(Error::invalid("entry count is not d*d"));
        }
        Self::from_matrix(DMatrix::from_row_slice(d, d, entries))
    }

    pub fn identity(d: usize) -> Self {
        LocalOperator(DMatrix::identity(d, d))
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        LocalOperator(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> LocalOperator {
        LocalOperator(self.0.adjoint())
    }

    pub fn mul(&self, rhs: &LocalOperator) -> LocalOperator {
        LocalOperator(&self.0 * &rhs.0)
    }

    pub fn scale(&self, c: Complex64) -> LocalOperator {
        LocalOperator(&self.0 * c)
    }

    pub fn add(&self, rhs: &LocalOperator) -> LocalOperator {
        LocalOperator(&self.0 + &rhs.0)
    }

    pub fn sub(&self, rhs: &LocalOperator) -> LocalOperator {
        LocalOperator(&self.0 - &rhs.0)
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.determinant()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max |A - A†|`.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.0 - self.0.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max |U U† - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        (&self.0 * self.0.adjoint() - DMatrix::<Complex64>::identity(d, d))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// `A ⊗ B` with `A` on the more significant digit.
    pub fn kron(&self, rhs: &LocalOperator) -> DMatrix<Complex64> {
        self.0.kronecker(&rhs.0)
    }
}
