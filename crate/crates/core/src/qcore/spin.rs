//! Spin-`s` angular momentum matrices, rotations and measurement directions.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::operator::LocalOperator;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A direction on the unit sphere given by polar angle `theta` (from +z) and azimuth `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub const Z: Direction = Direction { theta: 0.0, phi: 0.0 };

    pub fn new(theta: f64, phi: f64) -> Self {
        Direction { theta, phi }
    }

    /// Direction in the x–z plane at angle `alpha` from +z.
    pub fn planar(alpha: f64) -> Self {
        Direction { theta: alpha, phi: 0.0 }
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Uniform on the sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        Direction { theta: u.acos(), phi }
    }
}

impl From<[f64; 2]> for Direction {
    fn from([theta, phi]: [f64; 2]) -> Self {
        Direction { theta, phi }
    }
}

impl From<Direction> for [f64; 2] {
    fn from(d: Direction) -> Self {
        [d.theta, d.phi]
    }
}

#[derive(Debug, Clone)]
pub struct SpinMatrices {
    pub x: LocalOperator,
    pub y: LocalOperator,
    pub z: LocalOperator,
}

impl SpinMatrices {
    /// `n·S` for a (not necessarily normalized) 3-vector.
    pub fn along(&self, n: [f64; 3]) -> LocalOperator {
        let c = |v: f64| Complex64::new(v, 0.0);
        self.x.scale(c(n[0])).add(&self.y.scale(c(n[1]))).add(&self.z.scale(c(n[2])))
    }
}

/// Spin matrices for `s = (d-1)/2` in the basis where index `i` has `m = s - i`.
pub fn spin_matrices(d: usize) -> Result<SpinMatrices> {
    if d < 2 {
        return Err(Error::invalid(format!("local dimension must be >= 2, got {d}")));
    }
    let s = (d as f64 - 1.0) / 2.0;
    let m = |i: usize| s - i as f64;
    let mut raise = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        // S+ |m⟩ = sqrt(s(s+1) - m(m+1)) |m+1⟩, and |m+1⟩ sits at index i-1
        let mi = m(i);
        raise[(i - 1, i)] = Complex64::new((s * (s + 1.0) - mi * (mi + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.adjoint();
    let x = (&raise + &lower) * Complex64::new(0.5, 0.0);
    let y = (&raise - &lower) * (-0.5 * I);
    let z = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        (0..d).map(|i| Complex64::new(m(i), 0.0)),
    ));
    Ok(SpinMatrices {
        x: LocalOperator::from_matrix(x)?,
        y: LocalOperator::from_matrix(y)?,
        z: LocalOperator::from_matrix(z)?,
    })
}

/// `exp(-i·f(H))` for Hermitian `H`, via its eigendecomposition.
fn hermitian_exp(h: &LocalOperator, scale: f64) -> Result<LocalOperator> {
    let eig = SymmetricEigen::new(h.matrix().clone());
    let v = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        h.dim(),
        eig.eigenvalues.iter().map(|&l| (-I * scale * l).exp()),
    ));
    LocalOperator::from_matrix(v * phases * v.adjoint())
}

/// `exp(-i·angle·(axis·S))` for a unit `axis`.
pub fn rotation_operator(d: usize, axis: [f64; 3], angle: f64) -> Result<LocalOperator> {
    let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::invalid(format!("rotation axis must be a unit vector, |axis| = {norm}")));
    }
    let spin = spin_matrices(d)?;
    hermitian_exp(&spin.along(axis), angle)
}

/// `R_z(phi)·R_y(theta)`: maps the z-basis ket with spin `m` onto the eigenket
/// of `n·S` with the same `m`, where `n` is `dir`.
pub fn basis_rotation(d: usize, dir: Direction) -> Result<LocalOperator> {
    let ry = rotation_operator(d, [0.0, 1.0, 0.0], dir.theta)?;
    let s = (d as f64 - 1.0) / 2.0;
    let rz = LocalOperator::diagonal(
        &(0..d)
            .map(|i| (-I * dir.phi * (s - i as f64)).exp())
            .collect::<Vec<_>>(),
    );
    Ok(rz.mul(&ry))
}

/// Haar-random `d × d` unitary (QR of a complex Ginibre matrix with phase fix).
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> LocalOperator {
    let g = DMatrix::<Complex64>::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    LocalOperator(q)
}

/// Haar-random unitary rescaled to determinant 1.
pub fn random_special_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> LocalOperator {
    let u = random_unitary(d, rng);
    let det = u.determinant();
    let fix = Complex64::from_polar(1.0, -det.arg() / d as f64);
    u.scale(fix)
}

/// Rotation about a uniformly random axis by a uniform angle in `[0, 2π)`.
pub fn random_rotation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> LocalOperator {
    let dir = Direction::random(rng);
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    rotation_operator(d, dir.unit_vector(), angle).expect("unit axis by construction")
}
