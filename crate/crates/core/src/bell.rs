//! Dichotomic spin observables, `N`-party correlations and the four-term
//! CHSH-type functional.
//!
//! A Peres observable along `n` measures `n·S` and reports `(-1)^(s-m)`: `+1`
//! for `m = s, s-2, …` and `-1` for `m = s-1, s-3, …`. On the `N`-level
//! antisymmetric state the correlation with `N-m` parties on one setting and
//! `m` on another depends only on the angle between the two settings.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{basis_rotation, Direction, LocalOperator, StateVector};

/// Below this `|sin θ|` the ratio `sin(kθ)/sin θ` is replaced by its limit.
pub const SINGULAR_SIN: f64 = 1e-8;
/// Largest tolerated imaginary part of an expectation value.
pub const IMAG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeresObservable {
    pub direction: Direction,
    pub local_dim: usize,
}

impl PeresObservable {
    pub fn new(local_dim: usize, direction: Direction) -> Self {
        PeresObservable { direction, local_dim }
    }

    pub fn operator(&self) -> Result<LocalOperator> {
        peres_operator(self.local_dim, self.direction)
    }
}

/// `Σ_m (-1)^(s-m) |n; m⟩⟨n; m|`.
pub fn peres_operator(d: usize, direction: Direction) -> Result<LocalOperator> {
    let u = basis_rotation(d, direction)?;
    let parity = LocalOperator::diagonal(
        &(0..d)
            .map(|i| Complex64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            .collect::<Vec<_>>(),
    );
    Ok(u.mul(&parity).mul(&u.adjoint()))
}

/// One observable per party; the last `split` parties hold the second setting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSpec {
    pub observables: Vec<PeresObservable>,
    pub split: usize,
}

impl CorrelationSpec {
    pub fn new(observables: Vec<PeresObservable>, split: usize) -> Result<Self> {
        if split > observables.len() {
            return Err(Error::invalid(format!(
                "split {split} exceeds party count {}",
                observables.len()
            )));
        }
        Ok(CorrelationSpec { observables, split })
    }

    /// `N - split` parties along `first`, `split` parties along `second`.
    pub fn two_setting(n: usize, d: usize, split: usize, first: Direction, second: Direction) -> Result<Self> {
        if split > n {
            return Err(Error::invalid(format!("split {split} exceeds party count {n}")));
        }
        let observables = (0..n)
            .map(|k| PeresObservable::new(d, if k < n - split { first } else { second }))
            .collect();
        Self::new(observables, split)
    }

    /// Settings in the x–z plane at angles `alpha` and `beta` from +z.
    pub fn planar(n: usize, d: usize, split: usize, alpha: f64, beta: f64) -> Result<Self> {
        Self::two_setting(n, d, split, Direction::planar(alpha), Direction::planar(beta))
    }
}

/// `⟨ψ| O_1 ⊗ … ⊗ O_N |ψ⟩`, applying one observable per site.
pub fn correlation_bruteforce(state: &StateVector, spec: &CorrelationSpec) -> Result<f64> {
    if spec.observables.len() != state.num_sites() {
        return Err(Error::invalid(format!(
            "{} observables for {} sites",
            spec.observables.len(),
            state.num_sites()
        )));
    }
    if let Some(o) = spec.observables.iter().find(|o| o.local_dim != state.local_dim()) {
        return Err(Error::invalid(format!(
            "observable dimension {} does not match local dimension {}",
            o.local_dim,
            state.local_dim()
        )));
    }
    let ops = spec
        .observables
        .iter()
        .map(PeresObservable::operator)
        .collect::<Result<Vec<_>>>()?;
    let image = state.apply_product(&ops)?;
    let value = state.inner(&image)?;
    if value.im.abs() > IMAG_TOL {
        return Err(Error::Internal(format!(
            "expectation value has imaginary part {:e}",
            value.im
        )));
    }
    Ok(value.re)
}

fn floor_half_sign(n: usize) -> f64 {
    if (n / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `sin(kθ)/sin θ` with the removable singularity at `θ = jπ` replaced by `k·(-1)^(j(k-1))`.
pub fn sin_ratio(k: usize, theta: f64) -> f64 {
    let s = theta.sin();
    if s.abs() < SINGULAR_SIN {
        let j = (theta / PI).round() as i64;
        let odd = (j.rem_euclid(2) == 1) && k.is_multiple_of(2);
        return if odd { -(k as f64) } else { k as f64 };
    }
    (k as f64 * theta).sin() / s
}

/// `(-1)^⌊N/2⌋ (1/N) sin(Nθ)/sin θ`: one party on the second setting.
pub fn corr_closed_m1(n: usize, theta: f64) -> f64 {
    floor_half_sign(n) * sin_ratio(n, theta) / n as f64
}

/// `(-1)^⌊N/2⌋ (1/(N+2)) [1 + sin((N+1)θ)/sin θ]`: the published two-party expression.
///
/// Agrees with the quantum correlation for `N = 4` only; see [`corr_exact`].
pub fn corr_closed_m2(n: usize, theta: f64) -> f64 {
    floor_half_sign(n) * (1.0 + sin_ratio(n + 1, theta)) / (n + 2) as f64
}

/// Exact correlation for `N - m` parties on one setting and `m` on the other,
/// at relative angle `theta`, on the `N`-level antisymmetric state.
///
/// The `m` second-setting operators act on the antisymmetric state like the
/// `m`-th exterior power of the one-site rotation `R(2θ)`, whose eigenvalues
/// are `e^{2iθ(s-j)}`. The correlation is `(-1)^⌊N/2⌋ e_m / C(N, m)`, with the
/// elementary symmetric polynomial `e_m` obtained from the power sums
/// `p_k = sin(kNθ)/sin(kθ)` by Newton's identities.
pub fn corr_exact(n: usize, m: usize, theta: f64) -> f64 {
    assert!(m <= n, "split {m} exceeds party count {n}");
    let power: Vec<f64> = (1..=m).map(|k| sin_ratio(n, k as f64 * theta)).collect();
    let mut e = vec![1.0f64; m + 1];
    for j in 1..=m {
        let mut acc = 0.0;
        for i in 1..=j {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[j - i] * power[i - 1];
        }
        e[j] = acc / j as f64;
    }
    let binom = (0..m).fold(1.0f64, |b, i| b * (n - i) as f64 / (i + 1) as f64);
    floor_half_sign(n) * e[m] / binom
}

/// Which closed form supplies `E(θ)` to the CHSH functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationModel {
    /// `corr_closed_m1` / `corr_closed_m2`.
    #[default]
    Published,
    /// `corr_exact`.
    Exact,
}

fn check_split(n: usize, m: usize) -> Result<()> {
    match m {
        1 if n >= 2 => Ok(()),
        2 if n >= 4 => Ok(()),
        1 | 2 => Err(Error::invalid(format!(
            "m={m} needs N >= {}, got N={n}",
            if m == 1 { 2 } else { 4 }
        ))),
        _ => Err(Error::invalid(format!("unsupported split m={m}; expected 1 or 2"))),
    }
}

fn correlation_fn(model: CorrelationModel, n: usize, m: usize) -> impl Fn(f64) -> f64 + Sync {
    move |t| match (model, m) {
        (CorrelationModel::Published, 1) => corr_closed_m1(n, t),
        (CorrelationModel::Published, _) => corr_closed_m2(n, t),
        (CorrelationModel::Exact, _) => corr_exact(n, m, t),
    }
}

/// Planar setting angles `[A, a, B, b]`.
pub type ChshAngles = [f64; 4];

fn chsh_from<F: Fn(f64) -> f64>(e: &F, [a1, a2, b1, b2]: ChshAngles) -> f64 {
    (e(b1 - a1) + e(b2 - a1) + e(b1 - a2) - e(b2 - a2)).abs()
}

/// `|E(θ_AB) + E(θ_Ab) + E(θ_aB) - E(θ_ab)|` from the published closed forms.
pub fn chsh_value(n: usize, m: usize, angles: ChshAngles) -> Result<f64> {
    chsh_value_with(CorrelationModel::Published, n, m, angles)
}

pub fn chsh_value_with(model: CorrelationModel, n: usize, m: usize, angles: ChshAngles) -> Result<f64> {
    check_split(n, m)?;
    if angles.iter().any(|a| !a.is_finite()) {
        return Err(Error::invalid("setting angles must be finite"));
    }
    Ok(chsh_from(&correlation_fn(model, n, m), angles))
}

/// The same functional evaluated by brute force on a state, with arbitrary 3D settings.
pub fn chsh_bruteforce(
    state: &StateVector,
    m: usize,
    a_side: [Direction; 2],
    b_side: [Direction; 2],
) -> Result<f64> {
    let (n, d) = (state.num_sites(), state.local_dim());
    let e = |x: Direction, y: Direction| {
        correlation_bruteforce(state, &CorrelationSpec::two_setting(n, d, m, x, y)?)
    };
    let [a1, a2] = a_side;
    let [b1, b2] = b_side;
    Ok((e(a1, b1)? + e(a1, b2)? + e(a2, b1)? - e(a2, b2)?).abs())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationResult {
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    pub value: f64,
    /// `[A, a, B, b]`, radians; `A` is pinned at 0.
    pub angles: ChshAngles,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Points per free angle in each grid.
    pub grid_points: usize,
    /// Simplex diameter at which refinement stops, radians.
    pub angle_tol: f64,
    /// Grid optima carried into refinement.
    pub candidates: usize,
    pub max_iterations: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_points: 64,
            angle_tol: 1e-6,
            candidates: 6,
            max_iterations: 20_000,
        }
    }
}

pub fn maximize_violation(n: usize, m: usize) -> Result<ViolationResult> {
    maximize_violation_with(CorrelationModel::Published, n, m, &OptimizerConfig::default())
}

/// Grid search over the free angles `(a, B, b)` with `A = 0`, then Nelder–Mead
/// refinement of the best grid points.
///
/// Two grids are scanned: the full circle, and a window of half-width `4π/N`
/// around zero where the correlation's central lobe lives (its width shrinks
/// like `1/N`, so the full-circle grid alone misses it at large `N`).
pub fn maximize_violation_with(
    model: CorrelationModel,
    n: usize,
    m: usize,
    cfg: &OptimizerConfig,
) -> Result<ViolationResult> {
    check_split(n, m)?;
    if cfg.grid_points < 2 {
        return Err(Error::invalid("grid needs at least two points per axis"));
    }
    let e = correlation_fn(model, n, m);
    let objective = |x: &[f64; 3]| chsh_from(&e, [0.0, x[0], x[1], x[2]]);

    let g = cfg.grid_points;
    let zoom = (4.0 * PI / n as f64).min(PI);
    let grids = [(-PI, 2.0 * PI / g as f64), (-zoom, 2.0 * zoom / (g - 1) as f64)];

    // Best point of each (grid, a-slice), reduced in index order so ties go to the lowest index.
    let mut seeds: Vec<(f64, usize, [f64; 3], f64)> = grids
        .iter()
        .enumerate()
        .flat_map(|(gi, &(start, step))| {
            (0..g).into_par_iter().map(move |i| (gi, start, step, i)).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(gi, start, step, i)| {
            let a = start + step * i as f64;
            let mut best = (f64::NEG_INFINITY, 0usize, [0.0; 3]);
            for j in 0..g {
                for k in 0..g {
                    let x = [a, start + step * j as f64, start + step * k as f64];
                    let v = objective(&x);
                    if v > best.0 {
                        best = (v, (gi * g + i) * g * g + j * g + k, x);
                    }
                }
            }
            (best.0, best.1, best.2, step)
        })
        .collect();
    seeds.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    seeds.truncate(cfg.candidates.max(1));

    let mut best: Option<(f64, [f64; 3])> = None;
    for (v0, _, x0, step) in seeds {
        let (x, v) = nelder_mead_max(&objective, x0, step, cfg);
        let (x, v) = if v >= v0 { (x, v) } else { (x0, v0) };
        if best.is_none_or(|(bv, _)| v > bv) {
            best = Some((v, x));
        }
    }
    let (value, x) = best.expect("at least one candidate");
    if value > 4.0 + 1e-9 {
        return Err(Error::Internal(format!("CHSH value {value} exceeds the algebraic bound 4")));
    }
    Ok(ViolationResult {
        n,
        m,
        value,
        angles: [0.0, wrap(x[0]), wrap(x[1]), wrap(x[2])],
    })
}

fn wrap(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

/// Maximizes `f` over three variables from a simplex of edge `step` around `x0`.
fn nelder_mead_max<F: Fn(&[f64; 3]) -> f64>(
    f: &F,
    x0: [f64; 3],
    step: f64,
    cfg: &OptimizerConfig,
) -> ([f64; 3], f64) {
    let mut simplex: Vec<([f64; 3], f64)> = (0..4)
        .map(|i| {
            let mut x = x0;
            if i > 0 {
                x[i - 1] += step;
            }
            (x, -f(&x))
        })
        .collect();
    let lerp = |a: &[f64; 3], b: &[f64; 3], t: f64| -> [f64; 3] {
        [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])]
    };
    for _ in 0..cfg.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(p, q)| (p - q).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < cfg.angle_tol {
            break;
        }
        let mut centroid = [0.0; 3];
        for (x, _) in &simplex[..3] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / 3.0;
            }
        }
        let worst = simplex[3];
        let reflected = lerp(&centroid, &worst.0, -1.0);
        let fr = -f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -2.0);
            let fe = -f(&expanded);
            simplex[3] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[2].1 {
            simplex[3] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                lerp(&centroid, &reflected, 0.5)
            } else {
                lerp(&centroid, &worst.0, 0.5)
            };
            let fc = -f(&contracted);
            if fc < worst.1.min(fr) {
                simplex[3] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    v.0 = lerp(&best, &v.0, 0.5);
                    v.1 = -f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    (simplex[0].0, -simplex[0].1)
}
