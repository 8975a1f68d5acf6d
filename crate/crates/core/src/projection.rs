//! Nearest point of a convex hull.
//!
//! [`eta`] returns the unique point of `co(K)` nearest to `p` in the embedded
//! `ℓ_2` norm, computed with Wolfe's minimum-norm-point method on the
//! translated vertices `q_j - p`. [`eta_oracle`] answers the same question by
//! exhaustive search over a weight grid and shares no code with the solver
//! beyond the distance function.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{check_unit, distance, embedded_inner, CubeError, CubePoint, MetricKind, DEFAULT_DEPTH};
use crate::hyperspace::{try_induced_map, FiniteSubset};

/// Default stopping tolerance on the variational residual.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Optimality gap, relative to the largest squared vertex norm, that
/// counts as exact.
const ROUNDING_GAP: f64 = 1e-15;

/// Largest vertex count accepted by [`eta_oracle`].
pub const ORACLE_MAX_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjectionError {
    #[error("cannot project onto the hull of an empty set")]
    Empty,
    #[error("solver did not converge in {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("oracle accepts at most {max} points, got {got}")]
    TooManyPoints { got: usize, max: usize },
    #[error("grid step must lie in (0, 0.1], got {0}")]
    BadGridStep(f64),
    #[error("weights are not a probability vector: {0}")]
    BadWeights(String),
}

/// Convex-combination coefficients: nonnegative, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SimplexWeights(Vec<f64>);

impl SimplexWeights {
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(weights: Vec<f64>) -> Result<Self, ProjectionError> {
        if weights.is_empty() {
            return Err(ProjectionError::BadWeights("no weights".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(ProjectionError::BadWeights(format!("entry {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(ProjectionError::BadWeights(format!("sum {sum}")));
        }
        Ok(Self(weights))
    }

    pub fn vertex(r: usize, j: usize) -> Self {
        let mut w = vec![0.0; r];
        w[j] = 1.0;
        Self(w)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `Σ s_j q_j`.
    pub fn combine(&self, points: &[CubePoint]) -> CubePoint {
        let dim = points.iter().map(CubePoint::len).max().unwrap_or(0);
        let coords = (0..dim)
            .map(|i| self.0.iter().zip(points).map(|(s, q)| s * q.get(i)).sum())
            .collect();
        CubePoint::from_arithmetic(coords)
    }
}

impl TryFrom<Vec<f64>> for SimplexWeights {
    type Error = ProjectionError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<SimplexWeights> for Vec<f64> {
    fn from(w: SimplexWeights) -> Self {
        w.0
    }
}

/// Output of [`eta`] and [`eta_oracle`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionResult {
    pub point: CubePoint,
    /// Weights aligned with the order of the input points.
    pub weights: SimplexWeights,
    /// Embedded distance from `point` to `p`.
    pub objective: f64,
    pub iterations: usize,
}

/// `η_p(K)`: the point of `co(K)` nearest to `p`.
pub fn eta(p: &CubePoint, k: &FiniteSubset<CubePoint>, tol: f64) -> Result<ProjectionResult, ProjectionError> {
    eta_points(p, k.points(), tol)
}

/// [`eta`] on a plain slice of vertices. Duplicates are allowed.
pub fn eta_points(p: &CubePoint, points: &[CubePoint], tol: f64) -> Result<ProjectionResult, ProjectionError> {
    let dim = points.iter().chain(std::iter::once(p)).map(CubePoint::len).max().unwrap_or(0);
    let cap = 10 * points.len() * dim.max(DEFAULT_DEPTH);
    eta_with_cap(p, points, tol, cap)
}

/// [`eta_points`] with an explicit iteration cap.
pub fn eta_with_cap(
    p: &CubePoint,
    points: &[CubePoint],
    tol: f64,
    max_iterations: usize,
) -> Result<ProjectionResult, ProjectionError> {
    if points.is_empty() {
        return Err(ProjectionError::Empty);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(ProjectionError::BadTolerance(tol));
    }
    let dim = points.iter().chain(std::iter::once(p)).map(CubePoint::len).max().unwrap_or(0);
    let origin = p.embedded(dim);
    let ys: Vec<Vec<f64>> = points
        .iter()
        .map(|q| q.embedded(dim).iter().zip(&origin).map(|(a, b)| a - b).collect())
        .collect();

    let (lambda, iterations) = min_norm_point(&ys, tol, max_iterations)?;
    let weights = SimplexWeights(lambda);
    let point = weights.combine(points);
    let objective = distance(&point, p, MetricKind::L2Embedded);
    Ok(ProjectionResult { point, weights, objective, iterations })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combination(ys: &[Vec<f64>], corral: &[usize], lambda: &[f64]) -> Vec<f64> {
    let dim = ys[0].len();
    let mut x = vec![0.0; dim];
    for (&j, &l) in corral.iter().zip(lambda) {
        for (xi, yi) in x.iter_mut().zip(&ys[j]) {
            *xi += l * yi;
        }
    }
    x
}

/// Weights of the minimum-norm point of the affine hull of the corral.
fn affine_minimizer(ys: &[Vec<f64>], corral: &[usize]) -> Vec<f64> {
    let k = corral.len();
    if k == 1 {
        return vec![1.0];
    }
    let base = &ys[corral[0]];
    let dim = base.len();
    // min ||base + D beta||, D = [y_i - base]
    let d = DMatrix::from_fn(dim, k - 1, |r, c| ys[corral[c + 1]][r] - base[r]);
    let rhs = -DVector::from_column_slice(base);
    let beta = d
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .unwrap_or_else(|_| DVector::zeros(k - 1));
    let mut alpha = Vec::with_capacity(k);
    alpha.push(1.0 - beta.sum());
    alpha.extend(beta.iter());
    alpha
}

/// Wolfe's method on translated vertices `ys`. Returns full-length weights.
///
/// Iterates until the optimality gap `|x|² - min_j ⟨x, y_j⟩` is at rounding
/// level, since a gap of `tol` alone still allows `x` to sit `√tol` away
/// from the minimizer. When rounding stalls progress first, the result is
/// accepted if `⟨x, y_j - x⟩ >= -tol (1 + |x|)` holds for every vertex.
fn min_norm_point(ys: &[Vec<f64>], tol: f64, cap: usize) -> Result<(Vec<f64>, usize), ProjectionError> {
    let r = ys.len();
    let scale = ys.iter().map(|y| dot(y, y)).fold(0.0, f64::max);
    let tight = (ROUNDING_GAP * scale).min(tol);
    let start = (0..r)
        .min_by(|&a, &b| dot(&ys[a], &ys[a]).total_cmp(&dot(&ys[b], &ys[b])))
        .expect("nonempty");
    let mut corral = vec![start];
    let mut lambda = vec![1.0];
    let mut x = ys[start].clone();
    let mut iterations = 0;
    let mut previous = f64::INFINITY;

    loop {
        iterations += 1;
        let xx = dot(&x, &x);
        let (j, xy) = (0..r)
            .map(|j| (j, dot(&x, &ys[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        let gap = xx - xy;
        let residual = gap / (1.0 + xx.sqrt());
        if residual <= tight {
            break;
        }
        // j already in the corral, or no decrease in |x|, means rounding
        // stalled progress
        let stalled = corral.contains(&j) || xx >= previous;
        if stalled && residual <= tol {
            break;
        }
        if iterations > cap || stalled {
            return Err(ProjectionError::NonConvergence { iterations, residual });
        }
        previous = xx;
        corral.push(j);
        lambda.push(0.0);

        loop {
            iterations += 1;
            if iterations > cap {
                return Err(ProjectionError::NonConvergence { iterations, residual: gap / (1.0 + xx.sqrt()) });
            }
            let alpha = affine_minimizer(ys, &corral);
            if alpha.iter().all(|&a| a > 0.0) {
                lambda = alpha;
                break;
            }
            // step from lambda toward alpha until the first weight hits zero
            let (leave, theta) = alpha
                .iter()
                .zip(&lambda)
                .enumerate()
                .filter(|(_, (a, _))| **a <= 0.0)
                .map(|(i, (a, l))| (i, l / (l - a)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("some alpha is nonpositive");
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l = (1.0 - theta) * *l + theta * a;
            }
            lambda[leave] = 0.0;
            let mut i = 0;
            while i < corral.len() {
                if lambda[i] <= 0.0 {
                    corral.remove(i);
                    lambda.remove(i);
                } else {
                    i += 1;
                }
            }
            let sum: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= sum);
        }
        x = combination(ys, &corral, &lambda);
    }

    let mut weights = vec![0.0; r];
    for (&j, &l) in corral.iter().zip(&lambda) {
        weights[j] += l.max(0.0);
    }
    let sum: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= sum);
    Ok((weights, iterations))
}

/// `max(0, max_j -⟨q - p, q_j - q⟩ / (1 + |q - p|))` in the embedded inner
/// product: zero exactly when `q` is the projection of `p` onto `co(K)`.
pub fn variational_residual(p: &CubePoint, points: &[CubePoint], q: &CubePoint) -> f64 {
    let gap_norm = distance(q, p, MetricKind::L2Embedded);
    points
        .iter()
        .map(|v| {
            // ⟨q - p, v - q⟩ = ⟨q - p, v - p⟩ - |q - p|^2
            -(embedded_inner(q, v, p) - gap_norm * gap_norm) / (1.0 + gap_norm)
        })
        .fold(0.0, f64::max)
}

/// `L_obj = 2 max_j |q_j - p| · max_{j,l} |q_j - q_l|`, the scale factor of
/// the oracle's grid error.
pub fn objective_sensitivity(p: &CubePoint, points: &[CubePoint]) -> f64 {
    let reach = points.iter().map(|q| distance(q, p, MetricKind::L2Embedded)).fold(0.0, f64::max);
    let mut diameter = 0.0f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            diameter = diameter.max(distance(a, b, MetricKind::L2Embedded));
        }
    }
    2.0 * reach * diameter
}

/// Brute-force projection: evaluates every weight vector on the grid
/// `{c / N : c ∈ ℕ^r, Σ c = N}` with `N = ⌈1 / grid_step⌉`.
pub fn eta_oracle(p: &CubePoint, k: &FiniteSubset<CubePoint>, grid_step: f64) -> Result<ProjectionResult, ProjectionError> {
    let points = k.points();
    let r = points.len();
    if r > ORACLE_MAX_POINTS {
        return Err(ProjectionError::TooManyPoints { got: r, max: ORACLE_MAX_POINTS });
    }
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(ProjectionError::BadGridStep(grid_step));
    }
    let divisions = (1.0 / grid_step - 1e-9).ceil() as usize;

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut evaluated = 0;
    let mut counts = vec![0usize; r];
    enumerate_compositions(divisions, &mut counts, 0, &mut |c| {
        evaluated += 1;
        let s: Vec<f64> = c.iter().map(|&ci| ci as f64 / divisions as f64).collect();
        let dim = points.iter().map(CubePoint::len).max().unwrap_or(0);
        let coords = (0..dim).map(|i| s.iter().zip(points).map(|(w, q)| w * q.get(i)).sum()).collect();
        let candidate = CubePoint::from_arithmetic(coords);
        let obj = distance(&candidate, p, MetricKind::L2Embedded);
        if best.as_ref().is_none_or(|(b, _)| obj < *b) {
            best = Some((obj, c.to_vec()));
        }
    });
    let (_, counts) = best.expect("at least one grid point");
    // exact rational weights; the sum of c_i / N may be off by an ulp
    let raw: Vec<f64> = counts.iter().map(|&c| c as f64 / divisions as f64).collect();
    let sum: f64 = raw.iter().sum();
    let weights = SimplexWeights::new(raw.iter().map(|w| w / sum).collect())?;
    let point = weights.combine(points);
    let objective = distance(&point, p, MetricKind::L2Embedded);
    Ok(ProjectionResult { point, weights, objective, iterations: evaluated })
}

fn enumerate_compositions(remaining: usize, counts: &mut [usize], at: usize, visit: &mut impl FnMut(&[usize])) {
    if at + 1 == counts.len() {
        counts[at] = remaining;
        visit(counts);
        return;
    }
    for c in 0..=remaining {
        counts[at] = c;
        enumerate_compositions(remaining - c, counts, at + 1, visit);
    }
}

/// `{(1 - t) q_j + t q}`: every point of `K` moved toward `q`.
pub fn blend(k: &FiniteSubset<CubePoint>, q: &CubePoint, t: f64) -> Result<FiniteSubset<CubePoint>, CubeError> {
    check_unit("t", t)?;
    try_induced_map(|x| x.lerp(q, t), k)
}
