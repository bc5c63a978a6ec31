//! Minimum distance between convex hulls of point sets.
//!
//! The primitive is Wolfe's min-norm-point algorithm: the distance between
//! conv(A) and conv(B) is the norm of the min-norm point of the difference
//! set {a - b}. The corral stays affinely independent, every affine
//! subproblem is a tiny pivoted solve, and termination is certified by the
//! Wolfe optimality gap, so results are exact to solver tolerance.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg;

/// Relative optimality gap at which the min-norm iteration stops.
const GAP_TOL: f64 = 1e-14;
/// Coefficients at or below this are treated as zero when dropping corral points.
const COEFF_TOL: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct MinNormResult {
    /// The min-norm point of the hull.
    pub point: Vec<f64>,
    pub norm: f64,
    /// Convex coefficients over the input points (same length, mostly zeros).
    pub coeffs: Vec<f64>,
}

/// Min-norm point of conv(points). `points` must be nonempty and share a
/// dimension.
pub fn min_norm_point(points: &[Vec<f64>]) -> MinNormResult {
    debug_assert!(!points.is_empty());
    let start = (0..points.len())
        .min_by(|&i, &j| {
            linalg::dot(&points[i], &points[i])
                .total_cmp(&linalg::dot(&points[j], &points[j]))
        })
        .unwrap();
    let mut corral: Vec<usize> = vec![start];
    let mut lambda: Vec<f64> = vec![1.0];
    let mut x = points[start].clone();

    let max_major = 16 * (points.len() + points[0].len() + 4);
    for _ in 0..max_major {
        let xx = linalg::dot(&x, &x);
        // linear minimization over the hull
        let (best, best_dot) = (0..points.len())
            .map(|j| (j, linalg::dot(&x, &points[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if xx - best_dot <= GAP_TOL * xx.max(1.0) {
            break;
        }
        if corral.contains(&best) {
            break;
        }
        corral.push(best);
        lambda.push(0.0);

        // minor cycle: move to the affine min-norm point of the corral,
        // dropping points whose coefficient would go negative.
        let max_minor = 4 * (corral.len() + points[0].len() + 4);
        for _ in 0..max_minor {
            match affine_min_norm(points, &corral) {
                Some(alpha) => {
                    if alpha.iter().all(|&a| a > COEFF_TOL) {
                        lambda = alpha;
                        break;
                    }
                    let mut theta = 1.0f64;
                    for i in 0..corral.len() {
                        if alpha[i] <= COEFF_TOL && lambda[i] > alpha[i] {
                            theta = theta.min(lambda[i] / (lambda[i] - alpha[i]));
                        }
                    }
                    for i in 0..corral.len() {
                        lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha[i];
                    }
                    drop_zero_coeffs(&mut corral, &mut lambda);
                    if corral.len() == 1 {
                        break;
                    }
                }
                None => {
                    // affinely dependent corral: drop the weakest old point
                    let last = corral.len() - 1;
                    let weakest = (0..last)
                        .min_by(|&i, &j| lambda[i].total_cmp(&lambda[j]))
                        .unwrap();
                    corral.remove(weakest);
                    lambda.remove(weakest);
                    let s: f64 = lambda.iter().sum();
                    if s > 0.0 {
                        for l in lambda.iter_mut() {
                            *l /= s;
                        }
                    } else {
                        lambda = vec![1.0 / corral.len() as f64; corral.len()];
                    }
                    if corral.len() == 1 {
                        break;
                    }
                }
            }
        }
        x = combine(points, &corral, &lambda);
    }

    let mut coeffs = vec![0.0; points.len()];
    for (i, &idx) in corral.iter().enumerate() {
        coeffs[idx] += lambda[i];
    }
    let norm = linalg::norm(&x);
    MinNormResult { point: x, norm, coeffs }
}

fn combine(points: &[Vec<f64>], corral: &[usize], lambda: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; points[0].len()];
    for (&idx, &l) in corral.iter().zip(lambda) {
        linalg::axpy(&mut x, l, &points[idx]);
    }
    x
}

fn drop_zero_coeffs(corral: &mut Vec<usize>, lambda: &mut Vec<f64>) {
    let mut i = 0;
    let mut dropped = false;
    while i < corral.len() {
        if lambda[i] <= COEFF_TOL && (corral.len() > 1) {
            corral.remove(i);
            lambda.remove(i);
            dropped = true;
        } else {
            i += 1;
        }
    }
    if dropped {
        let s: f64 = lambda.iter().sum();
        if s > 0.0 {
            for l in lambda.iter_mut() {
                *l /= s;
            }
        }
    }
}

/// Minimizes ||sum alpha_i p_i|| subject to sum alpha_i = 1 (signs free)
/// over the corral. Returns `None` when the Gram system is singular,
/// i.e. the corral is affinely dependent.
fn affine_min_norm(points: &[Vec<f64>], corral: &[usize]) -> Option<Vec<f64>> {
    let m = corral.len();
    if m == 1 {
        return Some(vec![1.0]);
    }
    // KKT system: [G 1; 1^T 0] [alpha; nu] = [0; 1]
    let mut a = vec![vec![0.0; m + 1]; m + 1];
    for i in 0..m {
        for j in i..m {
            let g = linalg::dot(&points[corral[i]], &points[corral[j]]);
            a[i][j] = g;
            a[j][i] = g;
        }
        a[i][m] = 1.0;
        a[m][i] = 1.0;
    }
    let mut b = vec![0.0; m + 1];
    b[m] = 1.0;
    let sol = linalg::solve(&mut a, &mut b, 1e-13)?;
    Some(sol[..m].to_vec())
}

/// Closest pair between conv(A) and conv(B), with witness points.
#[derive(Debug, Clone)]
pub struct DistanceWitness {
    pub distance: f64,
    pub point_a: Vec<f64>,
    pub point_b: Vec<f64>,
}

/// Minimum Euclidean distance between the convex hulls of two point tuples.
/// Returns 0 when the hulls intersect (to solver tolerance).
pub fn simplex_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<DistanceWitness, Error> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter("simplex_distance on empty point set"));
    }
    let n = a[0].len();
    if a.iter().chain(b).any(|p| p.len() != n) {
        let bad = a.iter().chain(b).find(|p| p.len() != n).unwrap();
        return Err(Error::DimensionMismatch { left: n, right: bad.len() });
    }
    let mut diffs = Vec::with_capacity(a.len() * b.len());
    for pa in a {
        for pb in b {
            diffs.push(linalg::sub(pa, pb));
        }
    }
    let res = min_norm_point(&diffs);
    let mut point_a = vec![0.0; n];
    let mut point_b = vec![0.0; n];
    for (k, &c) in res.coeffs.iter().enumerate() {
        if c != 0.0 {
            let (i, j) = (k / b.len(), k % b.len());
            linalg::axpy(&mut point_a, c, &a[i]);
            linalg::axpy(&mut point_b, c, &b[j]);
        }
    }
    Ok(DistanceWitness { distance: res.norm, point_a, point_b })
}

/// Distance from a point to the convex hull of a point tuple.
pub fn point_simplex_distance(p: &[f64], b: &[Vec<f64>]) -> Result<f64, Error> {
    let diffs: Vec<Vec<f64>> = b.iter().map(|q| linalg::sub(p, q)).collect();
    if diffs.is_empty() {
        return Err(Error::InvalidParameter("point_simplex_distance on empty point set"));
    }
    if b.iter().any(|q| q.len() != p.len()) {
        return Err(Error::DimensionMismatch { left: p.len(), right: b[0].len() });
    }
    Ok(min_norm_point(&diffs).norm)
}

/// Distance from `p` to the affine hull of `q` (not the convex hull).
pub fn point_affine_distance(p: &[f64], q: &[Vec<f64>]) -> f64 {
    debug_assert!(!q.is_empty());
    let dirs: Vec<Vec<f64>> = q[1..].iter().map(|v| linalg::sub(v, &q[0])).collect();
    let basis = linalg::orthonormal_basis(&dirs, 1e-12);
    let w = linalg::project_out(&linalg::sub(p, &q[0]), &basis);
    linalg::norm(&w)
}
