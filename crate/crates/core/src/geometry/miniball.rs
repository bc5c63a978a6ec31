//! Minimal enclosing ball in arbitrary dimension: Welzl's recursion with
//! move-to-front. Deterministic for a fixed input order.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg;

#[derive(Debug, Clone)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    fn empty(dim: usize) -> Self {
        Ball { center: vec![0.0; dim], radius: -1.0 }
    }

    fn contains(&self, p: &[f64]) -> bool {
        if self.radius < 0.0 {
            return false;
        }
        let d = linalg::dist(&self.center, p);
        d <= self.radius * (1.0 + 1e-12) + 1e-14
    }
}

/// Circumball of an affinely independent boundary set; `None` when the set is
/// (numerically) affinely dependent.
fn circumball(boundary: &[&[f64]], dim: usize) -> Option<Ball> {
    match boundary.len() {
        0 => Some(Ball::empty(dim)),
        1 => Some(Ball { center: boundary[0].to_vec(), radius: 0.0 }),
        m => {
            let b0 = boundary[0];
            let dirs: Vec<Vec<f64>> = boundary[1..].iter().map(|b| linalg::sub(b, b0)).collect();
            let mut a = vec![vec![0.0; m - 1]; m - 1];
            let mut rhs = vec![0.0; m - 1];
            for i in 0..m - 1 {
                for j in 0..m - 1 {
                    a[i][j] = 2.0 * linalg::dot(&dirs[i], &dirs[j]);
                }
                rhs[i] = linalg::dot(&dirs[i], &dirs[i]);
            }
            let x = linalg::solve(&mut a, &mut rhs, 1e-12)?;
            let mut center = b0.to_vec();
            for (xi, d) in x.iter().zip(&dirs) {
                linalg::axpy(&mut center, *xi, d);
            }
            let radius = linalg::dist(&center, b0);
            Some(Ball { center, radius })
        }
    }
}

fn mtf_mb(order: &mut Vec<usize>, end: usize, boundary: &mut Vec<usize>, pts: &[Vec<f64>]) -> Ball {
    let dim = pts[0].len();
    let bpts: Vec<&[f64]> = boundary.iter().map(|&i| pts[i].as_slice()).collect();
    let mut ball = match circumball(&bpts, dim) {
        Some(b) => b,
        // numerically dependent support: fall back to dropping the oldest point
        None => circumball(&bpts[1..], dim).unwrap_or(Ball::empty(dim)),
    };
    if boundary.len() == dim + 1 {
        return ball;
    }
    let mut i = 0;
    while i < end {
        let p = order[i];
        if !ball.contains(&pts[p]) {
            boundary.push(p);
            ball = mtf_mb(order, i, boundary, pts);
            boundary.pop();
            order.remove(i);
            order.insert(0, p);
        }
        i += 1;
    }
    ball
}

/// Minimal enclosing ball of a nonempty point set.
pub fn enclosing_ball(pts: &[Vec<f64>]) -> Ball {
    assert!(!pts.is_empty(), "enclosing_ball of empty set");
    let mut order: Vec<usize> = (0..pts.len()).collect();
    let mut boundary = Vec::new();
    let n = pts.len();
    mtf_mb(&mut order, n, &mut boundary, pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use alloc::vec;

    #[test]
    fn single_point() {
        let b = enclosing_ball(&[vec![1.0, 2.0, 3.0]]);
        assert_eq!(b.radius, 0.0);
    }

    #[test]
    fn two_points() {
        let b = enclosing_ball(&[vec![0.0, 0.0], vec![2.0, 0.0]]);
        assert!((b.radius - 1.0).abs() < 1e-12);
        assert!(linalg::dist(&b.center, &[1.0, 0.0]) < 1e-12);
    }

    #[test]
    fn unit_square() {
        let b = enclosing_ball(&[
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ]);
        assert!((b.radius - (0.5f64).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn contains_all_and_is_tight_on_random_sets() {
        let mut rng = SeededRng::new(11);
        for n in 2..6 {
            for trial in 0..20 {
                let pts: Vec<Vec<f64>> = (0..(10 + trial))
                    .map(|_| (0..n).map(|_| rng.normal()).collect())
                    .collect();
                let b = enclosing_ball(&pts);
                let max_d = pts
                    .iter()
                    .map(|p| linalg::dist(&b.center, p))
                    .fold(0.0f64, f64::max);
                assert!(max_d <= b.radius + 1e-8, "point escapes ball");
                // tightness: some point must be (numerically) on the boundary
                assert!(max_d >= b.radius - 1e-8, "ball not tight");
                // no smaller ball centered at the centroid works unless equal
                let centroid: Vec<f64> = (0..n)
                    .map(|i| pts.iter().map(|p| p[i]).sum::<f64>() / pts.len() as f64)
                    .collect();
                let alt = pts
                    .iter()
                    .map(|p| linalg::dist(&centroid, p))
                    .fold(0.0f64, f64::max);
                assert!(b.radius <= alt + 1e-8);
            }
        }
    }
}
