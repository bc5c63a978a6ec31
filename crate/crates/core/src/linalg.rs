//! Small dense linear algebra: vector helpers, pivoted Gaussian elimination,
//! modified Gram-Schmidt, and Jacobi eigenvalues for tiny symmetric matrices.
//!
//! Everything here operates on `&[f64]` slices; dimensions are tiny (a handful
//! of simplex vertices), so no external linear algebra dependency is needed.

use alloc::vec;
use alloc::vec::Vec;

use crate::mathx;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    mathx::sqrt(dot(a, a))
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        s += d * d;
    }
    mathx::sqrt(s)
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn axpy(acc: &mut [f64], s: f64, a: &[f64]) {
    for (y, x) in acc.iter_mut().zip(a) {
        *y += s * x;
    }
}

/// Solves `A x = b` in place for a square system by Gaussian elimination with
/// partial pivoting. Returns `None` when the matrix is singular relative to
/// `tol` times the largest pivot scale.
pub fn solve(a: &mut [Vec<f64>], b: &mut [f64], tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let scale_max = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, &v| if v.abs() > m { v.abs() } else { m })
        .max(1e-300);
    for col in 0..n {
        let (piv, piv_val) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_val <= tol * scale_max {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut s = b[col];
        for c in col + 1..n {
            s -= a[col][c] * x[c];
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}

/// Determinant of a square matrix by Gaussian elimination with partial
/// pivoting (destroys `a`).
pub fn det(a: &mut [Vec<f64>]) -> f64 {
    let n = a.len();
    let mut sign = 1.0;
    let mut d = 1.0;
    for col in 0..n {
        let (piv, piv_val) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_val == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(col, piv);
            sign = -sign;
        }
        d *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    sign * d
}

/// Orthonormal basis of the span of `vectors` by modified Gram-Schmidt.
/// Directions whose residual norm falls below `tol * original_norm` (or an
/// absolute floor) are dropped, so the result has full numerical rank.
pub fn orthonormal_basis(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let orig = norm(v);
        let mut w = v.clone();
        for b in &basis {
            let c = dot(&w, b);
            axpy(&mut w, -c, b);
        }
        // second pass for numerical orthogonality
        for b in &basis {
            let c = dot(&w, b);
            axpy(&mut w, -c, b);
        }
        let n = norm(&w);
        if n > tol * orig.max(1.0) && n > 1e-300 {
            basis.push(scale(&w, 1.0 / n));
        }
    }
    basis
}

/// Projects `v` onto the orthogonal complement of the span of `basis`
/// (assumed orthonormal).
pub fn project_out(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut w = v.to_vec();
    for b in basis {
        let c = dot(&w, b);
        axpy(&mut w, -c, b);
    }
    w
}

/// Smallest eigenvalue of a small symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eigen_min(g: &[Vec<f64>]) -> f64 {
    let n = g.len();
    if n == 0 {
        return 0.0;
    }
    let mut a: Vec<Vec<f64>> = g.to_vec();
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off <= 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + mathx::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + mathx::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / mathx::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}
