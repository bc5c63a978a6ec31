//! Induced embeddings of links into spheres of normal spaces and their
//! angular thickness.
//!
//! For an i-simplex sigma of a straight-line embedded complex, each coface
//! tau ⊋ sigma induces a spherical simplex in S^(n-i-1): the unit vectors of
//! the link vertices, projected orthogonally to the affine span of sigma.
//! Link thickness is the minimum angular distance between disjoint spherical
//! simplices, computed by branch-and-bound with a Lipschitz certificate.

use alloc::format;
use alloc::vec::Vec;

use crate::complex::{disjoint, Simplex, VertexId};
use crate::error::Error;
use crate::geometry::distance::min_norm_point;
use crate::geometry::EmbeddedComplex;
use crate::linalg;
use crate::mathx;

/// Certified slack of reported link thickness values (radians).
pub const ANGLE_TOL: f64 = 1e-4;

/// The induced embedding of lk(sigma) into the unit sphere of the normal
/// space of aff(sigma). Directions are ambient-coordinate unit vectors lying
/// in the orthogonal complement of sigma's direction space.
#[derive(Debug, Clone)]
pub struct SphericalLinkEmbedding {
    pub base: Simplex,
    /// n - i - 1 for an i-simplex in ambient dimension n.
    pub sphere_dim: isize,
    /// link vertex id -> parent vertex id, dense and increasing.
    pub vertex_to_parent: Vec<VertexId>,
    /// unit direction per link vertex, indexed like `vertex_to_parent`.
    pub directions: Vec<Vec<f64>>,
    /// every link simplex, as (link vertex ids, originating parent simplex).
    pub simplices: Vec<(Vec<usize>, Simplex)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinkThickness {
    /// Fewer than two pairwise-disjoint link simplices.
    NoDisjointPairs,
    /// Minimum angle between disjoint spherical link simplices, as a certified
    /// lower bound within [`ANGLE_TOL`] of the true minimum, with the parent
    /// simplices of the achieving pair.
    Angle { radians: f64, witness: (Simplex, Simplex) },
}

impl LinkThickness {
    pub fn radians(&self) -> Option<f64> {
        match self {
            LinkThickness::NoDisjointPairs => None,
            LinkThickness::Angle { radians, .. } => Some(*radians),
        }
    }
}

/// Computes the spherical link embedding of `sigma` under `embedding`.
pub fn link_embedding(
    embedding: &EmbeddedComplex,
    sigma: &[VertexId],
) -> Result<SphericalLinkEmbedding, Error> {
    let (_, corr) = embedding.complex().link(sigma)?;
    let normal = NormalFrame::for_simplex(embedding, sigma)?;
    let mut directions = Vec::with_capacity(corr.vertex_to_parent.len());
    for &v in &corr.vertex_to_parent {
        directions.push(normal.direction(embedding.point(v)).ok_or(Error::DegenerateLink {
            base: sigma.to_vec(),
            vertex: v,
        })?);
    }
    let simplices = corr
        .simplex_to_parent
        .iter()
        .map(|(s, tau)| (s.clone(), tau.clone()))
        .collect();
    Ok(SphericalLinkEmbedding {
        base: sigma.to_vec(),
        sphere_dim: embedding.ambient_dim() as isize - sigma.len() as isize,
        vertex_to_parent: corr.vertex_to_parent,
        directions,
        simplices,
    })
}

/// Barycenter of a simplex image plus an orthonormal basis of its direction
/// space; projects ambient points to unit normal directions.
pub(crate) struct NormalFrame {
    barycenter: Vec<f64>,
    basis: Vec<Vec<f64>>,
}

impl NormalFrame {
    pub(crate) fn for_simplex(
        embedding: &EmbeddedComplex,
        sigma: &[VertexId],
    ) -> Result<NormalFrame, Error> {
        let pts: Vec<Vec<f64>> = sigma.iter().map(|&v| embedding.point(v).to_vec()).collect();
        let mut barycenter = alloc::vec![0.0; embedding.ambient_dim()];
        for p in &pts {
            linalg::axpy(&mut barycenter, 1.0 / pts.len() as f64, p);
        }
        let dirs: Vec<Vec<f64>> = pts[1..].iter().map(|p| linalg::sub(p, &pts[0])).collect();
        let basis = linalg::orthonormal_basis(&dirs, 1e-12);
        if basis.len() + 1 != sigma.len() {
            return Err(Error::DegenerateSimplex(sigma.to_vec()));
        }
        Ok(NormalFrame { barycenter, basis })
    }

    /// Unit normal-space direction from the barycenter to `p`, or `None` when
    /// the projection is numerically zero.
    pub(crate) fn direction(&self, p: &[f64]) -> Option<Vec<f64>> {
        let u = linalg::sub(p, &self.barycenter);
        let w = linalg::project_out(&u, &self.basis);
        let nw = linalg::norm(&w);
        if nw <= 1e-9 * linalg::norm(&u).max(1e-300) {
            None
        } else {
            Some(linalg::scale(&w, 1.0 / nw))
        }
    }
}

/// Minimum angular distance between images of disjoint link simplices.
pub fn link_thickness(link: &SphericalLinkEmbedding) -> Result<LinkThickness, Error> {
    let mut best: Option<(f64, (Simplex, Simplex))> = None;
    for (i, (sa, pa)) in link.simplices.iter().enumerate() {
        for (sb, pb) in &link.simplices[i + 1..] {
            if !disjoint(sa, sb) {
                continue;
            }
            let a: Vec<Vec<f64>> = sa.iter().map(|&v| link.directions[v].clone()).collect();
            let b: Vec<Vec<f64>> = sb.iter().map(|&v| link.directions[v].clone()).collect();
            let angle = min_cone_angle(&a, &b)?;
            if best.as_ref().is_none_or(|(cur, _)| angle < *cur) {
                best = Some((angle, (pa.clone(), pb.clone())));
            }
        }
    }
    Ok(match best {
        None => LinkThickness::NoDisjointPairs,
        Some((radians, witness)) => LinkThickness::Angle { radians, witness },
    })
}

fn angle_between(x: &[f64], y: &[f64]) -> f64 {
    let c = linalg::dot(x, y) / (linalg::norm(x) * linalg::norm(y));
    mathx::acos(c)
}

/// A branch-and-bound cell: a sub-simplex of each side's convex hull, tracked
/// directly by its corner images (the parametrization is affine).
struct Cell {
    corners_a: Vec<Vec<f64>>,
    corners_b: Vec<Vec<f64>>,
    lower: f64,
}

fn centroid(corners: &[Vec<f64>]) -> Vec<f64> {
    let mut c = alloc::vec![0.0; corners[0].len()];
    for p in corners {
        linalg::axpy(&mut c, 1.0 / corners.len() as f64, p);
    }
    c
}

fn radius(corners: &[Vec<f64>], c: &[f64]) -> f64 {
    corners.iter().map(|p| linalg::dist(p, c)).fold(0.0, f64::max)
}

/// Minimum angle between the spherical simplices spanned by two unit-vector
/// tuples (radial projections of their convex hulls). The result is a
/// certified lower bound within [`ANGLE_TOL`] of the true minimum: the angle
/// function is (pi/r_min)-Lipschitz in the pre-normalized points, where r_min
/// is the minimum hull norm, which bounds each cell's variation.
pub fn min_cone_angle(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64, Error> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 && b.len() == 1 {
        return Ok(angle_between(&a[0], &b[0]));
    }
    let r_a = min_norm_point(a).norm;
    let r_b = min_norm_point(b).norm;
    if r_a <= 1e-9 || r_b <= 1e-9 {
        return Err(Error::InvalidEmbedding(format!(
            "spherical simplex contains the origin (hull norms {:.3e}, {:.3e})",
            r_a, r_b
        )));
    }
    let lip_a = core::f64::consts::PI / r_a;
    let lip_b = core::f64::consts::PI / r_b;

    // seed the upper bound with a coarse barycentric grid on each side
    let mut upper = f64::INFINITY;
    for ga in barycentric_grid(a, 17) {
        for gb in barycentric_grid(b, 17) {
            upper = upper.min(angle_between(&ga, &gb));
        }
    }

    // Cells partition the parameter domain; the minimum over every recorded
    // region lower bound is a valid global lower bound throughout. A cell may
    // be retired once its lower bound is within ANGLE_TOL of the incumbent.
    let mut cells = alloc::vec![make_cell(a.to_vec(), b.to_vec(), lip_a, lip_b, &mut upper)];
    let mut retired_floor = f64::INFINITY;
    for _ in 0..200_000 {
        let Some((idx, _)) = cells
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.lower.total_cmp(&y.1.lower))
        else {
            break;
        };
        if upper - cells[idx].lower <= ANGLE_TOL {
            break;
        }
        let cell = cells.swap_remove(idx);
        // split the wider side along its longest edge
        let ca = centroid(&cell.corners_a);
        let cb = centroid(&cell.corners_b);
        let split_a = radius(&cell.corners_a, &ca) >= radius(&cell.corners_b, &cb);
        let corners = if split_a { &cell.corners_a } else { &cell.corners_b };
        let (mut ei, mut ej, mut elen) = (0, 0, -1.0);
        for i in 0..corners.len() {
            for j in i + 1..corners.len() {
                let d = linalg::dist(&corners[i], &corners[j]);
                if d > elen {
                    (ei, ej, elen) = (i, j, d);
                }
            }
        }
        let mid = linalg::scale(&linalg::add(&corners[ei], &corners[ej]), 0.5);
        for replace in [ei, ej] {
            let mut na = cell.corners_a.clone();
            let mut nb = cell.corners_b.clone();
            if split_a {
                na[replace] = mid.clone();
            } else {
                nb[replace] = mid.clone();
            }
            cells.push(make_cell(na, nb, lip_a, lip_b, &mut upper));
        }
        for c in &cells {
            if c.lower >= upper - ANGLE_TOL * 0.5 {
                retired_floor = retired_floor.min(c.lower);
            }
        }
        cells.retain(|c| c.lower < upper - ANGLE_TOL * 0.5);
    }
    let lower = cells
        .iter()
        .map(|c| c.lower)
        .fold(retired_floor.min(upper), f64::min);
    Ok(lower.max(0.0))
}

fn make_cell(
    corners_a: Vec<Vec<f64>>,
    corners_b: Vec<Vec<f64>>,
    lip_a: f64,
    lip_b: f64,
    upper: &mut f64,
) -> Cell {
    let ca = centroid(&corners_a);
    let cb = centroid(&corners_b);
    let val = angle_between(&ca, &cb);
    for pa in &corners_a {
        for pb in &corners_b {
            let v = angle_between(pa, pb);
            if v < *upper {
                *upper = v;
            }
        }
    }
    if val < *upper {
        *upper = val;
    }
    let lower = val - lip_a * radius(&corners_a, &ca) - lip_b * radius(&corners_b, &cb);
    Cell { corners_a, corners_b, lower }
}

/// Points of the barycentric lattice with denominator `t` mapped into the
/// hull of `points`.
fn barycentric_grid(points: &[Vec<f64>], t: usize) -> Vec<Vec<f64>> {
    let m = points.len();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = alloc::vec![(Vec::new(), t)];
    while let Some((prefix, rem)) = stack.pop() {
        if prefix.len() == m - 1 {
            let mut coeffs = prefix.clone();
            coeffs.push(rem);
            let mut p = alloc::vec![0.0; points[0].len()];
            for (c, pt) in coeffs.iter().zip(points) {
                linalg::axpy(&mut p, *c as f64 / t as f64, pt);
            }
            out.push(p);
        } else {
            for take in 0..=rem {
                let mut next = prefix.clone();
                next.push(take);
                stack.push((next, rem - take));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use alloc::vec;

    fn square_cycle() -> EmbeddedComplex {
        let x = SimplicialComplex::build(
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            4,
        )
        .unwrap();
        EmbeddedComplex::new(
            x,
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
        )
        .unwrap()
    }

    #[test]
    fn square_corner_link() {
        let e = square_cycle();
        let lk = link_embedding(&e, &[0]).unwrap();
        assert_eq!(lk.vertex_to_parent, vec![1, 3]);
        assert!(linalg::dist(&lk.directions[0], &[1.0, 0.0]) < 1e-12);
        assert!(linalg::dist(&lk.directions[1], &[0.0, 1.0]) < 1e-12);
        let th = link_thickness(&lk).unwrap();
        let r = th.radians().unwrap();
        assert!((r - core::f64::consts::FRAC_PI_2).abs() < 1e-9, "{}", r);
    }

    #[test]
    fn tetrahedron_edge_link_is_orthogonal_to_edge() {
        // regular tetrahedron: vertices e_i / sqrt(2) in R^4, edge length 1
        let x = SimplicialComplex::build(
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            4,
        )
        .unwrap();
        let s = 1.0 / (2.0f64).sqrt();
        let coords: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { s } else { 0.0 }).collect())
            .collect();
        let e = EmbeddedComplex::new(x, 4, coords.clone()).unwrap();
        let lk = link_embedding(&e, &[0, 1]).unwrap();
        assert_eq!(lk.vertex_to_parent, vec![2, 3]);
        let edge_dir = linalg::sub(&coords[1], &coords[0]);
        for d in &lk.directions {
            assert!((linalg::norm(d) - 1.0).abs() < 1e-9);
            assert!(linalg::dot(d, &edge_dir).abs() < 1e-9);
        }
    }

    #[test]
    fn collinear_path_gives_antipodal_zero_sphere() {
        let x = SimplicialComplex::build(&[vec![0, 1], vec![1, 2]], 3).unwrap();
        let e = EmbeddedComplex::new(x, 1, vec![vec![0.0], vec![1.0], vec![3.0]]).unwrap();
        let lk = link_embedding(&e, &[1]).unwrap();
        assert_eq!(lk.sphere_dim, 0);
        assert_eq!(lk.directions, vec![vec![-1.0], vec![1.0]]);
        let th = link_thickness(&lk).unwrap();
        assert!((th.radians().unwrap() - core::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn single_simplex_link_has_no_disjoint_pairs() {
        let x = SimplicialComplex::build(&[vec![0, 1]], 2).unwrap();
        let e = EmbeddedComplex::new(x, 2, vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let lk = link_embedding(&e, &[0]).unwrap();
        assert_eq!(link_thickness(&lk).unwrap(), LinkThickness::NoDisjointPairs);
    }

    #[test]
    fn degenerate_simplex_rejected() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2]], 3).unwrap();
        let e = EmbeddedComplex::new(
            x,
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]],
        )
        .unwrap();
        assert!(matches!(link_embedding(&e, &[0, 1, 2]), Err(Error::DegenerateSimplex(_))));
    }

    #[test]
    fn cone_angle_between_segments_matches_brute_force() {
        // two arcs on S^2
        let a = vec![
            linalg::scale(&[1.0, 0.0, 0.0], 1.0),
            linalg::scale(&[0.0, 1.0, 0.0], 1.0),
        ];
        let b = vec![
            {
                let v = [1.0, 1.0, 3.0];
                linalg::scale(&v, 1.0 / linalg::norm(&v))
            },
            {
                let v = [-1.0, 0.5, 2.0];
                linalg::scale(&v, 1.0 / linalg::norm(&v))
            },
        ];
        let got = min_cone_angle(&a, &b).unwrap();
        // dense parameter sweep oracle
        let mut oracle = f64::INFINITY;
        let m = 2000;
        for i in 0..=m {
            let s = i as f64 / m as f64;
            let x: Vec<f64> = (0..3).map(|k| (1.0 - s) * a[0][k] + s * a[1][k]).collect();
            for j in 0..=m {
                let t = j as f64 / m as f64;
                let y: Vec<f64> = (0..3).map(|k| (1.0 - t) * b[0][k] + t * b[1][k]).collect();
                oracle = oracle.min(angle_between(&x, &y));
            }
        }
        assert!(got <= oracle + 1e-9, "lower bound exceeded oracle: {} vs {}", got, oracle);
        assert!(oracle - got <= ANGLE_TOL + 1e-6, "bound too loose: {} vs {}", got, oracle);
    }
}
