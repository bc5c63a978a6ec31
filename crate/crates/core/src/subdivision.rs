//! Edgewise subdivision with parameter `t`.
//!
//! Each d-simplex is refined into t^d simplices on the 1/t barycentric
//! lattice: the children are the cells of the staircase (Kuhn) triangulation
//! of the dilated simplex, restricted to the order region
//! t >= y_1 >= ... >= y_d >= 0. The construction is compatible with
//! order-preserving face inclusions, so subdividing simplex by simplex with
//! vertices in increasing id order glues into a subdivision of the complex.
//! Barycentric bookkeeping stays in integers with denominator `t`; floats
//! appear only when an embedding is refined.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::Error;
use crate::geometry::links::{link_embedding, SphericalLinkEmbedding};
use crate::geometry::EmbeddedComplex;
use crate::linalg;

/// Correspondence between a complex and its edgewise subdivision.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionMap {
    pub parent: SimplicialComplex,
    pub child: SimplicialComplex,
    pub t: usize,
    /// child vertex -> (carrier parent simplex, barycentric numerators over
    /// the carrier; denominators are all `t`)
    pub vertex_coords: Vec<(Simplex, Vec<usize>)>,
    /// child top simplex -> the parent maximal simplex it refines
    pub simplex_parent: BTreeMap<Simplex, Simplex>,
}

/// Child-vertex key: the positive barycentric numerators over parent
/// vertices. Shared faces produce identical keys from either side.
type VertexKey = Vec<(VertexId, usize)>;

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..d).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    if d == 0 {
        out.push(Vec::new());
    } else {
        heap(d, &mut items, &mut out);
    }
    out
}

/// Lattice vertices of the Kuhn cells of the order region, as barycentric
/// numerators over a d-simplex. Returns the child top simplices, each a list
/// of (d+1)-long numerator vectors.
fn kuhn_children(d: usize, t: usize) -> Vec<Vec<Vec<usize>>> {
    if d == 0 {
        return vec![vec![vec![t]]];
    }
    let in_region = |y: &[i64]| -> bool {
        if y[0] > t as i64 || y[d - 1] < 0 {
            return false;
        }
        y.windows(2).all(|w| w[0] >= w[1])
    };
    let to_numerators = |y: &[i64]| -> Vec<usize> {
        let mut a = Vec::with_capacity(d + 1);
        a.push((t as i64 - y[0]) as usize);
        for j in 0..d - 1 {
            a.push((y[j] - y[j + 1]) as usize);
        }
        a.push(y[d - 1] as usize);
        a
    };
    let perms = permutations(d);
    let mut out = Vec::new();
    let mut corner = vec![0i64; d];
    loop {
        'perm: for pi in &perms {
            let mut verts: Vec<Vec<i64>> = Vec::with_capacity(d + 1);
            let mut y = corner.clone();
            if !in_region(&y) {
                // the walk may still re-enter; check every vertex
            }
            verts.push(y.clone());
            for &axis in pi {
                y[axis] += 1;
                verts.push(y.clone());
            }
            for v in &verts {
                if !in_region(v) {
                    continue 'perm;
                }
            }
            out.push(verts.iter().map(|v| to_numerators(v)).collect());
        }
        let mut carry = 0;
        while carry < d {
            corner[carry] += 1;
            if corner[carry] < t as i64 {
                break;
            }
            corner[carry] = 0;
            carry += 1;
        }
        if carry == d {
            break;
        }
    }
    out
}

fn key_of(parent: &Simplex, numerators: &[usize]) -> VertexKey {
    parent
        .iter()
        .zip(numerators)
        .filter(|(_, &a)| a > 0)
        .map(|(&v, &a)| (v, a))
        .collect()
}

/// Edgewise subdivision of every simplex of `x` with parameter `t`.
/// `t = 1` returns the identity subdivision.
pub fn edgewise_subdivide(x: &SimplicialComplex, t: usize) -> Result<SubdivisionMap, Error> {
    if t == 0 {
        return Err(Error::InvalidParameter("subdivision parameter must be >= 1"));
    }
    let maximal = x.maximal_simplices();
    // first pass: canonical child vertex ids from sorted keys
    let mut keys: Vec<VertexKey> = Vec::new();
    let mut children_by_parent: Vec<(Simplex, Vec<Vec<VertexKey>>)> = Vec::new();
    for m in &maximal {
        let d = m.len() - 1;
        let cells = kuhn_children(d, t);
        let cell_keys: Vec<Vec<VertexKey>> = cells
            .iter()
            .map(|cell| cell.iter().map(|a| key_of(m, a)).collect())
            .collect();
        for cell in &cell_keys {
            keys.extend(cell.iter().cloned());
        }
        children_by_parent.push((m.clone(), cell_keys));
    }
    keys.sort();
    keys.dedup();
    let id_of: BTreeMap<&VertexKey, usize> =
        keys.iter().enumerate().map(|(i, k)| (k, i)).collect();

    let mut tops: Vec<Simplex> = Vec::new();
    let mut simplex_parent = BTreeMap::new();
    for (m, cells) in &children_by_parent {
        for cell in cells {
            let mut s: Simplex = cell.iter().map(|k| id_of[k]).collect();
            s.sort_unstable();
            debug_assert!(s.windows(2).all(|w| w[0] != w[1]));
            simplex_parent.insert(s.clone(), m.clone());
            tops.push(s);
        }
    }
    let child = SimplicialComplex::build(&tops, keys.len())?;
    let vertex_coords: Vec<(Simplex, Vec<usize>)> = keys
        .iter()
        .map(|k| {
            let carrier: Simplex = k.iter().map(|&(v, _)| v).collect();
            let nums: Vec<usize> = k.iter().map(|&(_, a)| a).collect();
            (carrier, nums)
        })
        .collect();
    Ok(SubdivisionMap { parent: x.clone(), child, t, vertex_coords, simplex_parent })
}

impl SubdivisionMap {
    /// Child top simplices refining one parent maximal simplex.
    pub fn children_of(&self, parent: &Simplex) -> Vec<Simplex> {
        self.simplex_parent
            .iter()
            .filter(|(_, p)| *p == parent)
            .map(|(c, _)| c.clone())
            .collect()
    }

    /// Affine image of a child vertex under an embedding of the parent.
    pub fn child_point(&self, v: VertexId, parent_embedding: &EmbeddedComplex) -> Vec<f64> {
        let (carrier, nums) = &self.vertex_coords[v];
        let mut p = vec![0.0; parent_embedding.ambient_dim()];
        for (&pv, &a) in carrier.iter().zip(nums) {
            linalg::axpy(&mut p, a as f64 / self.t as f64, parent_embedding.point(pv));
        }
        p
    }
}

/// Refines an embedding along the subdivision: child vertices go to the
/// affine images of their barycentric coordinates, so the image point set of
/// every parent simplex is unchanged.
pub fn subdivide_embedding(
    e: &EmbeddedComplex,
    t: usize,
) -> Result<(EmbeddedComplex, SubdivisionMap), Error> {
    let map = edgewise_subdivide(e.complex(), t)?;
    let points: Vec<Vec<f64>> =
        (0..map.child.vertex_count()).map(|v| map.child_point(v, e)).collect();
    let child = EmbeddedComplex::new(map.child.clone(), e.ambient_dim(), points)?;
    Ok((child, map))
}

/// Number of congruence classes of the child top simplices of one parent,
/// with congruence decided by sorted edge-length multisets equal within
/// relative 1e-9.
pub fn isometry_class_count(
    child_embedding: &EmbeddedComplex,
    map: &SubdivisionMap,
    parent: &Simplex,
) -> Result<usize, Error> {
    if parent.len() > 1 {
        let parent_pts: Vec<Vec<f64>> = parent
            .iter()
            .map(|&v| {
                // parent vertices persist as child vertices with numerator t
                let key_target: (Simplex, Vec<usize>) = (vec![v], vec![map.t]);
                let id = map
                    .vertex_coords
                    .iter()
                    .position(|vc| *vc == key_target)
                    .expect("parent vertex survives subdivision");
                child_embedding.point(id).to_vec()
            })
            .collect();
        if crate::geometry::simplex_points_degenerate(&parent_pts) {
            return Err(Error::DegenerateSimplex(parent.clone()));
        }
    }
    let children = map.children_of(parent);
    if children.is_empty() {
        return Err(Error::SimplexNotFound(parent.clone()));
    }
    let mut classes: Vec<Vec<f64>> = Vec::new();
    for c in &children {
        let pts = child_embedding.simplex_points(c);
        let mut edges = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                edges.push(linalg::dist(&pts[i], &pts[j]));
            }
        }
        edges.sort_by(f64::total_cmp);
        let matches = |class: &Vec<f64>| {
            class.len() == edges.len()
                && class
                    .iter()
                    .zip(&edges)
                    .all(|(a, b)| (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-300))
        };
        if !classes.iter().any(matches) {
            classes.push(edges);
        }
    }
    Ok(classes.len())
}

/// Outcome of the interior-link isometry verification.
#[derive(Debug, Clone, PartialEq)]
pub enum LinkIsometryOutcome {
    /// No interior vertices to compare (t too small for the dimension).
    Vacuous,
    Pass,
    Fail { detail: alloc::string::String },
}

/// Verifies on a subdivided standard simplex that all interior-vertex links
/// are isometric (pairwise, up to an orthogonal transformation, within 1e-6)
/// and that each boundary-vertex link embeds into the interior configuration.
pub fn interior_link_isometry_check(
    map: &SubdivisionMap,
    child_embedding: &EmbeddedComplex,
) -> Result<LinkIsometryOutcome, Error> {
    let full_dim = map.parent.dimension() + 1;
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    for (v, (carrier, _)) in map.vertex_coords.iter().enumerate() {
        if carrier.len() == full_dim {
            interior.push(v);
        } else {
            boundary.push(v);
        }
    }
    if interior.is_empty() {
        return Ok(LinkIsometryOutcome::Vacuous);
    }
    let configs: Vec<SphericalLinkEmbedding> = interior
        .iter()
        .map(|&v| link_embedding(child_embedding, &[v]))
        .collect::<Result<_, _>>()?;
    for (i, c) in configs.iter().enumerate().skip(1) {
        if !congruent(&configs[0], c, false) {
            return Ok(LinkIsometryOutcome::Fail {
                detail: alloc::format!(
                    "interior vertices {} and {} have non-isometric links",
                    interior[0],
                    interior[i]
                ),
            });
        }
    }
    for &v in &boundary {
        let c = link_embedding(child_embedding, &[v])?;
        if !congruent(&c, &configs[0], true) {
            return Ok(LinkIsometryOutcome::Fail {
                detail: alloc::format!(
                    "boundary vertex {} link does not embed into the interior link",
                    v
                ),
            });
        }
    }
    Ok(LinkIsometryOutcome::Pass)
}

const MATCH_TOL: f64 = 1e-6;

/// Searches for a Gram-preserving, simplex-preserving map from `a`'s link
/// vertices to `b`'s. With `injection_only` an injection suffices; otherwise
/// a bijection is required. Gram preservation pins the configurations up to
/// an orthogonal transformation.
fn congruent(a: &SphericalLinkEmbedding, b: &SphericalLinkEmbedding, injection_only: bool) -> bool {
    let na = a.directions.len();
    let nb = b.directions.len();
    if na > nb || (!injection_only && na != nb) {
        return false;
    }
    let sims_b: alloc::collections::BTreeSet<Vec<usize>> = b
        .simplices
        .iter()
        .map(|(s, _)| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let mut assignment: Vec<usize> = Vec::with_capacity(na);
    backtrack(a, b, &sims_b, &mut assignment)
}

fn backtrack(
    a: &SphericalLinkEmbedding,
    b: &SphericalLinkEmbedding,
    sims_b: &alloc::collections::BTreeSet<Vec<usize>>,
    assignment: &mut Vec<usize>,
) -> bool {
    let i = assignment.len();
    if i == a.directions.len() {
        // all pairwise dots already checked; verify simplices map to simplices
        return a.simplices.iter().all(|(s, _)| {
            let mut img: Vec<usize> = s.iter().map(|&v| assignment[v]).collect();
            img.sort_unstable();
            sims_b.contains(&img)
        });
    }
    'cand: for cand in 0..b.directions.len() {
        if assignment.contains(&cand) {
            continue;
        }
        for (j, &aj) in assignment.iter().enumerate() {
            let da = linalg::dot(&a.directions[i], &a.directions[j]);
            let db = linalg::dot(&b.directions[cand], &b.directions[aj]);
            if (da - db).abs() > MATCH_TOL {
                continue 'cand;
            }
        }
        assignment.push(cand);
        if backtrack(a, b, sims_b, assignment) {
            return true;
        }
        assignment.pop();
    }
    false
}

/// The standard regular d-simplex: vertices e_i / sqrt(2) in R^(d+1), all
/// edges of length 1.
pub fn standard_simplex_embedding(d: usize) -> EmbeddedComplex {
    let tops = vec![(0..=d).collect::<Vec<_>>()];
    let x = SimplicialComplex::build(&tops, d + 1).unwrap();
    let s = 1.0 / crate::mathx::sqrt(2.0);
    let pts: Vec<Vec<f64>> = (0..=d)
        .map(|i| (0..=d).map(|j| if i == j { s } else { 0.0 }).collect())
        .collect();
    EmbeddedComplex::new(x, d + 1, pts).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::simplex_volume;

    #[test]
    fn rejects_t_zero() {
        let x = SimplicialComplex::build(&[vec![0, 1]], 2).unwrap();
        assert!(edgewise_subdivide(&x, 0).is_err());
    }

    #[test]
    fn identity_subdivision() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2]], 3).unwrap();
        let map = edgewise_subdivide(&x, 1).unwrap();
        assert_eq!(map.child.simplex_count(), x.simplex_count());
        assert_eq!(map.child.count_of_dim(2), 1);
    }

    #[test]
    fn edge_t3_is_path() {
        let x = SimplicialComplex::build(&[vec![0, 1]], 2).unwrap();
        let map = edgewise_subdivide(&x, 3).unwrap();
        assert_eq!(map.child.vertex_count(), 4);
        assert_eq!(map.child.count_of_dim(1), 3);
    }

    #[test]
    fn triangle_t2_counts() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2]], 3).unwrap();
        let map = edgewise_subdivide(&x, 2).unwrap();
        assert_eq!(map.child.count_of_dim(2), 4);
        assert_eq!(map.child.vertex_count(), 6);
    }

    #[test]
    fn tetrahedron_t2_counts() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2, 3]], 4).unwrap();
        let map = edgewise_subdivide(&x, 2).unwrap();
        assert_eq!(map.child.count_of_dim(3), 8);
    }

    #[test]
    fn per_parent_child_count_is_t_pow_d() {
        for d in 1..=3usize {
            let x = SimplicialComplex::build(&[(0..=d).collect()], d + 1).unwrap();
            for t in 1..=5usize {
                let map = edgewise_subdivide(&x, t).unwrap();
                assert_eq!(
                    map.child.count_of_dim(d),
                    t.pow(d as u32),
                    "d={} t={}",
                    d,
                    t
                );
                // barycentric bookkeeping: numerators sum to t
                for (_, nums) in &map.vertex_coords {
                    assert_eq!(nums.iter().sum::<usize>(), t);
                    assert!(nums.iter().all(|&a| a > 0));
                }
            }
        }
    }

    #[test]
    fn restriction_to_face_matches_face_subdivision() {
        // subdividing a triangle and restricting to an edge = subdividing the edge
        for t in 2..=4usize {
            let tri = SimplicialComplex::build(&[vec![0, 1, 2]], 3).unwrap();
            let map = edgewise_subdivide(&tri, t).unwrap();
            // child vertices carried by edge {0,1}
            let on_edge: Vec<usize> = map
                .vertex_coords
                .iter()
                .enumerate()
                .filter(|(_, (c, _))| c.iter().all(|v| *v <= 1))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(on_edge.len(), t + 1);
            // child edges inside the parent edge form a path: t of them
            let inside = map
                .child
                .edges()
                .filter(|e| e.iter().all(|v| on_edge.contains(v)))
                .count();
            assert_eq!(inside, t);
        }
    }

    #[test]
    fn shared_faces_glue() {
        // two triangles sharing an edge stay glued after subdivision
        let x = SimplicialComplex::build(&[vec![0, 1, 2], vec![1, 2, 3]], 4).unwrap();
        let map = edgewise_subdivide(&x, 3).unwrap();
        assert_eq!(map.child.count_of_dim(2), 18);
        // Euler characteristic of a disk: V - E + F = 1
        let v = map.child.vertex_count() as i64;
        let e = map.child.count_of_dim(1) as i64;
        let f = map.child.count_of_dim(2) as i64;
        assert_eq!(v - e + f, 1);
    }

    #[test]
    fn unit_segment_refinement_coordinates() {
        let x = SimplicialComplex::build(&[vec![0, 1]], 2).unwrap();
        let e = EmbeddedComplex::new(x, 1, vec![vec![0.0], vec![1.0]]).unwrap();
        let (child, _) = subdivide_embedding(&e, 2).unwrap();
        let mut xs: Vec<f64> = (0..child.complex().vertex_count())
            .map(|v| child.point(v)[0])
            .collect();
        xs.sort_by(f64::total_cmp);
        assert_eq!(xs, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn t1_embedding_identity() {
        let e = standard_simplex_embedding(2);
        let (child, _) = subdivide_embedding(&e, 1).unwrap();
        assert_eq!(child.points(), e.points());
    }

    #[test]
    fn equilateral_triangle_t2_children_congruent_halfsize() {
        let e = standard_simplex_embedding(2);
        let (child, map) = subdivide_embedding(&e, 2).unwrap();
        let parent = vec![0, 1, 2];
        assert_eq!(isometry_class_count(&child, &map, &parent).unwrap(), 1);
        for c in map.children_of(&parent) {
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    let d = linalg::dist(child.point(c[i]), child.point(c[j]));
                    assert!((d - 0.5).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn tetrahedron_isometry_classes_within_bound() {
        let e = standard_simplex_embedding(3);
        let (child, map) = subdivide_embedding(&e, 2).unwrap();
        let classes = isometry_class_count(&child, &map, &vec![0, 1, 2, 3]).unwrap();
        assert!(classes <= 3, "d!/2 = 3, got {}", classes); // d!/2 for d=3
    }

    #[test]
    fn volume_is_conserved() {
        for d in 1..=3usize {
            let e = standard_simplex_embedding(d);
            let parent_vol = simplex_volume(&e.simplex_points(&(0..=d).collect::<Vec<_>>()));
            for t in 1..=4usize {
                let (child, map) = subdivide_embedding(&e, t).unwrap();
                let total: f64 = map
                    .children_of(&(0..=d).collect::<Vec<_>>())
                    .iter()
                    .map(|c| simplex_volume(&child.simplex_points(c)))
                    .sum();
                assert!(
                    (total - parent_vol).abs() < 1e-9,
                    "d={} t={}: {} vs {}",
                    d,
                    t,
                    total,
                    parent_vol
                );
            }
        }
    }

    #[test]
    fn interior_links_on_segment_and_triangle() {
        for (d, t) in [(1usize, 3usize), (2, 3), (2, 4), (2, 5)] {
            let e = standard_simplex_embedding(d);
            let (child, map) = subdivide_embedding(&e, t).unwrap();
            let outcome = interior_link_isometry_check(&map, &child).unwrap();
            assert_eq!(outcome, LinkIsometryOutcome::Pass, "d={} t={}", d, t);
        }
    }

    #[test]
    fn interior_links_vacuous_for_small_t() {
        let e = standard_simplex_embedding(2);
        let (child, map) = subdivide_embedding(&e, 2).unwrap();
        assert_eq!(
            interior_link_isometry_check(&map, &child).unwrap(),
            LinkIsometryOutcome::Vacuous
        );
    }
}
