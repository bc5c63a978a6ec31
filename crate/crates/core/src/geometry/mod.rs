//! Metric measurements on straight-line embedded complexes.
//!
//! All operations are pure queries on an immutable [`EmbeddedComplex`];
//! thickness scans and crossing sweeps reduce by exact min/max, so results
//! are independent of any work partitioning.

pub mod distance;
pub mod links;
pub mod miniball;
pub mod spatial;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{disjoint, Simplex, SimplicialComplex, VertexId};
use crate::error::Error;
use crate::linalg;
use crate::mathx;
use crate::rng::SeededRng;

pub use distance::{point_affine_distance, point_simplex_distance, simplex_distance, DistanceWitness};
pub use links::{link_embedding, link_thickness, LinkThickness, SphericalLinkEmbedding};
pub use miniball::{enclosing_ball, Ball};

/// A simplex is degenerate when the smallest eigenvalue of its edge-vector
/// Gram matrix falls below this times the squared longest edge.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// A simplicial complex with straight-line vertex coordinates in R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedComplex {
    complex: SimplicialComplex,
    ambient_dim: usize,
    /// row-major, `vertex_count * ambient_dim`
    coords: Vec<f64>,
}

/// Gromov-Guth thickness: the minimum distance over vertex-disjoint simplex
/// pairs, or a sentinel when no such pair exists.
#[derive(Debug, Clone, PartialEq)]
pub enum GgThickness {
    NoDisjointPairs,
    Value { distance: f64, witness: (Simplex, Simplex) },
}

impl GgThickness {
    pub fn distance(&self) -> Option<f64> {
        match self {
            GgThickness::NoDisjointPairs => None,
            GgThickness::Value { distance, .. } => Some(*distance),
        }
    }
}

/// Aggregated certification of one embedding.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThicknessReport {
    /// `None` encodes "no disjoint pairs".
    pub gg_thickness: Option<f64>,
    pub witness: Option<(Simplex, Simplex)>,
    /// Minimum angular link thickness over all simplices whose link has a
    /// disjoint pair; `None` when no simplex has one.
    pub min_link_thickness: Option<f64>,
    pub min_link_witness: Option<(Simplex, (Simplex, Simplex))>,
    pub edge_min: Option<f64>,
    pub edge_max: Option<f64>,
    pub enclosing_radius: f64,
}

/// How to sample ball centers for [`EmbeddedComplex::max_crossing`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SampleSpec {
    /// Lattice of the given pitch anchored at the enclosing-ball center.
    LatticePitch(f64),
    /// Seeded uniform samples from the enclosing ball.
    Random { count: usize, seed: u64 },
}

impl EmbeddedComplex {
    pub fn new(
        complex: SimplicialComplex,
        ambient_dim: usize,
        points: Vec<Vec<f64>>,
    ) -> Result<Self, Error> {
        if ambient_dim == 0 {
            return Err(Error::InvalidParameter("ambient dimension must be >= 1"));
        }
        if points.len() != complex.vertex_count() {
            return Err(Error::InvalidParameter("coordinate count != vertex count"));
        }
        let mut coords = Vec::with_capacity(points.len() * ambient_dim);
        for p in &points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch { left: ambient_dim, right: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter("non-finite coordinate"));
            }
            coords.extend_from_slice(p);
        }
        Ok(EmbeddedComplex { complex, ambient_dim, coords })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, v: VertexId) -> &[f64] {
        &self.coords[v * self.ambient_dim..(v + 1) * self.ambient_dim]
    }

    pub fn set_point(&mut self, v: VertexId, p: &[f64]) {
        debug_assert_eq!(p.len(), self.ambient_dim);
        self.coords[v * self.ambient_dim..(v + 1) * self.ambient_dim].copy_from_slice(p);
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.complex.vertex_count()).map(|v| self.point(v).to_vec()).collect()
    }

    pub fn simplex_points(&self, s: &[VertexId]) -> Vec<Vec<f64>> {
        s.iter().map(|&v| self.point(v).to_vec()).collect()
    }

    /// Uniform rescale about the origin.
    pub fn scaled(&self, factor: f64) -> EmbeddedComplex {
        let mut out = self.clone();
        for x in out.coords.iter_mut() {
            *x *= factor;
        }
        out
    }

    /// True when the smallest Gram eigenvalue of the simplex's edge vectors
    /// is below [`DEGENERACY_TOL`] times the squared longest edge.
    pub fn simplex_degenerate(&self, s: &[VertexId]) -> bool {
        simplex_points_degenerate(&self.simplex_points(s))
    }

    /// Injectivity check of the straight-line map: every simplex must be
    /// nondegenerate and every disjoint pair at positive distance.
    pub fn validate(&self) -> Result<(), Error> {
        for s in self.complex.all_simplices() {
            if s.len() > 1 && self.simplex_degenerate(s) {
                return Err(Error::InvalidEmbedding(alloc::format!(
                    "degenerate simplex {:?}",
                    s
                )));
            }
        }
        match self.gg_thickness() {
            GgThickness::Value { distance, witness } if distance <= 0.0 => {
                Err(Error::InvalidEmbedding(alloc::format!(
                    "disjoint simplices {:?} and {:?} intersect",
                    witness.0,
                    witness.1
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn edge_length(&self, e: &[VertexId]) -> f64 {
        linalg::dist(self.point(e[0]), self.point(e[1]))
    }

    /// (min, max) edge length; `None` when the complex has no edges.
    pub fn edge_length_stats(&self) -> Option<(f64, f64)> {
        let mut stats = None;
        for e in self.complex.edges() {
            let l = self.edge_length(e);
            stats = Some(match stats {
                None => (l, l),
                Some((lo, hi)) => (l.min(lo), l.max(hi)),
            });
        }
        stats
    }

    /// Radius of the minimal enclosing ball of the vertex images.
    pub fn enclosing_radius(&self) -> f64 {
        self.enclosing_ball().radius
    }

    pub fn enclosing_ball(&self) -> Ball {
        enclosing_ball(&self.points())
    }

    /// Gromov-Guth thickness: exact minimum of [`simplex_distance`] over all
    /// unordered vertex-disjoint simplex pairs. Large complexes are pruned
    /// with a spatial hash; the result matches the all-pairs scan exactly.
    pub fn gg_thickness(&self) -> GgThickness {
        self.gg_thickness_with_hint(None)
    }

    /// As [`gg_thickness`](Self::gg_thickness), seeded with a known upper
    /// bound on the answer (e.g. from an incremental optimizer).
    pub fn gg_thickness_with_hint(&self, upper_hint: Option<f64>) -> GgThickness {
        let simplices: Vec<&Simplex> = self.complex.all_simplices().collect();
        if simplices.len() <= 512 {
            self.gg_brute(&simplices)
        } else {
            self.gg_pruned(&simplices, upper_hint)
        }
    }

    fn gg_brute(&self, simplices: &[&Simplex]) -> GgThickness {
        let mut best: Option<(f64, (Simplex, Simplex))> = None;
        let pts: Vec<Vec<Vec<f64>>> = simplices.iter().map(|s| self.simplex_points(s)).collect();
        let boxes: Vec<_> = pts.iter().map(|p| spatial::bounding_box(p)).collect();
        for i in 0..simplices.len() {
            for j in i + 1..simplices.len() {
                if !disjoint(simplices[i], simplices[j]) {
                    continue;
                }
                if let Some((cur, _)) = &best {
                    let gap = spatial::box_gap(&boxes[i].0, &boxes[i].1, &boxes[j].0, &boxes[j].1);
                    if gap >= *cur {
                        continue;
                    }
                }
                let d = simplex_distance(&pts[i], &pts[j]).expect("same ambient dim").distance;
                if best.as_ref().is_none_or(|(cur, _)| d < *cur) {
                    best = Some((d, (simplices[i].clone(), simplices[j].clone())));
                }
            }
        }
        match best {
            None => GgThickness::NoDisjointPairs,
            Some((distance, witness)) => GgThickness::Value { distance, witness },
        }
    }

    fn gg_pruned(&self, simplices: &[&Simplex], upper_hint: Option<f64>) -> GgThickness {
        // upper bound: the minimum vertex-vertex distance is itself a
        // disjoint-pair distance (any two distinct vertices are disjoint)
        let vcount = self.complex.vertex_count();
        debug_assert!(vcount >= 2);
        let mut upper = upper_hint.unwrap_or(f64::INFINITY);
        if upper == f64::INFINITY {
            upper = self.min_vertex_pair_distance();
        }
        let pts: Vec<Vec<Vec<f64>>> = simplices.iter().map(|s| self.simplex_points(s)).collect();
        let boxes: Vec<_> = pts.iter().map(|p| spatial::bounding_box(p)).collect();
        let mean_extent = {
            let s: f64 = boxes
                .iter()
                .map(|(lo, hi)| hi.iter().zip(lo).map(|(h, l)| h - l).fold(0.0, f64::max))
                .sum();
            s / boxes.len() as f64
        };
        let cell = (upper.max(mean_extent)).max(1e-12);
        let mut hash = spatial::SpatialHash::new(cell, self.ambient_dim, simplices.len());
        for (i, (lo, hi)) in boxes.iter().enumerate() {
            hash.insert(i as u32, lo.clone(), hi.clone());
        }
        let mut best: Option<(f64, (Simplex, Simplex))> = None;
        for i in 0..simplices.len() {
            let margin = best.as_ref().map_or(upper, |(d, _)| *d);
            for j in hash.query(&boxes[i].0, &boxes[i].1, margin) {
                let j = j as usize;
                if j <= i || !disjoint(simplices[i], simplices[j]) {
                    continue;
                }
                let cur = best.as_ref().map_or(upper, |(d, _)| *d);
                let gap = spatial::box_gap(&boxes[i].0, &boxes[i].1, &boxes[j].0, &boxes[j].1);
                if gap > cur {
                    continue;
                }
                let d = simplex_distance(&pts[i], &pts[j]).expect("same ambient dim").distance;
                if best.as_ref().is_none_or(|(b, _)| d < *b) {
                    best = Some((d, (simplices[i].clone(), simplices[j].clone())));
                }
            }
        }
        match best {
            // the upper bound is achieved by some vertex pair, so a miss can
            // only mean everything was pruned at exactly `upper`; rescan that
            // vertex pair to recover the witness
            None => {
                let (d, v, w) = self.min_vertex_pair_witness();
                GgThickness::Value { distance: d, witness: (vec![v], vec![w]) }
            }
            Some((distance, witness)) => GgThickness::Value { distance, witness },
        }
    }

    fn min_vertex_pair_distance(&self) -> f64 {
        self.min_vertex_pair_witness().0
    }

    fn min_vertex_pair_witness(&self) -> (f64, VertexId, VertexId) {
        let v = self.complex.vertex_count();
        let mut best = (f64::INFINITY, 0, 0);
        if v <= 4096 || self.ambient_dim > 4 {
            for i in 0..v {
                for j in i + 1..v {
                    let d = linalg::dist(self.point(i), self.point(j));
                    if d < best.0 {
                        best = (d, i, j);
                    }
                }
            }
            return best;
        }
        // grid sweep with growing cell size until some pair collides
        let ball = self.enclosing_ball();
        let mut cell = ((2.0 * ball.radius)
            / libm::pow(v as f64, 1.0 / self.ambient_dim as f64))
        .max(1e-12);
        for _ in 0..64 {
            let mut hash = spatial::SpatialHash::new(cell, self.ambient_dim, v);
            for i in 0..v {
                let p = self.point(i).to_vec();
                hash.insert(i as u32, p.clone(), p);
            }
            for i in 0..v {
                let p = self.point(i);
                for j in hash.query(p, p, cell) {
                    let j = j as usize;
                    if j > i {
                        let d = linalg::dist(p, self.point(j));
                        if d < best.0 {
                            best = (d, i, j);
                        }
                    }
                }
            }
            if best.0 <= cell {
                return best;
            }
            cell *= 2.0;
        }
        best
    }

    /// Number of simplices (all dimensions) within `radius` of `center`.
    pub fn ball_crossing_count(&self, center: &[f64], radius: f64) -> usize {
        assert!(radius > 0.0, "ball radius must be positive");
        self.complex
            .all_simplices()
            .filter(|s| self.simplex_within(s, center, radius))
            .count()
    }

    fn simplex_within(&self, s: &[VertexId], center: &[f64], radius: f64) -> bool {
        let pts = self.simplex_points(s);
        let (lo, hi) = spatial::bounding_box(&pts);
        if spatial::box_gap(&lo, &hi, center, center) > radius {
            return false;
        }
        point_simplex_distance(center, &pts).expect("dims match") <= radius
    }

    /// Maximum of [`ball_crossing_count`](Self::ball_crossing_count) over
    /// sampled centers inside the enclosing ball, with the achieving center.
    /// Deterministic given the spec.
    pub fn max_crossing(&self, radius: f64, spec: &SampleSpec) -> (usize, Vec<f64>) {
        let ball = self.enclosing_ball();
        let centers = self.sample_centers(&ball, spec);
        let mut best = (0usize, ball.center.clone());
        for c in centers {
            let count = self.ball_crossing_count(&c, radius);
            if count > best.0 {
                best = (count, c);
            }
        }
        best
    }

    pub(crate) fn sample_centers(&self, ball: &Ball, spec: &SampleSpec) -> Vec<Vec<f64>> {
        match spec {
            SampleSpec::LatticePitch(pitch) => {
                assert!(*pitch > 0.0);
                let n = self.ambient_dim;
                let steps = mathx::floor(ball.radius / pitch) as i64;
                let mut out = Vec::new();
                let mut idx = vec![-steps; n];
                loop {
                    let p: Vec<f64> = (0..n)
                        .map(|i| ball.center[i] + idx[i] as f64 * pitch)
                        .collect();
                    if linalg::dist(&p, &ball.center) <= ball.radius + 1e-12 {
                        out.push(p);
                    }
                    let mut carry = 0;
                    while carry < n {
                        idx[carry] += 1;
                        if idx[carry] <= steps {
                            break;
                        }
                        idx[carry] = -steps;
                        carry += 1;
                    }
                    if carry == n {
                        break;
                    }
                }
                out
            }
            SampleSpec::Random { count, seed } => {
                let mut rng = SeededRng::new(*seed);
                (0..*count).map(|_| rng.ball_point(&ball.center, ball.radius)).collect()
            }
        }
    }
}

/// True when the point tuple spans less than its full dimension, relative to
/// the squared longest edge.
pub fn simplex_points_degenerate(pts: &[Vec<f64>]) -> bool {
    if pts.len() <= 1 {
        return false;
    }
    let dirs: Vec<Vec<f64>> = pts[1..].iter().map(|p| linalg::sub(p, &pts[0])).collect();
    let mut gram = vec![vec![0.0; dirs.len()]; dirs.len()];
    for i in 0..dirs.len() {
        for j in 0..dirs.len() {
            gram[i][j] = linalg::dot(&dirs[i], &dirs[j]);
        }
    }
    let mut longest_sq = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = linalg::dist(&pts[i], &pts[j]);
            longest_sq = longest_sq.max(d * d);
        }
    }
    linalg::sym_eigen_min(&gram) < DEGENERACY_TOL * longest_sq
}

/// Altitude-ratio quality of a d-simplex (d >= 1): the least vertex altitude
/// over the affine hull of the opposite face, divided by the longest edge.
/// 0 for degenerate simplices; always in [0, 1].
pub fn simplex_quality(pts: &[Vec<f64>]) -> Result<f64, Error> {
    if pts.len() < 2 {
        return Err(Error::InvalidParameter("simplex_quality needs dimension >= 1"));
    }
    if simplex_points_degenerate(pts) {
        return Ok(0.0);
    }
    let mut longest = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            longest = longest.max(linalg::dist(&pts[i], &pts[j]));
        }
    }
    let mut min_alt = f64::INFINITY;
    for i in 0..pts.len() {
        let opposite: Vec<Vec<f64>> =
            pts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        min_alt = min_alt.min(point_affine_distance(&pts[i], &opposite));
    }
    Ok((min_alt / longest).clamp(0.0, 1.0))
}

/// d-dimensional volume of a d-simplex from its Cayley-Menger determinant.
pub fn simplex_volume(pts: &[Vec<f64>]) -> f64 {
    let d = pts.len() - 1;
    if d == 0 {
        return 0.0;
    }
    let m = pts.len() + 1;
    let mut cm = vec![vec![1.0; m]; m];
    cm[0][0] = 0.0;
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            let dij = linalg::dist(&pts[i], &pts[j]);
            cm[i + 1][j + 1] = dij * dij;
        }
    }
    let det = linalg::det(&mut cm);
    let mut fact = 1.0;
    for k in 1..=d {
        fact *= k as f64;
    }
    let sign = if d % 2 == 0 { -1.0 } else { 1.0 };
    let v2 = sign * det / (mathx::powi(2.0, d as i32) * fact * fact);
    mathx::sqrt(v2.max(0.0))
}

/// Full certification of an embedding: thickness with witness, minimum link
/// thickness over all simplices, edge statistics and enclosing radius.
pub fn thickness_report(e: &EmbeddedComplex) -> Result<ThicknessReport, Error> {
    let gg = e.gg_thickness();
    let (gg_thickness, witness) = match gg {
        GgThickness::NoDisjointPairs => (None, None),
        GgThickness::Value { distance, witness } => (Some(distance), Some(witness)),
    };
    let (min_link_thickness, min_link_witness) = min_link_thickness(e)?;
    let (edge_min, edge_max) = match e.edge_length_stats() {
        None => (None, None),
        Some((lo, hi)) => (Some(lo), Some(hi)),
    };
    Ok(ThicknessReport {
        gg_thickness,
        witness,
        min_link_thickness,
        min_link_witness,
        edge_min,
        edge_max,
        enclosing_radius: e.enclosing_radius(),
    })
}

/// Minimum link thickness over all simplices whose link has a disjoint pair.
#[allow(clippy::type_complexity)]
pub fn min_link_thickness(
    e: &EmbeddedComplex,
) -> Result<(Option<f64>, Option<(Simplex, (Simplex, Simplex))>), Error> {
    let mut best: Option<(f64, (Simplex, (Simplex, Simplex)))> = None;
    // incidence index so each link costs O(local load), not O(all simplices)
    let incidence = vertex_incidence(e.complex());
    for sigma in e.complex().all_simplices() {
        match fast_link_thickness(e, sigma, &incidence)? {
            LinkThickness::NoDisjointPairs => {}
            LinkThickness::Angle { radians, witness } => {
                if best.as_ref().is_none_or(|(cur, _)| radians < *cur) {
                    best = Some((radians, (sigma.clone(), witness)));
                }
            }
        }
    }
    Ok(match best {
        None => (None, None),
        Some((r, w)) => (Some(r), Some(w)),
    })
}

pub(crate) fn vertex_incidence(x: &SimplicialComplex) -> Vec<Vec<Simplex>> {
    let mut inc = vec![Vec::new(); x.vertex_count()];
    for s in x.all_simplices() {
        for &v in s {
            inc[v].push(s.clone());
        }
    }
    inc
}

/// Link thickness of one simplex using a precomputed incidence index;
/// equivalent to `link_thickness(&link_embedding(e, sigma)?)`.
pub(crate) fn fast_link_thickness(
    e: &EmbeddedComplex,
    sigma: &Simplex,
    incidence: &[Vec<Simplex>],
) -> Result<LinkThickness, Error> {
    let cofaces: Vec<&Simplex> = incidence[sigma[0]]
        .iter()
        .filter(|tau| tau.len() > sigma.len() && crate::complex::is_face(sigma, tau))
        .collect();
    if cofaces.len() < 2 {
        return Ok(LinkThickness::NoDisjointPairs);
    }
    let normal = links::NormalFrame::for_simplex(e, sigma)?;
    let mut dirs: BTreeMap<VertexId, Vec<f64>> = BTreeMap::new();
    let mut residues: Vec<Vec<VertexId>> = Vec::with_capacity(cofaces.len());
    for tau in &cofaces {
        let residue: Vec<VertexId> =
            tau.iter().copied().filter(|v| !sigma.contains(v)).collect();
        for &v in &residue {
            if !dirs.contains_key(&v) {
                let d = normal.direction(e.point(v)).ok_or(Error::DegenerateLink {
                    base: sigma.clone(),
                    vertex: v,
                })?;
                dirs.insert(v, d);
            }
        }
        residues.push(residue);
    }
    let mut best: Option<(f64, (Simplex, Simplex))> = None;
    for i in 0..residues.len() {
        for j in i + 1..residues.len() {
            if !disjoint(&residues[i], &residues[j]) {
                continue;
            }
            let a: Vec<Vec<f64>> = residues[i].iter().map(|v| dirs[v].clone()).collect();
            let b: Vec<Vec<f64>> = residues[j].iter().map(|v| dirs[v].clone()).collect();
            let angle = links::min_cone_angle(&a, &b)?;
            if best.as_ref().is_none_or(|(cur, _)| angle < *cur) {
                best = Some((angle, (cofaces[i].clone(), cofaces[j].clone())));
            }
        }
    }
    Ok(match best {
        None => LinkThickness::NoDisjointPairs,
        Some((radians, witness)) => LinkThickness::Angle { radians, witness },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn unit_square() -> EmbeddedComplex {
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
    fn triangle_thickness_is_vertex_to_opposite_edge() {
        // each vertex is disjoint from its opposite edge; the minimum is the
        // distance from the right-angle corner to the hypotenuse
        let x = SimplicialComplex::build(&[vec![0, 1, 2]], 3).unwrap();
        let e = EmbeddedComplex::new(
            x,
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
        )
        .unwrap();
        match e.gg_thickness() {
            GgThickness::Value { distance, witness } => {
                assert!((distance - core::f64::consts::SQRT_2 / 2.0).abs() < 1e-12);
                assert_eq!(witness, (vec![0], vec![1, 2]));
            }
            GgThickness::NoDisjointPairs => panic!("vertex/opposite-edge pairs exist"),
        }
    }

    #[test]
    fn lone_2_simplex_image_has_no_disjoint_pairs() {
        // an edge's endpoints are already disjoint simplices, so the only
        // complexes without disjoint pairs are cones over everything else;
        // a single vertex is the smallest example
        let x = SimplicialComplex::build(&[vec![0]], 1).unwrap();
        let e = EmbeddedComplex::new(x, 2, vec![vec![0.3, 0.4]]).unwrap();
        assert_eq!(e.gg_thickness(), GgThickness::NoDisjointPairs);
    }

    #[test]
    fn parallel_segments_thickness_one() {
        let x = SimplicialComplex::build(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        let e = EmbeddedComplex::new(
            x,
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
        )
        .unwrap();
        match e.gg_thickness() {
            GgThickness::Value { distance, .. } => assert!((distance - 1.0).abs() < 1e-12),
            _ => panic!("expected a value"),
        }
    }

    #[test]
    fn unit_square_thickness_one() {
        let e = unit_square();
        assert!((e.gg_thickness().distance().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gg_scales_linearly() {
        let e = unit_square();
        let t1 = e.gg_thickness().distance().unwrap();
        let t3 = e.scaled(3.0).gg_thickness().distance().unwrap();
        assert!((t3 - 3.0 * t1).abs() < 1e-10);
    }

    #[test]
    fn edge_stats() {
        let e = unit_square();
        let (lo, hi) = e.edge_length_stats().unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
        let x = SimplicialComplex::build(&[vec![0, 1], vec![1, 2]], 3).unwrap();
        let p = EmbeddedComplex::new(x, 1, vec![vec![0.0], vec![1.0], vec![3.0]]).unwrap();
        let (lo, hi) = p.edge_length_stats().unwrap();
        assert_eq!((lo, hi), (1.0, 2.0));
    }

    #[test]
    fn enclosing_radius_examples() {
        let x = SimplicialComplex::build(&[], 1).unwrap();
        let one = EmbeddedComplex::new(x, 3, vec![vec![1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(one.enclosing_radius(), 0.0);
        let x2 = SimplicialComplex::build(&[], 2).unwrap();
        let two = EmbeddedComplex::new(x2, 2, vec![vec![-1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!((two.enclosing_radius() - 1.0).abs() < 1e-12);
        let e = unit_square();
        assert!((e.enclosing_radius() - (0.5f64).sqrt()).abs() < 1e-8);
    }

    #[test]
    fn crossing_counts_on_unit_square() {
        let e = unit_square();
        assert_eq!(e.ball_crossing_count(&[0.5, 0.5], 0.4), 0);
        assert_eq!(e.ball_crossing_count(&[0.5, 0.5], 0.6), 4);
        assert_eq!(e.ball_crossing_count(&[0.0, 0.0], 0.1), 3);
    }

    #[test]
    fn crossing_monotone_in_radius() {
        let e = unit_square();
        let mut last = 0;
        for r in [0.1, 0.3, 0.5, 0.52, 0.8, 1.2] {
            let c = e.ball_crossing_count(&[0.3, 0.4], r);
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn max_crossing_dominates_pointwise_and_matches_lattice_oracle() {
        let e = unit_square();
        let spec = SampleSpec::LatticePitch(0.25);
        let (max, _) = e.max_crossing(0.6, &spec);
        // oracle: explicit enumeration of the same lattice
        let ball = e.enclosing_ball();
        let centers = e.sample_centers(&ball, &spec);
        let oracle = centers
            .iter()
            .map(|c| e.ball_crossing_count(c, 0.6))
            .max()
            .unwrap();
        assert_eq!(max, oracle);
        assert!(max >= e.ball_crossing_count(&ball.center, 0.6));
        assert!(max >= 4);
    }

    #[test]
    fn quality_examples() {
        let eq = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, (3.0f64).sqrt() / 2.0],
        ];
        let q = simplex_quality(&eq).unwrap();
        assert!((q - (3.0f64).sqrt() / 2.0).abs() < 1e-9, "{}", q);
        let degenerate = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]];
        assert_eq!(simplex_quality(&degenerate).unwrap(), 0.0);
        let right = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!((simplex_quality(&right).unwrap() - 0.5).abs() < 1e-12);
        assert!(simplex_quality(&[vec![0.0]]).is_err());
    }

    #[test]
    fn quality_is_similarity_invariant() {
        let tri = vec![vec![0.2, 0.1], vec![1.3, 0.4], vec![0.6, 1.9]];
        let q = simplex_quality(&tri).unwrap();
        // rotate by 0.7 rad, scale by 3.7, translate
        let (c, s) = (0.7f64.cos(), 0.7f64.sin());
        let moved: Vec<Vec<f64>> = tri
            .iter()
            .map(|p| {
                vec![
                    3.7 * (c * p[0] - s * p[1]) + 11.0,
                    3.7 * (s * p[0] + c * p[1]) - 4.0,
                ]
            })
            .collect();
        let q2 = simplex_quality(&moved).unwrap();
        assert!((q - q2).abs() < 1e-9);
    }

    #[test]
    fn volume_of_standard_shapes() {
        let seg = vec![vec![0.0], vec![2.0]];
        assert!((simplex_volume(&seg) - 2.0).abs() < 1e-12);
        let tri = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!((simplex_volume(&tri) - 0.5).abs() < 1e-12);
        let tet = vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        assert!((simplex_volume(&tet) - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn report_fields_consistent() {
        let e = unit_square();
        let r = thickness_report(&e).unwrap();
        assert!((r.gg_thickness.unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(r.edge_min, Some(1.0));
        assert_eq!(r.edge_max, Some(1.0));
        // corner links are quarter turns
        assert!((r.min_link_thickness.unwrap() - core::f64::consts::FRAC_PI_2).abs() < 1e-4);
        assert!(r.enclosing_radius > 0.7 && r.enclosing_radius < 0.71);
    }

    #[test]
    fn validate_catches_degenerate_and_crossing() {
        let x = SimplicialComplex::build(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        let crossing = EmbeddedComplex::new(
            x.clone(),
            2,
            vec![vec![-1.0, 0.0], vec![1.0, 0.0], vec![0.0, -1.0], vec![0.0, 1.0]],
        )
        .unwrap();
        assert!(crossing.validate().is_err());
        let ok = EmbeddedComplex::new(
            x,
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
        )
        .unwrap();
        assert!(ok.validate().is_ok());
    }
}
