//! Greedy epsilon-nets on finite metric samples.
//!
//! A net is a subset of sample points whose eps/2-balls are pairwise disjoint
//! (equivalently: centers pairwise farther than eps apart) and whose eps-balls
//! cover every sample point. The greedy construction is the farthest-point
//! traversal: start at index 0, then repeatedly add the point farthest from
//! the current centers (lowest index on ties) until every point is within eps
//! of a center. Both certificates hold by construction and are re-verified.
//! Because the traversal order does not depend on eps, the net for a larger
//! eps is a prefix of the net for a smaller one, so net size is antitone
//! in eps.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::VertexId;
use crate::error::Error;
use crate::geometry::EmbeddedComplex;
use crate::linalg;
use crate::rng::SeededRng;

/// Finite metric space given by a full distance table.
#[derive(Debug, Clone)]
pub struct MetricSample {
    table: Vec<Vec<f64>>,
}

impl MetricSample {
    /// Wraps a distance table, checking d(x,x) = 0, nonnegativity, symmetry,
    /// and the triangle inequality on random triples (tolerance 1e-9).
    pub fn from_table(table: Vec<Vec<f64>>) -> Result<Self, Error> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidParameter("metric sample must be nonempty"));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameter("distance table must be square"));
        }
        for i in 0..n {
            if table[i][i] != 0.0 {
                return Err(Error::InvalidParameter("self-distance must be zero"));
            }
            for j in 0..n {
                let d = table[i][j];
                if !(d >= 0.0) || !d.is_finite() {
                    return Err(Error::InvalidParameter("distances must be finite and nonnegative"));
                }
                if (d - table[j][i]).abs() > 1e-9 * d.abs().max(1.0) {
                    return Err(Error::InvalidParameter("distance table must be symmetric"));
                }
            }
        }
        // spot-check triangles on random triples (full check is cubic)
        let mut rng = SeededRng::new(0x6e65_7473);
        let checks = (8 * n).min(4096);
        for _ in 0..checks {
            let i = rng.below(n);
            let j = rng.below(n);
            let k = rng.below(n);
            if table[i][j] > table[i][k] + table[k][j] + 1e-9 {
                return Err(Error::InvalidParameter("distance table violates triangle inequality"));
            }
        }
        Ok(MetricSample { table })
    }

    /// Euclidean metric on a point list.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("metric sample must be nonempty"));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: 0 });
        }
        let n = points.len();
        let mut table = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = linalg::dist(&points[i], &points[j]);
                table[i][j] = d;
                table[j][i] = d;
            }
        }
        Ok(MetricSample { table })
    }

    /// Graph-geodesic metric on the vertices of an embedded complex: shortest
    /// paths along the 1-skeleton with Euclidean edge lengths. Errors when
    /// the skeleton is disconnected.
    pub fn from_mesh(e: &EmbeddedComplex) -> Result<Self, Error> {
        let n = e.complex().vertex_count();
        let mut adj: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); n];
        for edge in e.complex().edges() {
            let w = linalg::dist(e.point(edge[0]), e.point(edge[1]));
            adj[edge[0]].push((edge[1], w));
            adj[edge[1]].push((edge[0], w));
        }
        let mut table = vec![vec![0.0; n]; n];
        for src in 0..n {
            let d = dijkstra(&adj, src);
            for (v, &dv) in d.iter().enumerate() {
                if !dv.is_finite() {
                    return Err(Error::Disconnected { component_of: src, unreachable: v });
                }
                table[src][v] = dv;
            }
        }
        // symmetrize away float asymmetry from differing relaxation orders
        for i in 0..n {
            for j in i + 1..n {
                let d = 0.5 * (table[i][j] + table[j][i]);
                table[i][j] = d;
                table[j][i] = d;
            }
        }
        Ok(MetricSample { table })
    }

    pub fn point_count(&self) -> usize {
        self.table.len()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.table[i][j]
    }

    pub fn diameter(&self) -> f64 {
        self.table
            .iter()
            .flat_map(|row| row.iter())
            .fold(0.0f64, |m, &d| m.max(d))
    }
}

fn dijkstra(adj: &[Vec<(VertexId, f64)>], src: usize) -> Vec<f64> {
    #[derive(PartialEq)]
    struct Entry(f64, usize);
    impl Eq for Entry {}
    impl Ord for Entry {
        fn cmp(&self, other: &Self) -> core::cmp::Ordering {
            // reversed: BinaryHeap is a max-heap
            other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
        }
    }
    impl PartialOrd for Entry {
        fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    let mut dist = vec![f64::INFINITY; adj.len()];
    dist[src] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(Entry(0.0, src));
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Entry(nd, v));
            }
        }
    }
    dist
}

/// A certified epsilon-net over a [`MetricSample`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NetResult {
    pub center_indices: Vec<usize>,
    pub epsilon: f64,
    pub packing_ok: bool,
    pub covering_ok: bool,
    /// A center pair at distance <= epsilon, when packing fails.
    pub packing_witness: Option<(usize, usize)>,
    /// A point farther than epsilon from every center, when covering fails.
    pub covering_witness: Option<usize>,
}

/// Greedy net by farthest-point traversal: the first center is index 0; each
/// further center is the point with the largest distance to the chosen
/// centers (lowest index on ties), stopping once that distance is at most
/// `epsilon`. Deterministic, and antitone in `epsilon` because the traversal
/// is independent of `epsilon`. Certificates are re-verified on the output.
pub fn greedy_net(s: &MetricSample, epsilon: f64) -> Result<NetResult, Error> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter("epsilon must be positive"));
    }
    let n = s.point_count();
    let mut centers: Vec<usize> = Vec::new();
    // min distance from each point to the chosen centers
    let mut dmin = vec![f64::INFINITY; n];
    let mut next = 0usize;
    loop {
        centers.push(next);
        let c = next;
        let mut best = f64::NEG_INFINITY;
        let mut best_idx = 0usize;
        for p in 0..n {
            let d = s.distance(p, c);
            if d < dmin[p] {
                dmin[p] = d;
            }
            if dmin[p] > best {
                best = dmin[p];
                best_idx = p;
            }
        }
        if best <= epsilon {
            break;
        }
        next = best_idx;
    }
    let (packing_ok, covering_ok, packing_witness, covering_witness) =
        certify_net(s, &centers, epsilon);
    Ok(NetResult { center_indices: centers, epsilon, packing_ok, covering_ok, packing_witness, covering_witness })
}

/// Checks both net certificates for an arbitrary center list: packing (all
/// center pairs strictly farther than epsilon, so the eps/2-balls are
/// disjoint) and covering (every point within epsilon of some center).
pub fn certify_net(
    s: &MetricSample,
    centers: &[usize],
    epsilon: f64,
) -> (bool, bool, Option<(usize, usize)>, Option<usize>) {
    let mut packing_witness = None;
    'pack: for (a, &i) in centers.iter().enumerate() {
        for &j in &centers[a + 1..] {
            if s.distance(i, j) <= epsilon {
                packing_witness = Some((i, j));
                break 'pack;
            }
        }
    }
    let mut covering_witness = None;
    for p in 0..s.point_count() {
        if centers.iter().all(|&c| s.distance(p, c) > epsilon) {
            covering_witness = Some(p);
            break;
        }
    }
    (packing_witness.is_none(), covering_witness.is_none(), packing_witness, covering_witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn line10() -> MetricSample {
        let pts: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        MetricSample::from_points(&pts).unwrap()
    }

    #[test]
    fn line_net() {
        let net = greedy_net(&line10(), 2.5).unwrap();
        // farthest-point order: 0, then 9 (distance 9), then 4 (min-distance 4)
        assert_eq!(net.center_indices, vec![0, 9, 4]);
        assert!(net.packing_ok && net.covering_ok);
    }

    #[test]
    fn single_point() {
        let s = MetricSample::from_points(&[vec![1.0, 2.0]]).unwrap();
        let net = greedy_net(&s, 0.5).unwrap();
        assert_eq!(net.center_indices, vec![0]);
        assert!(net.packing_ok && net.covering_ok);
    }

    #[test]
    fn epsilon_at_least_diameter_gives_one_center() {
        let s = line10();
        let net = greedy_net(&s, s.diameter()).unwrap();
        assert_eq!(net.center_indices, vec![0]);
        assert!(net.packing_ok && net.covering_ok);
    }

    #[test]
    fn certify_detects_uncovered() {
        let (_, covering_ok, _, witness) = certify_net(&line10(), &[0], 2.5);
        assert!(!covering_ok);
        assert_eq!(witness, Some(3));
    }

    #[test]
    fn certify_detects_packing_violation() {
        let (packing_ok, _, witness, _) = certify_net(&line10(), &[0, 1], 2.5);
        assert!(!packing_ok);
        assert_eq!(witness, Some((0, 1)));
    }

    #[test]
    fn antitone_in_epsilon() {
        let s = line10();
        let mut prev = usize::MAX;
        for eps in [0.5, 1.0, 1.5, 2.5, 4.0, 9.0] {
            let n = greedy_net(&s, eps).unwrap().center_indices.len();
            assert!(n <= prev);
            prev = n;
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(MetricSample::from_table(vec![]).is_err());
        assert!(MetricSample::from_table(vec![vec![1.0]]).is_err());
        let asym = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(MetricSample::from_table(asym).is_err());
        let neg = vec![vec![0.0, -1.0], vec![-1.0, 0.0]];
        assert!(MetricSample::from_table(neg).is_err());
        // triangle violation: d(0,2) = 10 but d(0,1)+d(1,2) = 2
        let tri = vec![
            vec![0.0, 1.0, 10.0],
            vec![1.0, 0.0, 1.0],
            vec![10.0, 1.0, 0.0],
        ];
        assert!(MetricSample::from_table(tri).is_err());
    }

    #[test]
    fn square_cycle_geodesics() {
        let x = SimplicialComplex::build(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]], 4)
            .unwrap();
        let pts = alloc::vec![
            alloc::vec![0.0, 0.0],
            alloc::vec![1.0, 0.0],
            alloc::vec![1.0, 1.0],
            alloc::vec![0.0, 1.0],
        ];
        let e = EmbeddedComplex::new(x, 2, pts).unwrap();
        let s = MetricSample::from_mesh(&e).unwrap();
        assert!((s.distance(0, 2) - 2.0).abs() < 1e-12);
        assert!((s.distance(0, 3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disconnected_mesh_errors() {
        let x = SimplicialComplex::build(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        let pts = alloc::vec![
            alloc::vec![0.0],
            alloc::vec![1.0],
            alloc::vec![5.0],
            alloc::vec![6.0],
        ];
        let e = EmbeddedComplex::new(x, 1, pts).unwrap();
        assert!(matches!(
            MetricSample::from_mesh(&e),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn triangle_mesh_metric() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2]], 3).unwrap();
        let h = crate::mathx::sqrt(3.0) / 2.0;
        let pts = alloc::vec![
            alloc::vec![0.0, 0.0],
            alloc::vec![1.0, 0.0],
            alloc::vec![0.5, h],
        ];
        let e = EmbeddedComplex::new(x, 2, pts).unwrap();
        let s = MetricSample::from_mesh(&e).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { 1.0 };
                assert!((s.distance(i, j) - want).abs() < 1e-12);
            }
        }
    }
}
