//! Abstract simplicial complexes: construction with face closure, links,
//! the graph metric on the 1-skeleton, vertex loads, and the shared-vertex
//! simplex coloring.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

pub type VertexId = usize;

/// A simplex is a strictly increasing tuple of vertex ids.
pub type Simplex = Vec<VertexId>;

/// Abstract k-dimensional simplicial complex. Face-closed by construction;
/// every vertex id below `vertex_count` is present as a 0-simplex, so
/// isolated vertices are allowed. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    dimension: usize,
    vertex_count: usize,
    /// simplices[d] holds the d-simplices, each strictly increasing.
    simplices: Vec<BTreeSet<Simplex>>,
}

/// Which simplices count toward a vertex's load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LoadConvention {
    /// All simplices containing the vertex, the vertex itself included.
    WithSelf,
    /// Only simplices of dimension >= 1 containing the vertex.
    PositiveDimension,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadProfile {
    pub convention: LoadConvention,
    pub per_vertex_load: Vec<usize>,
    pub max_load: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexColoring {
    pub color: BTreeMap<Simplex, usize>,
    pub color_count: usize,
}

/// Bookkeeping returned by [`SimplicialComplex::link`]: how link vertices and
/// link simplices sit inside the parent complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCorrespondence {
    /// link vertex id -> parent vertex id (dense, increasing).
    pub vertex_to_parent: Vec<VertexId>,
    /// link simplex -> the parent simplex it came from (tau, with tau ⊋ sigma).
    pub simplex_to_parent: BTreeMap<Simplex, Simplex>,
}

fn normalize_tuple(t: &[VertexId]) -> Result<Simplex, Error> {
    if t.is_empty() {
        return Err(Error::MalformedSimplex(t.to_vec()));
    }
    let mut s = t.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedSimplex(t.to_vec()));
    }
    Ok(s)
}

/// True when the two simplices share no vertex (both strictly increasing).
pub fn disjoint(a: &[VertexId], b: &[VertexId]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// True when `a` is a subset of `b`.
pub fn is_face(a: &[VertexId], b: &[VertexId]) -> bool {
    let mut j = 0;
    'outer: for &v in a {
        while j < b.len() {
            if b[j] == v {
                j += 1;
                continue 'outer;
            }
            if b[j] > v {
                return false;
            }
            j += 1;
        }
        return false;
    }
    true
}

impl SimplicialComplex {
    /// Builds the complex generated by `top_simplices` (face closure) on
    /// `vertex_count` vertices.
    pub fn build(top_simplices: &[Vec<VertexId>], vertex_count: usize) -> Result<Self, Error> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new()];
        for v in 0..vertex_count {
            by_dim[0].insert(vec![v]);
        }
        for t in top_simplices {
            let s = normalize_tuple(t)?;
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange { vertex: v, vertex_count });
            }
            // insert every nonempty subset
            let m = s.len();
            for mask in 1u64..(1u64 << m) {
                let face: Simplex =
                    (0..m).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                let d = face.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        while by_dim.len() > 1 && by_dim.last().unwrap().is_empty() {
            by_dim.pop();
        }
        Ok(SimplicialComplex { dimension: by_dim.len() - 1, vertex_count, simplices: by_dim })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.get(d).into_iter().flatten()
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, |s| s.len())
    }

    /// All simplices, dimension ascending then lexicographic.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.iter().map(|s| s.len()).sum()
    }

    pub fn contains(&self, s: &[VertexId]) -> bool {
        if s.is_empty() {
            return false;
        }
        self.simplices.get(s.len() - 1).is_some_and(|set| set.contains(s))
    }

    pub fn edges(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices_of_dim(1)
    }

    /// Simplices not properly contained in any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..=self.dimension {
            for s in self.simplices_of_dim(d) {
                let contained = (d + 1..=self.dimension)
                    .any(|r| self.simplices_of_dim(r).any(|t| is_face(s, t)));
                if !contained {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in self.edges() {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        adj
    }

    /// Shortest edge-path length in the 1-skeleton; `None` when disconnected.
    pub fn graph_distance(&self, v: VertexId, w: VertexId) -> Result<Option<usize>, Error> {
        for x in [v, w] {
            if x >= self.vertex_count {
                return Err(Error::VertexOutOfRange { vertex: x, vertex_count: self.vertex_count });
            }
        }
        if v == w {
            return Ok(Some(0));
        }
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[v] = 0;
        let mut q = VecDeque::new();
        q.push_back(v);
        while let Some(u) = q.pop_front() {
            for &x in &adj[u] {
                if dist[x] == usize::MAX {
                    dist[x] = dist[u] + 1;
                    if x == w {
                        return Ok(Some(dist[x]));
                    }
                    q.push_back(x);
                }
            }
        }
        Ok(None)
    }

    /// Vertices at graph distance <= `radius` from `v` (including `v`).
    pub fn ball_in_graph(&self, v: VertexId, radius: usize, adj: &[Vec<VertexId>]) -> Vec<VertexId> {
        let mut seen = BTreeMap::new();
        seen.insert(v, 0usize);
        let mut q = VecDeque::new();
        q.push_back(v);
        while let Some(u) = q.pop_front() {
            let du = seen[&u];
            if du == radius {
                continue;
            }
            for &x in &adj[u] {
                if !seen.contains_key(&x) {
                    seen.insert(x, du + 1);
                    q.push_back(x);
                }
            }
        }
        seen.into_keys().collect()
    }

    /// The link of `sigma`: one (r-i-1)-simplex per r-simplex properly
    /// containing `sigma`, with vertices relabeled densely in increasing
    /// parent-id order.
    pub fn link(&self, sigma: &[VertexId]) -> Result<(SimplicialComplex, LinkCorrespondence), Error> {
        let sigma = normalize_tuple(sigma)?;
        if !self.contains(&sigma) {
            return Err(Error::SimplexNotFound(sigma));
        }
        let mut residues: Vec<(Simplex, Simplex)> = Vec::new(); // (tau \ sigma, tau)
        let mut vertex_set: BTreeSet<VertexId> = BTreeSet::new();
        for d in sigma.len()..=self.dimension {
            for tau in self.simplices_of_dim(d) {
                if is_face(&sigma, tau) {
                    let residue: Simplex =
                        tau.iter().copied().filter(|v| !sigma.contains(v)).collect();
                    vertex_set.extend(residue.iter().copied());
                    residues.push((residue, tau.clone()));
                }
            }
        }
        let vertex_to_parent: Vec<VertexId> = vertex_set.into_iter().collect();
        let relabel: BTreeMap<VertexId, VertexId> =
            vertex_to_parent.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut tops = Vec::new();
        let mut simplex_to_parent = BTreeMap::new();
        for (residue, tau) in &residues {
            let s: Simplex = residue.iter().map(|v| relabel[v]).collect();
            simplex_to_parent.insert(s.clone(), tau.clone());
            tops.push(s);
        }
        let link = SimplicialComplex::build(&tops, vertex_to_parent.len())?;
        Ok((link, LinkCorrespondence { vertex_to_parent, simplex_to_parent }))
    }

    pub fn load_profile(&self, convention: LoadConvention) -> LoadProfile {
        let mut per_vertex_load = vec![0usize; self.vertex_count];
        let start_dim = match convention {
            LoadConvention::WithSelf => 0,
            LoadConvention::PositiveDimension => 1,
        };
        for d in start_dim..=self.dimension {
            for s in self.simplices_of_dim(d) {
                for &v in s {
                    per_vertex_load[v] += 1;
                }
            }
        }
        let max_load = per_vertex_load.iter().copied().max().unwrap_or(0);
        LoadProfile { convention, per_vertex_load, max_load }
    }

    /// Greedy proper coloring of the shared-vertex conflict graph, scanning
    /// simplices in decreasing dimension then lexicographic order and taking
    /// the smallest available color. Uses at most (k+1)·L colors under the
    /// `WithSelf` load convention.
    pub fn color_simplices(&self) -> SimplexColoring {
        let mut used_at_vertex: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.vertex_count];
        let mut color = BTreeMap::new();
        let mut color_count = 0;
        for d in (0..=self.dimension).rev() {
            for s in self.simplices_of_dim(d) {
                let mut forbidden = BTreeSet::new();
                for &v in s {
                    forbidden.extend(used_at_vertex[v].iter().copied());
                }
                let c = (0..).find(|c| !forbidden.contains(c)).unwrap();
                for &v in s {
                    used_at_vertex[v].insert(c);
                }
                if c + 1 > color_count {
                    color_count = c + 1;
                }
                color.insert(s.clone(), c);
            }
        }
        SimplexColoring { color, color_count }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec![0, 1, 2]], 3).unwrap()
    }

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]], 4).unwrap()
    }

    #[test]
    fn closure_of_triangle() {
        let x = triangle();
        assert_eq!(x.count_of_dim(0), 3);
        assert_eq!(x.count_of_dim(1), 3);
        assert_eq!(x.count_of_dim(2), 1);
        assert_eq!(x.dimension(), 2);
    }

    #[test]
    fn isolated_vertices() {
        let x = SimplicialComplex::build(&[], 5).unwrap();
        assert_eq!(x.count_of_dim(0), 5);
        assert_eq!(x.simplex_count(), 5);
        assert_eq!(x.dimension(), 0);
    }

    #[test]
    fn four_cycle_counts() {
        let x = four_cycle();
        assert_eq!(x.count_of_dim(0), 4);
        assert_eq!(x.count_of_dim(1), 4);
        assert_eq!(x.dimension(), 1);
    }

    #[test]
    fn malformed_and_out_of_range() {
        assert!(matches!(
            SimplicialComplex::build(&[vec![0, 0, 1]], 3),
            Err(Error::MalformedSimplex(_))
        ));
        assert!(matches!(
            SimplicialComplex::build(&[vec![0, 7]], 3),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn closure_is_idempotent() {
        let x = triangle();
        let tops: Vec<_> = x.all_simplices().cloned().collect();
        let y = SimplicialComplex::build(&tops, 3).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn link_of_edge_in_tetrahedron_boundary() {
        // boundary of the tetrahedron: all four triangles
        let x = SimplicialComplex::build(
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            4,
        )
        .unwrap();
        let (lk, corr) = x.link(&[0, 1]).unwrap();
        assert_eq!(lk.vertex_count(), 2);
        assert_eq!(lk.dimension(), 0);
        assert_eq!(corr.vertex_to_parent, vec![2, 3]);
        assert_eq!(corr.simplex_to_parent[&vec![0]], vec![0, 1, 2]);
        assert_eq!(corr.simplex_to_parent[&vec![1]], vec![0, 1, 3]);
    }

    #[test]
    fn link_of_vertex_in_three_cycle() {
        let x = SimplicialComplex::build(&[vec![0, 1], vec![1, 2], vec![0, 2]], 3).unwrap();
        let (lk, _) = x.link(&[0]).unwrap();
        assert_eq!(lk.vertex_count(), 2);
        assert_eq!(lk.count_of_dim(0), 2);
        assert_eq!(lk.dimension(), 0);
    }

    #[test]
    fn link_of_vertex_in_octahedron_is_four_cycle() {
        // octahedron boundary: vertices 0..6, antipodal pairs (0,5),(1,4),(2,3)
        let mut tris = Vec::new();
        for &a in &[0, 5] {
            for &b in &[1, 4] {
                for &c in &[2, 3] {
                    tris.push(vec![a, b, c]);
                }
            }
        }
        let tris: Vec<Vec<usize>> = tris
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        let x = SimplicialComplex::build(&tris, 6).unwrap();
        let (lk, corr) = x.link(&[0]).unwrap();
        assert_eq!(corr.vertex_to_parent, vec![1, 2, 3, 4]);
        assert_eq!(lk.count_of_dim(0), 4);
        assert_eq!(lk.count_of_dim(1), 4);
        // 4-cycle: every vertex has exactly two neighbors
        let adj = lk.adjacency();
        assert!(adj.iter().all(|a| a.len() == 2));
    }

    #[test]
    fn link_simplex_counts_match_cofaces() {
        let x = SimplicialComplex::build(
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            4,
        )
        .unwrap();
        for sigma in x.all_simplices() {
            let cofaces = x
                .all_simplices()
                .filter(|t| t.len() > sigma.len() && is_face(sigma, t))
                .count();
            let (lk, corr) = x.link(sigma).unwrap();
            assert_eq!(corr.simplex_to_parent.len(), cofaces);
            // every coface of dim r yields one (r-i-1)-simplex
            for (s, tau) in &corr.simplex_to_parent {
                assert_eq!(s.len(), tau.len() - sigma.len());
                assert!(lk.contains(s));
            }
        }
    }

    #[test]
    fn link_of_missing_simplex_errors() {
        let x = four_cycle();
        assert!(matches!(x.link(&[0, 2]), Err(Error::SimplexNotFound(_))));
    }

    #[test]
    fn graph_distances() {
        let x = four_cycle();
        assert_eq!(x.graph_distance(0, 2).unwrap(), Some(2));
        assert_eq!(x.graph_distance(1, 1).unwrap(), Some(0));
        let y = SimplicialComplex::build(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        assert_eq!(y.graph_distance(0, 3).unwrap(), None);
        assert!(y.graph_distance(0, 9).is_err());
    }

    #[test]
    fn graph_distance_is_a_metric_on_components() {
        let x = four_cycle();
        let v = x.vertex_count();
        for a in 0..v {
            for b in 0..v {
                let dab = x.graph_distance(a, b).unwrap().unwrap();
                let dba = x.graph_distance(b, a).unwrap().unwrap();
                assert_eq!(dab, dba);
                for c in 0..v {
                    let dac = x.graph_distance(a, c).unwrap().unwrap();
                    let dcb = x.graph_distance(c, b).unwrap().unwrap();
                    assert!(dab <= dac + dcb);
                }
            }
        }
    }

    #[test]
    fn loads_under_both_conventions() {
        let x = four_cycle();
        let with_self = x.load_profile(LoadConvention::WithSelf);
        assert_eq!(with_self.max_load, 3); // vertex + two incident edges
        let pos = x.load_profile(LoadConvention::PositiveDimension);
        assert_eq!(pos.max_load, 2);
    }

    #[test]
    fn coloring_triangle_reuses_one_color() {
        let x = triangle();
        let coloring = x.color_simplices();
        // the only disjoint pairs are vertex/opposite-edge; greedy shares one
        // color between {0} and {1,2} and keeps everything else distinct
        assert_eq!(coloring.color_count, 4);
        assert_eq!(coloring.color[&vec![0]], coloring.color[&vec![1, 2]]);
        let l = x.load_profile(LoadConvention::WithSelf).max_load;
        assert!(coloring.color_count <= (x.dimension() + 1) * l);
    }

    #[test]
    fn coloring_reuses_colors_on_disjoint_edges() {
        let x = SimplicialComplex::build(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        let coloring = x.color_simplices();
        assert_eq!(coloring.color[&vec![0, 1]], coloring.color[&vec![2, 3]]);
    }

    #[test]
    fn coloring_is_proper_and_bounded_on_four_cycle() {
        let x = four_cycle();
        let coloring = x.color_simplices();
        let l = x.load_profile(LoadConvention::WithSelf).max_load;
        assert!(coloring.color_count <= (x.dimension() + 1) * l); // <= 6
        let all: Vec<_> = x.all_simplices().cloned().collect();
        for (i, s) in all.iter().enumerate() {
            for t in &all[i + 1..] {
                if !disjoint(s, t) {
                    assert_ne!(coloring.color[s], coloring.color[t], "{:?} {:?}", s, t);
                }
            }
        }
    }

    #[test]
    fn maximal_simplices_of_mixed_complex() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2], vec![2, 3]], 4).unwrap();
        let max = x.maximal_simplices();
        assert_eq!(max, vec![vec![2, 3], vec![0, 1, 2]]);
    }
}
