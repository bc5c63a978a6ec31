//! Seeded input families: cycles, random regular graphs (pairing model),
//! triangulated torus grids, and icospheres.

use std::fmt;
use std::str::FromStr;

use thickem_core::rng::SeededRng;
use thickem_core::subdivision::subdivide_embedding;
use thickem_core::{EmbeddedComplex, Error, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle { v: usize },
    RandomRegularGraph { v: usize, degree: usize },
    TorusGrid { a: usize, b: usize },
    Icosphere { level: usize },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cycle { v } => write!(f, "cycle:{}", v),
            FamilySpec::RandomRegularGraph { v, degree } => write!(f, "rrg:{}:{}", v, degree),
            FamilySpec::TorusGrid { a, b } => write!(f, "torus:{}:{}", a, b),
            FamilySpec::Icosphere { level } => write!(f, "icosphere:{}", level),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = String;

    /// `cycle:V`, `rrg:V:degree`, `torus:A:B`, `icosphere:LEVEL`.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.parse::<usize>().map_err(|_| format!("bad number `{}` in family spec", p));
        match parts.as_slice() {
            ["cycle", v] => Ok(FamilySpec::Cycle { v: num(v)? }),
            ["rrg", v, d] => Ok(FamilySpec::RandomRegularGraph { v: num(v)?, degree: num(d)? }),
            ["torus", a, b] => Ok(FamilySpec::TorusGrid { a: num(a)?, b: num(b)? }),
            ["icosphere", l] => Ok(FamilySpec::Icosphere { level: num(l)? }),
            _ => Err(format!(
                "unknown family `{}` (expected cycle:V, rrg:V:D, torus:A:B, icosphere:L)",
                s
            )),
        }
    }
}

/// Generates the complex for a family spec; deterministic given the seed
/// (only `rrg` consumes it).
pub fn generate_family(spec: &FamilySpec, seed: u64) -> Result<SimplicialComplex, Error> {
    match *spec {
        FamilySpec::Cycle { v } => cycle(v),
        FamilySpec::RandomRegularGraph { v, degree } => random_regular_graph(v, degree, seed),
        FamilySpec::TorusGrid { a, b } => torus_grid(a, b),
        FamilySpec::Icosphere { level } => Ok(icosphere(level)?.complex().clone()),
    }
}

pub fn cycle(v: usize) -> Result<SimplicialComplex, Error> {
    if v < 3 {
        return Err(Error::InvalidParameter("cycle needs at least 3 vertices"));
    }
    let tops: Vec<Vec<usize>> = (0..v).map(|i| {
        let mut e = vec![i, (i + 1) % v];
        e.sort_unstable();
        e
    }).collect();
    SimplicialComplex::build(&tops, v)
}

/// Pairing (configuration) model: each vertex gets `degree` stubs, stubs are
/// matched uniformly at random, and the whole matching is redrawn until it is
/// simple (no loops or parallel edges). Deterministic given the seed.
pub fn random_regular_graph(v: usize, degree: usize, seed: u64) -> Result<SimplicialComplex, Error> {
    if degree == 0 || degree >= v {
        return Err(Error::InvalidParameter("degree must be in 1..V"));
    }
    if (v * degree) % 2 != 0 {
        return Err(Error::InvalidParameter("V * degree must be even"));
    }
    let mut rng = SeededRng::new(seed);
    'attempt: for _ in 0..10_000 {
        let mut stubs: Vec<usize> = (0..v).flat_map(|i| std::iter::repeat(i).take(degree)).collect();
        // Fisher-Yates, then pair consecutive stubs
        for i in (1..stubs.len()).rev() {
            let j = rng.below(i + 1);
            stubs.swap(i, j);
        }
        let mut edges = std::collections::BTreeSet::new();
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !edges.insert(vec![a, b]) {
                continue 'attempt;
            }
        }
        let tops: Vec<Vec<usize>> = edges.into_iter().collect();
        return SimplicialComplex::build(&tops, v);
    }
    Err(Error::Saturation {
        rounds: 10_000,
        constraint: String::from("no simple matching found in the pairing model"),
    })
}

/// Standard triangulation of the (a x b)-grid torus: each square cell is cut
/// into two triangles along the same diagonal. a*b vertices, 3ab edges,
/// 2ab triangles.
pub fn torus_grid(a: usize, b: usize) -> Result<SimplicialComplex, Error> {
    if a < 3 || b < 3 {
        return Err(Error::InvalidParameter("torus grid needs both sides >= 3"));
    }
    let id = |i: usize, j: usize| (i % a) * b + (j % b);
    let mut tops = Vec::with_capacity(2 * a * b);
    for i in 0..a {
        for j in 0..b {
            let (p, q, r, s) = (id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
            for tri in [vec![p, q, s], vec![p, r, s]] {
                let mut t = tri;
                t.sort_unstable();
                tops.push(t);
            }
        }
    }
    SimplicialComplex::build(&tops, a * b)
}

/// Icosphere: the regular icosahedron, edgewise-subdivided `level` times with
/// t = 2, all vertices radially projected to the unit sphere.
pub fn icosphere(level: usize) -> Result<EmbeddedComplex, Error> {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let raw: Vec<[f64; 3]> = vec![
        [-1.0, phi, 0.0], [1.0, phi, 0.0], [-1.0, -phi, 0.0], [1.0, -phi, 0.0],
        [0.0, -1.0, phi], [0.0, 1.0, phi], [0.0, -1.0, -phi], [0.0, 1.0, -phi],
        [phi, 0.0, -1.0], [phi, 0.0, 1.0], [-phi, 0.0, -1.0], [-phi, 0.0, 1.0],
    ];
    let faces: Vec<Vec<usize>> = vec![
        vec![0, 11, 5], vec![0, 5, 1], vec![0, 1, 7], vec![0, 7, 10], vec![0, 10, 11],
        vec![1, 5, 9], vec![5, 11, 4], vec![11, 10, 2], vec![10, 7, 6], vec![7, 1, 8],
        vec![3, 9, 4], vec![3, 4, 2], vec![3, 2, 6], vec![3, 6, 8], vec![3, 8, 9],
        vec![4, 9, 5], vec![2, 4, 11], vec![6, 2, 10], vec![8, 6, 7], vec![9, 8, 1],
    ]
    .into_iter()
    .map(|mut f| {
        f.sort_unstable();
        f
    })
    .collect();
    let x = SimplicialComplex::build(&faces, 12)?;
    let normalize = |p: &[f64]| {
        let n = (p.iter().map(|c| c * c).sum::<f64>()).sqrt();
        p.iter().map(|c| c / n).collect::<Vec<f64>>()
    };
    let pts: Vec<Vec<f64>> = raw.iter().map(|p| normalize(p)).collect();
    let mut e = EmbeddedComplex::new(x, 3, pts)?;
    for _ in 0..level {
        let (child, _) = subdivide_embedding(&e, 2)?;
        let pts: Vec<Vec<f64>> =
            (0..child.complex().vertex_count()).map(|v| normalize(child.point(v))).collect();
        e = EmbeddedComplex::new(child.complex().clone(), 3, pts)?;
    }
    Ok(e)
}
