//! Randomized construction of thick embeddings.
//!
//! The pipeline places vertices uniformly at random on a boundary sphere
//! subject to two certified conditions (adjacent separation, link thickness),
//! refines the straight-line embedding by edgewise subdivision, then runs a
//! thickness-non-decreasing perturbation that moves each vertex within a
//! tau-ball around its input position, and finally rescales so the
//! vertex-disjoint simplex distance equals 1.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{disjoint, Simplex, SimplicialComplex, VertexId};
use crate::error::Error;
use crate::geometry::spatial::{bounding_box, box_gap, SpatialHash};
use crate::geometry::{
    self, point_simplex_distance, simplex_distance, thickness_report, EmbeddedComplex,
    ThicknessReport,
};
use crate::linalg;
use crate::rng::SeededRng;
use crate::subdivision::{subdivide_embedding, SubdivisionMap};

/// Parameters for the constrained random placement on the sphere of radius
/// `radius`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlacementParams {
    pub ambient_dim: usize,
    pub radius: f64,
    /// Separation parameter: adjacent vertices at least `alpha0 * radius`
    /// apart (chordal), every link `alpha0`-thick (radians).
    pub alpha0: f64,
    pub max_resample_rounds: usize,
    pub rng_seed: u64,
}

/// Measured placement conditions with witnesses; pure verification,
/// independent of how the embedding was produced. The sphere radius is
/// inferred as the largest vertex norm.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConditionReport {
    pub radius: f64,
    pub alpha0: f64,
    /// All adjacent vertex pairs at least `alpha0 * radius` apart.
    pub cond1_ok: bool,
    pub cond1_min_adjacent: Option<f64>,
    pub cond1_witness: Option<Simplex>,
    /// Every simplex link at least `alpha0`-thick in radians (vacuous for
    /// links without disjoint simplex pairs).
    pub cond2_ok: bool,
    pub cond2_min_link_thickness: Option<f64>,
    pub cond2_witness: Option<(Simplex, (Simplex, Simplex))>,
    /// Minimum distance over vertex pairs at graph distance <= 2.
    pub dagger_min_pair_distance: Option<f64>,
    pub dagger_witness: Option<(VertexId, VertexId)>,
    pub edge_ratio: Option<f64>,
}

/// Ball-crossing statistics over seeded random centers.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CrossingProfile {
    pub ball_radius: f64,
    pub samples: usize,
    pub seed: u64,
    /// Max over sampled balls of the number of simplices met.
    pub overall_max: usize,
    /// Max over sampled balls, per color of the shared-vertex coloring.
    pub per_color_max: Vec<usize>,
    pub color_count: usize,
}

/// Pipeline configuration; `None` fields select the scale-derived defaults.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PipelineParams {
    pub ambient_dim: usize,
    /// Sphere radius; default V^(1/(n-k)).
    pub radius: Option<f64>,
    pub alpha0: f64,
    pub max_resample_rounds: usize,
    pub rng_seed: u64,
    pub t_subdiv: usize,
    /// Perturbation radius; default edge_min(subdivided) / 4.
    pub tau: Option<f64>,
    pub perturb_budget: usize,
    pub crossing_samples: usize,
    /// Ball radius for the crossing profile; default edge_min / 10 of the
    /// normalized embedding.
    pub crossing_radius: Option<f64>,
}

impl PipelineParams {
    pub fn new(ambient_dim: usize, rng_seed: u64) -> Self {
        PipelineParams {
            ambient_dim,
            radius: None,
            alpha0: 0.5,
            max_resample_rounds: 20_000,
            rng_seed,
            t_subdiv: 1,
            tau: None,
            perturb_budget: 16,
            crossing_samples: 200,
            crossing_radius: None,
        }
    }
}

/// Everything the pipeline produced, including the pre- and post-perturbation
/// reports and the normalization factor.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    /// Final embedding: lambda * (perturbed subdivided placement).
    pub embedding: EmbeddedComplex,
    pub subdivision: SubdivisionMap,
    pub conditions: ConditionReport,
    /// Subdivided placement, before perturbation.
    pub report_before: ThicknessReport,
    /// After perturbation, before rescaling.
    pub report_after: ThicknessReport,
    /// Final, rescaled embedding.
    pub report_final: ThicknessReport,
    /// Scale factor applied so the final thickness is 1.
    pub lambda: f64,
    /// Separation actually used (auto-halved on saturation).
    pub alpha0_final: f64,
    pub radius_initial: f64,
    /// Enclosing radius of the final embedding.
    pub r_final: f64,
    pub tau: f64,
    pub crossing: CrossingProfile,
    pub params: PipelineParams,
}

struct Violations {
    vertices: BTreeSet<VertexId>,
    first: Option<String>,
}

fn find_violations(e: &EmbeddedComplex, alpha0: f64) -> Violations {
    let r = (0..e.complex().vertex_count())
        .map(|v| linalg::norm(e.point(v)))
        .fold(0.0f64, f64::max);
    let mut out = Violations { vertices: BTreeSet::new(), first: None };
    let record = |vs: &[VertexId], desc: String, out: &mut Violations| {
        out.vertices.extend(vs.iter().copied());
        if out.first.is_none() {
            out.first = Some(desc);
        }
    };
    for edge in e.complex().edges() {
        let d = linalg::dist(e.point(edge[0]), e.point(edge[1]));
        if d < alpha0 * r {
            record(edge, format!("adjacent pair {:?} at distance {} < alpha0*R", edge, d), &mut out);
        }
    }
    let incidence = geometry::vertex_incidence(e.complex());
    for sigma in e.complex().all_simplices() {
        match geometry::fast_link_thickness(e, sigma, &incidence) {
            Ok(geometry::links::LinkThickness::NoDisjointPairs) => {}
            Ok(geometry::links::LinkThickness::Angle { radians, witness }) => {
                if radians < alpha0 {
                    let mut vs: Vec<VertexId> = sigma.clone();
                    vs.extend_from_slice(&witness.0);
                    vs.extend_from_slice(&witness.1);
                    record(
                        &vs,
                        format!("link of {:?} only {} radians thick", sigma, radians),
                        &mut out,
                    );
                }
            }
            // degenerate link geometry counts as a violation of the base
            Err(_) => {
                record(sigma, format!("degenerate link geometry at {:?}", sigma), &mut out);
            }
        }
    }
    out
}

/// Uniform random placement of the vertices on the sphere of radius
/// `params.radius`, rejected/resampled until adjacent vertices are at least
/// `alpha0 * radius` apart and every link is `alpha0`-thick. Only vertices
/// participating in a violated constraint are redrawn; every 100th round
/// redraws everything to escape traps.
pub fn random_sphere_placement(
    x: &SimplicialComplex,
    params: &PlacementParams,
) -> Result<EmbeddedComplex, Error> {
    let n = params.ambient_dim;
    if n < 2 * x.dimension() + 1 {
        return Err(Error::InvalidParameter("ambient dimension must be at least 2k+1"));
    }
    if !(params.radius > 0.0) || !params.radius.is_finite() {
        return Err(Error::InvalidParameter("radius must be positive"));
    }
    if !(params.alpha0 > 0.0 && params.alpha0 < 2.0) {
        return Err(Error::InvalidParameter("alpha0 must lie in (0, 2)"));
    }
    let mut rng = SeededRng::new(params.rng_seed);
    let draw = |rng: &mut SeededRng| linalg::scale(&rng.unit_vector(n), params.radius);
    let points: Vec<Vec<f64>> = (0..x.vertex_count()).map(|_| draw(&mut rng)).collect();
    let mut e = EmbeddedComplex::new(x.clone(), n, points)?;
    let mut last = None;
    for round in 1..=params.max_resample_rounds {
        let viol = find_violations(&e, params.alpha0);
        if viol.vertices.is_empty() {
            return Ok(e);
        }
        if round % 100 == 0 {
            for v in 0..x.vertex_count() {
                let p = draw(&mut rng);
                e.set_point(v, &p);
            }
        } else {
            for &v in &viol.vertices {
                let p = draw(&mut rng);
                e.set_point(v, &p);
            }
        }
        last = viol.first;
    }
    Err(Error::Saturation {
        rounds: params.max_resample_rounds,
        constraint: last.unwrap_or_else(|| String::from("unknown constraint")),
    })
}

/// Measures both placement conditions plus the distance-(<=2) pair separation
/// and the edge-length ratio, with witnesses.
pub fn check_conditions(e: &EmbeddedComplex, alpha0: f64) -> Result<ConditionReport, Error> {
    let radius = (0..e.complex().vertex_count())
        .map(|v| linalg::norm(e.point(v)))
        .fold(0.0f64, f64::max);
    let mut cond1_min_adjacent = None;
    let mut cond1_witness = None;
    for edge in e.complex().edges() {
        let d = linalg::dist(e.point(edge[0]), e.point(edge[1]));
        if cond1_min_adjacent.is_none_or(|m| d < m) {
            cond1_min_adjacent = Some(d);
            cond1_witness = Some(edge.clone());
        }
    }
    let cond1_ok = cond1_min_adjacent.is_none_or(|m| m >= alpha0 * radius);

    let (cond2_min_link_thickness, cond2_witness) = geometry::min_link_thickness(e)?;
    let cond2_ok = cond2_min_link_thickness.is_none_or(|m| m >= alpha0);

    let adj = e.complex().adjacency();
    let mut dagger: Option<(f64, (VertexId, VertexId))> = None;
    for v in 0..e.complex().vertex_count() {
        for w in e.complex().ball_in_graph(v, 2, &adj) {
            if w <= v {
                continue;
            }
            let d = linalg::dist(e.point(v), e.point(w));
            if dagger.as_ref().is_none_or(|(m, _)| d < *m) {
                dagger = Some((d, (v, w)));
            }
        }
    }
    let (dagger_min_pair_distance, dagger_witness) = match dagger {
        None => (None, None),
        Some((d, w)) => (Some(d), Some(w)),
    };
    let edge_ratio = e.edge_length_stats().map(|(lo, hi)| hi / lo);
    Ok(ConditionReport {
        radius,
        alpha0,
        cond1_ok,
        cond1_min_adjacent,
        cond1_witness,
        cond2_ok,
        cond2_min_link_thickness,
        cond2_witness,
        dagger_min_pair_distance,
        dagger_witness,
        edge_ratio,
    })
}

/// Max and per-color max of the number of simplices met by balls centered at
/// every vertex, every maximal-simplex barycenter, and `samples` seeded
/// random points of the enclosing ball. The default ball radius is
/// edge_min / 10.
pub fn crossing_profile(
    e: &EmbeddedComplex,
    ball_radius: Option<f64>,
    samples: usize,
    seed: u64,
) -> CrossingProfile {
    let ball_radius = ball_radius
        .or_else(|| e.edge_length_stats().map(|(lo, _)| lo / 10.0))
        .unwrap_or_else(|| (e.enclosing_radius() / 10.0).max(1e-9))
        .max(1e-300);
    let coloring = e.complex().color_simplices();
    let ball = e.enclosing_ball();

    // deterministic backbone: the maximum over all balls is attained near the
    // complex, so probe every vertex and every maximal-simplex barycenter;
    // the seeded random centers cover the rest of the enclosing ball
    let mut centers: Vec<Vec<f64>> = (0..e.complex().vertex_count())
        .map(|v| e.point(v).to_vec())
        .collect();
    for s in e.complex().maximal_simplices() {
        let pts = e.simplex_points(&s);
        let mut c = vec![0.0; e.ambient_dim()];
        for p in &pts {
            linalg::axpy(&mut c, 1.0 / pts.len() as f64, p);
        }
        centers.push(c);
    }
    let mut rng = SeededRng::new(seed);
    for _ in 0..samples {
        centers.push(rng.ball_point(&ball.center, ball.radius));
    }

    let simplices: Vec<Simplex> = e.complex().all_simplices().cloned().collect();
    let pts_all: Vec<Vec<Vec<f64>>> = simplices.iter().map(|s| e.simplex_points(s)).collect();
    let boxes: Vec<_> = pts_all.iter().map(|p| bounding_box(p)).collect();
    let mean_extent = boxes
        .iter()
        .map(|(lo, hi)| hi.iter().zip(lo).map(|(h, l)| h - l).fold(0.0, f64::max))
        .sum::<f64>()
        / simplices.len().max(1) as f64;
    let cell = ball_radius.max(mean_extent).max(1e-12);
    let mut hash = SpatialHash::new(cell, e.ambient_dim(), simplices.len());
    for (i, (lo, hi)) in boxes.iter().enumerate() {
        hash.insert(i as u32, lo.clone(), hi.clone());
    }

    let mut overall_max = 0usize;
    let mut per_color_max = vec![0usize; coloring.color_count];
    let mut per_color = vec![0usize; coloring.color_count];
    for c in &centers {
        per_color.iter_mut().for_each(|x| *x = 0);
        let mut total = 0usize;
        for cand in hash.query(c, c, ball_radius) {
            let j = cand as usize;
            if box_gap(c, c, &boxes[j].0, &boxes[j].1) > ball_radius {
                continue;
            }
            if point_simplex_distance(c, &pts_all[j]).unwrap_or(f64::INFINITY) <= ball_radius {
                total += 1;
                per_color[coloring.color[&simplices[j]]] += 1;
            }
        }
        overall_max = overall_max.max(total);
        for (m, &cnt) in per_color_max.iter_mut().zip(&per_color) {
            *m = (*m).max(cnt);
        }
    }
    CrossingProfile {
        ball_radius,
        samples,
        seed,
        overall_max,
        per_color_max,
        color_count: coloring.color_count,
    }
}

/// Local objective at a trial position for vertex `v`: the minimum distance
/// over vertex-disjoint simplex pairs involving a simplex of `v`, truncated
/// at `rho`. Strictly improving this value provably never decreases the
/// global thickness, because pairs not involving `v` are untouched.
fn local_eval(
    e: &EmbeddedComplex,
    simplices: &[Simplex],
    boxes: &[(Vec<f64>, Vec<f64>)],
    pts_all: &[Vec<Vec<f64>>],
    incident: &[usize],
    v: VertexId,
    trial: &[f64],
    hash: &SpatialHash,
    rho: f64,
) -> Result<f64, Error> {
    let mut f = rho;
    for &si in incident {
        let s = &simplices[si];
        let pts: Vec<Vec<f64>> = s
            .iter()
            .map(|&w| if w == v { trial.to_vec() } else { e.point(w).to_vec() })
            .collect();
        let (lo, hi) = bounding_box(&pts);
        for cand in hash.query(&lo, &hi, rho) {
            let j = cand as usize;
            let s2 = &simplices[j];
            if !disjoint(s, s2) {
                continue;
            }
            if box_gap(&lo, &hi, &boxes[j].0, &boxes[j].1) >= f {
                continue;
            }
            let d = simplex_distance(&pts, &pts_all[j])?.distance;
            if d < f {
                f = d;
                if f <= 0.0 {
                    return Ok(0.0);
                }
            }
        }
    }
    Ok(f)
}

/// All pairs within `rho` (by the conservative hash), folded into a
/// per-vertex minimum; vertices below `rho` are the current bottlenecks.
fn bottleneck_minima(
    e: &EmbeddedComplex,
    simplices: &[Simplex],
    boxes: &[(Vec<f64>, Vec<f64>)],
    pts_all: &[Vec<Vec<f64>>],
    hash: &SpatialHash,
    rho: f64,
) -> Result<Vec<f64>, Error> {
    let mut fv = vec![rho; e.complex().vertex_count()];
    for (i, s) in simplices.iter().enumerate() {
        let (lo, hi) = &boxes[i];
        for cand in hash.query(lo, hi, rho) {
            let j = cand as usize;
            if j <= i || !disjoint(s, &simplices[j]) {
                continue;
            }
            if box_gap(lo, hi, &boxes[j].0, &boxes[j].1) >= rho {
                continue;
            }
            let d = simplex_distance(&pts_all[i], &pts_all[j])?.distance;
            if d < rho {
                for &w in s.iter().chain(&simplices[j]) {
                    if d < fv[w] {
                        fv[w] = d;
                    }
                }
            }
        }
    }
    Ok(fv)
}

const TRIAL_DIRECTIONS: usize = 6;
const TRIAL_STEPS: [f64; 4] = [1.0, 0.5, 0.25, 0.125];

/// Moves each vertex by at most `tau` from its input position, accepting a
/// trial move only when the truncated local minimum strictly improves (which
/// implies the global thickness cannot decrease). Deterministic given the
/// seed; `tau = 0` or `budget = 0` returns the input.
pub fn thicken_perturb(
    e: &EmbeddedComplex,
    tau: f64,
    budget: usize,
    rng_seed: u64,
) -> Result<EmbeddedComplex, Error> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParameter("tau must be finite and nonnegative"));
    }
    let mut out = e.clone();
    if tau == 0.0 || budget == 0 {
        return Ok(out);
    }
    let simplices: Vec<Simplex> = e.complex().all_simplices().cloned().collect();
    if simplices.len() < 2 {
        return Ok(out);
    }
    let n = e.ambient_dim();
    let original = out.points();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); e.complex().vertex_count()];
    for (i, s) in simplices.iter().enumerate() {
        for &v in s {
            incident[v].push(i);
        }
    }
    let mut rng = SeededRng::new(rng_seed);
    let mut t_cur = match out.gg_thickness().distance() {
        None => return Ok(out), // no disjoint pairs: nothing to thicken
        Some(d) => d,
    };
    let mut rounds_done = 0;
    // the cap leaves room for cheap radius-growing sweeps that improve nothing
    for _ in 0..budget + 64 {
        if rounds_done >= budget {
            break;
        }
        let rho = (4.0 * t_cur).max(tau * 1e-3).max(1e-12);
        let mut pts_all: Vec<Vec<Vec<f64>>> =
            simplices.iter().map(|s| out.simplex_points(s)).collect();
        let mut boxes: Vec<_> = pts_all.iter().map(|p| bounding_box(p)).collect();
        // cell size is a performance knob only (queries stay conservative);
        // keep it at least the mean box extent so a box covers O(1) cells
        let mean_extent = boxes
            .iter()
            .map(|(lo, hi)| hi.iter().zip(lo).map(|(h, l)| h - l).fold(0.0, f64::max))
            .sum::<f64>()
            / simplices.len() as f64;
        let mut hash = SpatialHash::new(rho.max(mean_extent).max(1e-12), n, simplices.len());
        for (i, (lo, hi)) in boxes.iter().enumerate() {
            hash.insert(i as u32, lo.clone(), hi.clone());
        }
        let fv = bottleneck_minima(&out, &simplices, &boxes, &pts_all, &hash, rho)?;
        let min_fv = fv.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_fv >= rho {
            // every disjoint pair is farther than rho apart: grow the horizon
            // and rescan (geometric growth keeps these sweeps rare)
            t_cur = rho;
            continue;
        }
        // the sweep saw every pair below rho, so this is the exact thickness
        t_cur = min_fv;
        rounds_done += 1;
        let mut accepted = false;
        for v in 0..out.complex().vertex_count() {
            if fv[v] >= rho {
                continue;
            }
            let mut f = local_eval(
                &out,
                &simplices,
                &boxes,
                &pts_all,
                &incident[v],
                v,
                out.point(v),
                &hash,
                rho,
            )?;
            if f >= rho {
                continue;
            }
            for step in TRIAL_STEPS {
                for _ in 0..TRIAL_DIRECTIONS {
                    let dir = rng.unit_vector(n);
                    let mut cand = out.point(v).to_vec();
                    linalg::axpy(&mut cand, step * tau, &dir);
                    // project back into the tau-ball around the input position
                    let disp = linalg::sub(&cand, &original[v]);
                    let dn = linalg::norm(&disp);
                    if dn > tau {
                        // shrink until the rounded candidate itself satisfies
                        // the displacement bound, not just the pre-rounding
                        // displacement vector
                        let mut factor = tau / dn;
                        loop {
                            let scaled = linalg::scale(&disp, factor);
                            let c = linalg::add(&original[v], &scaled);
                            if linalg::norm(&linalg::sub(&c, &original[v])) <= tau {
                                cand = c;
                                break;
                            }
                            factor *= 1.0 - 1e-12;
                        }
                    }
                    if cand == out.point(v) {
                        continue;
                    }
                    // never flatten an incident simplex
                    let degenerates = incident[v].iter().any(|&si| {
                        let pts: Vec<Vec<f64>> = simplices[si]
                            .iter()
                            .map(|&w| if w == v { cand.clone() } else { out.point(w).to_vec() })
                            .collect();
                        pts.len() > 1 && geometry::simplex_points_degenerate(&pts)
                    });
                    if degenerates {
                        continue;
                    }
                    let f2 = local_eval(
                        &out,
                        &simplices,
                        &boxes,
                        &pts_all,
                        &incident[v],
                        v,
                        &cand,
                        &hash,
                        rho,
                    )?;
                    if f2 > f {
                        out.set_point(v, &cand);
                        for &si in &incident[v] {
                            let pts = out.simplex_points(&simplices[si]);
                            let (lo, hi) = bounding_box(&pts);
                            hash.update(si as u32, lo.clone(), hi.clone());
                            boxes[si] = (lo, hi);
                            pts_all[si] = pts;
                        }
                        f = f2;
                        accepted = true;
                    }
                }
            }
        }
        if !accepted {
            break;
        }
    }
    Ok(out)
}

/// End-to-end pipeline: placement, certification, subdivision, perturbation,
/// normalization to thickness 1, crossing statistics.
pub fn run_pipeline(x: &SimplicialComplex, params: &PipelineParams) -> Result<PipelineResult, Error> {
    let n = params.ambient_dim;
    let k = x.dimension();
    if n <= k {
        return Err(Error::InvalidParameter("ambient dimension must exceed the complex dimension"));
    }
    let radius_initial = params
        .radius
        .unwrap_or_else(|| libm::pow(x.vertex_count() as f64, 1.0 / (n - k) as f64));

    // auto-tune alpha0: halve on saturation, keep the value that worked
    let mut alpha0 = params.alpha0;
    let placement = loop {
        let place_params = PlacementParams {
            ambient_dim: n,
            radius: radius_initial,
            alpha0,
            max_resample_rounds: params.max_resample_rounds,
            rng_seed: params.rng_seed,
        };
        match random_sphere_placement(x, &place_params) {
            Ok(e) => break e,
            Err(Error::Saturation { .. }) if alpha0 > 1e-6 => alpha0 *= 0.5,
            Err(err) => return Err(err),
        }
    };
    let conditions = check_conditions(&placement, alpha0)?;

    let (subdivided, subdivision) = subdivide_embedding(&placement, params.t_subdiv)?;
    subdivided.validate()?;
    let report_before = thickness_report(&subdivided)?;

    let tau = params
        .tau
        .unwrap_or_else(|| subdivided.edge_length_stats().map_or(0.0, |(lo, _)| lo / 4.0));
    let perturbed = thicken_perturb(
        &subdivided,
        tau,
        params.perturb_budget,
        params.rng_seed.wrapping_add(0x9e37_79b9_7f4a_7c15),
    )?;
    let report_after = thickness_report(&perturbed)?;

    let lambda = match report_after.gg_thickness {
        Some(d) if d > 0.0 => 1.0 / d,
        _ => 1.0,
    };
    let embedding = perturbed.scaled(lambda);
    let report_final = thickness_report(&embedding)?;
    let r_final = report_final.enclosing_radius;
    let crossing = crossing_profile(
        &embedding,
        params.crossing_radius,
        params.crossing_samples,
        params.rng_seed.wrapping_add(0x517c_c1b7_2722_0a95),
    );
    Ok(PipelineResult {
        embedding,
        subdivision,
        conditions,
        report_before,
        report_after,
        report_final,
        lambda,
        alpha0_final: alpha0,
        radius_initial,
        r_final,
        tau,
        crossing,
        params: params.clone(),
    })
}
