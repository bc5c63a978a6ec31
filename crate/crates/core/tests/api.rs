//! Integration tests exercising the public API end to end: build a complex,
//! subdivide it, run the embedding pipeline, and cross-check the certified
//! quantities against direct recomputation.

use thickem_core::complex::SimplicialComplex;
use thickem_core::embedder::{run_pipeline, thicken_perturb, PipelineParams};
use thickem_core::geometry::{thickness_report, EmbeddedComplex};
use thickem_core::linalg;
use thickem_core::net::{greedy_net, MetricSample};
use thickem_core::subdivision::edgewise_subdivide;

fn cycle(v: usize) -> SimplicialComplex {
    let tops: Vec<Vec<usize>> = (0..v).map(|i| vec![i, (i + 1) % v]).collect();
    SimplicialComplex::build(&tops, v).unwrap()
}

#[test]
fn pipeline_end_to_end_on_a_cycle() {
    let x = cycle(14);
    let mut params = PipelineParams::new(3, 5);
    params.t_subdiv = 2;
    params.perturb_budget = 4;
    params.crossing_samples = 16;
    let res = run_pipeline(&x, &params).unwrap();

    // normalized to thickness 1, and the report agrees with recomputation
    let gg = res.report_final.gg_thickness.unwrap();
    assert!((gg - 1.0).abs() < 1e-9);
    let recomputed = thickness_report(&res.embedding).unwrap();
    assert_eq!(recomputed.gg_thickness, res.report_final.gg_thickness);

    // both placement conditions certified
    assert!(res.conditions.cond1_ok && res.conditions.cond2_ok);

    // the subdivided cycle has t * V vertices
    assert_eq!(res.embedding.complex().vertex_count(), 2 * 14);

    // scale consistency: r_final = lambda * enclosing radius before scaling
    let r = res.report_after.enclosing_radius * res.lambda;
    assert!((r - res.r_final).abs() < 1e-9 * res.r_final.max(1.0));
}

#[test]
fn subdivision_then_perturbation_preserves_contracts() {
    let x = cycle(8);
    let map = edgewise_subdivide(&x, 3).unwrap();
    assert_eq!(map.child.vertex_count(), 24);

    // embed the child on a circle, then perturb
    let v = map.child.vertex_count();
    let pts: Vec<Vec<f64>> = (0..v)
        .map(|i| {
            let a = core::f64::consts::TAU * i as f64 / v as f64;
            vec![10.0 * libm::cos(a), 10.0 * libm::sin(a), 0.0]
        })
        .collect();
    let e = EmbeddedComplex::new(map.child.clone(), 3, pts).unwrap();
    let before = e.gg_thickness().distance().unwrap();
    let tau = 0.25;
    let out = thicken_perturb(&e, tau, 5, 11).unwrap();
    let after = out.gg_thickness().distance().unwrap();
    assert!(after >= before);
    for w in 0..v {
        assert!(linalg::dist(e.point(w), out.point(w)) <= tau);
    }
}

#[test]
fn mesh_net_covers_and_packs_at_every_scale() {
    let x = cycle(12);
    let pts: Vec<Vec<f64>> = (0..12)
        .map(|i| {
            let a = core::f64::consts::TAU * i as f64 / 12.0;
            vec![libm::cos(a), libm::sin(a)]
        })
        .collect();
    let e = EmbeddedComplex::new(x, 2, pts).unwrap();
    let s = MetricSample::from_mesh(&e).unwrap();
    let mut prev = usize::MAX;
    for step in 1..=12 {
        let eps = s.diameter() * step as f64 / 8.0;
        let net = greedy_net(&s, eps).unwrap();
        assert!(net.packing_ok && net.covering_ok);
        assert!(net.center_indices.len() <= prev);
        prev = net.center_indices.len();
    }
    assert_eq!(prev, 1);
}
