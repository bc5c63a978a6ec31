//! JSON payloads written by the subcommands. Every top-level document carries
//! `schema_version`.

use serde::Serialize;

use thickem_core::complex::Simplex;
use thickem_core::embedder::{ConditionReport, CrossingProfile, PipelineParams, PipelineResult};
use thickem_core::geometry::{LinkThickness, SphericalLinkEmbedding, ThicknessReport};
use thickem_core::net::NetResult;
use thickem_core::subdivision::SubdivisionMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct CertifyOutput {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: ThicknessReport,
}

impl CertifyOutput {
    pub fn new(report: ThicknessReport) -> Self {
        CertifyOutput { schema_version: SCHEMA_VERSION, report }
    }
}

#[derive(Serialize)]
pub struct EmbedOutput {
    pub schema_version: u32,
    pub params: PipelineParams,
    pub alpha0_final: f64,
    pub lambda: f64,
    pub radius_initial: f64,
    pub r_final: f64,
    pub tau: f64,
    pub conditions: ConditionReport,
    pub report_before: ThicknessReport,
    pub report_after: ThicknessReport,
    pub report_final: ThicknessReport,
    pub crossing: CrossingProfile,
}

impl EmbedOutput {
    pub fn new(res: &PipelineResult) -> Self {
        EmbedOutput {
            schema_version: SCHEMA_VERSION,
            params: res.params.clone(),
            alpha0_final: res.alpha0_final,
            lambda: res.lambda,
            radius_initial: res.radius_initial,
            r_final: res.r_final,
            tau: res.tau,
            conditions: res.conditions.clone(),
            report_before: res.report_before.clone(),
            report_after: res.report_after.clone(),
            report_final: res.report_final.clone(),
            crossing: res.crossing.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VertexCoordJson {
    pub carrier: Simplex,
    pub numerators: Vec<usize>,
}

#[derive(Serialize)]
pub struct SimplexParentJson {
    pub child: Simplex,
    pub parent: Simplex,
}

#[derive(Serialize)]
pub struct SubdivisionMapJson {
    pub schema_version: u32,
    pub t: usize,
    pub vertex_coords: Vec<VertexCoordJson>,
    pub simplex_parent: Vec<SimplexParentJson>,
}

impl SubdivisionMapJson {
    pub fn new(map: &SubdivisionMap) -> Self {
        SubdivisionMapJson {
            schema_version: SCHEMA_VERSION,
            t: map.t,
            vertex_coords: map
                .vertex_coords
                .iter()
                .map(|(carrier, numerators)| VertexCoordJson {
                    carrier: carrier.clone(),
                    numerators: numerators.clone(),
                })
                .collect(),
            simplex_parent: map
                .simplex_parent
                .iter()
                .map(|(child, parent)| SimplexParentJson {
                    child: child.clone(),
                    parent: parent.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct LinkSimplexJson {
    pub link_vertices: Vec<usize>,
    pub parent: Simplex,
}

#[derive(Serialize)]
pub struct LinkOutput {
    pub schema_version: u32,
    pub base: Simplex,
    pub sphere_dim: isize,
    pub vertex_to_parent: Vec<usize>,
    pub directions: Vec<Vec<f64>>,
    pub simplices: Vec<LinkSimplexJson>,
    /// Angular thickness in radians; null when the link has no disjoint pair.
    pub thickness: Option<f64>,
    pub witness: Option<(Simplex, Simplex)>,
}

impl LinkOutput {
    pub fn new(link: &SphericalLinkEmbedding, thickness: &LinkThickness) -> Self {
        let (t, w) = match thickness {
            LinkThickness::NoDisjointPairs => (None, None),
            LinkThickness::Angle { radians, witness } => (Some(*radians), Some(witness.clone())),
        };
        LinkOutput {
            schema_version: SCHEMA_VERSION,
            base: link.base.clone(),
            sphere_dim: link.sphere_dim,
            vertex_to_parent: link.vertex_to_parent.clone(),
            directions: link.directions.clone(),
            simplices: link
                .simplices
                .iter()
                .map(|(lv, parent)| LinkSimplexJson {
                    link_vertices: lv.clone(),
                    parent: parent.clone(),
                })
                .collect(),
            thickness: t,
            witness: w,
        }
    }
}

#[derive(Serialize)]
pub struct NetOutput {
    pub schema_version: u32,
    pub point_count: usize,
    #[serde(flatten)]
    pub net: NetResult,
}

#[derive(Serialize)]
pub struct CrossingOutput {
    pub schema_version: u32,
    #[serde(flatten)]
    pub profile: CrossingProfile,
}

/// Machine-readable error envelope written to stderr on failure.
#[derive(Serialize)]
pub struct ErrorOutput {
    pub schema_version: u32,
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

impl ErrorOutput {
    pub fn new(kind: &'static str, message: String) -> Self {
        ErrorOutput { schema_version: SCHEMA_VERSION, error: ErrorBody { kind, message } }
    }
}
