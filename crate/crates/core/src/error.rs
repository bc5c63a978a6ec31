use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::VertexId;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A simplex tuple repeats a vertex or is empty.
    MalformedSimplex(Vec<VertexId>),
    /// A vertex id is >= the declared vertex count.
    VertexOutOfRange { vertex: VertexId, vertex_count: usize },
    /// A queried simplex is not present in the complex.
    SimplexNotFound(Vec<VertexId>),
    /// Two point sets live in different ambient dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// A simplex whose affine span has too low a dimension for the operation.
    DegenerateSimplex(Vec<VertexId>),
    /// A link vertex projects to (numerically) zero in the normal space.
    DegenerateLink { base: Vec<VertexId>, vertex: VertexId },
    /// An operation received an invalid parameter.
    InvalidParameter(&'static str),
    /// Constrained placement could not satisfy its constraints within the
    /// resample budget. Carries a description of the violated constraint.
    Saturation { rounds: usize, constraint: String },
    /// The straight-line map is not injective; carries the witness.
    InvalidEmbedding(String),
    /// A metric sample or mesh is disconnected.
    Disconnected { component_of: usize, unreachable: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedSimplex(s) => write!(f, "malformed simplex {:?}", s),
            Error::VertexOutOfRange { vertex, vertex_count } => {
                write!(f, "vertex id {} out of range (vertex count {})", vertex, vertex_count)
            }
            Error::SimplexNotFound(s) => write!(f, "simplex {:?} not found in complex", s),
            Error::DimensionMismatch { left, right } => {
                write!(f, "ambient dimension mismatch: {} vs {}", left, right)
            }
            Error::DegenerateSimplex(s) => write!(f, "degenerate simplex {:?}", s),
            Error::DegenerateLink { base, vertex } => {
                write!(f, "link vertex {} of simplex {:?} projects to zero", vertex, base)
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {}", what),
            Error::Saturation { rounds, constraint } => {
                write!(f, "placement saturated after {} rounds: {}", rounds, constraint)
            }
            Error::InvalidEmbedding(w) => write!(f, "invalid embedding: {}", w),
            Error::Disconnected { component_of, unreachable } => {
                write!(f, "disconnected input: vertex {} unreachable from {}", unreachable, component_of)
            }
        }
    }
}

impl core::error::Error for Error {}
