//! Thick piecewise-linear embeddings of simplicial complexes.
//!
//! The crate is split along the pipeline stages:
//!
//! - [`complex`]: abstract simplicial complexes, faces, links, the graph
//!   metric on the 1-skeleton, and the shared-vertex simplex coloring.
//! - [`geometry`]: straight-line embedded complexes and every metric
//!   measurement attached to them (convex simplex distances, Gromov-Guth
//!   thickness, spherical link thickness, enclosing balls, crossing counts,
//!   altitude-ratio quality).
//! - [`subdivision`]: edgewise subdivision with parameter `t` and its induced
//!   refinement of embeddings.
//! - [`embedder`]: the randomized construction — constrained placement on a
//!   boundary sphere, condition certification, subdivision, and the
//!   thickness-non-decreasing perturbation pass.
//! - [`net`]: greedy epsilon-nets on finite metric samples with
//!   packing/covering certification.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `thickem` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod complex;
pub mod embedder;
pub mod error;
pub mod geometry;
pub mod linalg;
pub(crate) mod mathx;
pub mod net;
pub mod rng;
pub mod subdivision;

pub use complex::{LoadConvention, LoadProfile, SimplexColoring, SimplicialComplex, VertexId};
pub use error::Error;
pub use geometry::EmbeddedComplex;
