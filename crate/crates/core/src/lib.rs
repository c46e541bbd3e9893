//! Inversive-distance circle packings of the octahedron built from coaxial
//! flows, with a stereographic lift to the sphere and a non-equivalence test.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coaxial;
pub mod construction;
pub mod equatorial;
pub mod error;
pub mod inversive;
pub mod lift;
pub mod mobius;
pub mod optimize;
pub mod polyhedral;
pub mod stereo;

pub use coaxial::{CoaxialFamily, FamilyKind, FlowSpec};
pub use construction::{
    Configuration, CriticalityReport, ExtremaReport, MsConstruction, MsParams, PairSolution, Vertex,
};
pub use error::{Error, Result};
pub use inversive::{
    inv_dist_plane, inv_dist_sphere, InversiveDistance, PlanarCircle, PlanarPoint, SphericalCircle,
};
pub use mobius::MobiusMap;
