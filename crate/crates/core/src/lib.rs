//! Exact-arithmetic toolkit for greedy routing on geometric graphs.
//!
//! The library answers one question: does a given geometric graph support
//! guaranteed-delivery greedy routing, for every source and every
//! destination point in the plane? The answer is decided exactly, two
//! independent ways, and when it is "no" the library constructs a concrete
//! destination and a stuck route proving it.
//!
//! All coordinates are arbitrary-precision rationals. There is no floating
//! point on any decision path, which is what makes ties (collinear points,
//! cocircular points, equidistant neighbors) decidable instead of being
//! rounding noise.

pub mod delaunay;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod point;
pub mod regions;
pub mod routing;
pub mod scalar;
pub mod sites;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::GeometricGraph;
pub use point::{Point, Vector};
pub use scalar::Scalar;
pub use sites::{SiteId, SiteSet};
