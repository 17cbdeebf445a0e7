//! Exact-arithmetic construction and verification of 4-regular matchstick
//! graphs assembled from rigid unit-triangle linkages.

pub mod assemble;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod linkage;
pub mod reference;
pub mod scalar;
pub mod search;
mod spatial;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use geom::{Line, Point, SegmentRelation, Side};
pub use graph::{GraphKind, UnitGraph};
pub use scalar::Scalar;
