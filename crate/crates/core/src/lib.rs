//! Construction, validation and analysis of origami-extrusion 3D gadgets.
//!
//! Angles are radians throughout. Every construction uses the canonical
//! placement of [`frame::Frame`].

pub mod conventional;
pub mod crease;
pub mod critical;
pub mod division;
pub mod error;
pub mod fold;
pub mod frame;
pub mod geom;
pub mod improved;
pub mod interference;
pub mod params;
pub mod report;
pub mod svg;
pub mod validator;

pub use crease::{Assignment, CreasePattern, Edge, Metadata, VertexCheck, Wedge};
pub use error::Error;
pub use geom::{Point2, Ray2, Segment, Tolerance};
pub use params::{DerivedQuantities, GadgetParams, PerSide, Side, ValidationMode};
