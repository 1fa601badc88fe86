//! Toric fibration data: weights, fixed points, one-dimensional orbits,
//! effective degrees and push-forwards.

pub mod geometry;
pub mod pushforward;
pub mod spec;
pub mod weight;

pub use geometry::{Edge, FixedPoint, Geometry};
pub use pushforward::FiberPoly;
pub use spec::{Base, ToricFibrationSpec};
pub use weight::Weight;
