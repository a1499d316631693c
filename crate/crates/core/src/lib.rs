//! Sharp length bounds for intersecting simple closed geodesics on
//! hyperbolic surfaces.
//!
//! Two simple closed geodesics that cross each other n times cannot both be
//! short: the longer one is at least a universal constant that grows with n.
//! This crate computes those constants and everything around them:
//!
//! - [`hypmath`]: collar widths, the implicit threshold equation for n
//!   crossings, and the hyperbolic polygon relations.
//! - [`torus`]: marked once-punctured tori in half-trace coordinates, Markov
//!   remarkings, slope-indexed geodesic enumeration, crossing pairs, and an
//!   independent matrix-representation length oracle.
//! - [`bounds`]: the closed-form constants for up to three crossings, the
//!   constructive upper bound from the zero-twist pasting, and the sandwich
//!   between the two.
//! - [`search`]: grid search plus simplex refinement over the moduli space
//!   of cusped once-punctured tori, reproducing the closed-form constants
//!   numerically and providing certified intervals beyond them.

pub mod bounds;
pub mod error;
pub mod hypmath;
pub mod search;
pub mod torus;

pub use error::{Error, Result};
pub use hypmath::{CollarWidth, HalfTrace, Length};
pub use torus::{CrossingPair, GeodesicInfo, Slope, TraceTriple};
