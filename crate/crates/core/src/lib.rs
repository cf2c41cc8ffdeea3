//! The lamplighter group `L2` with the Diestel-Leader word metric (generating
//! set `{t, at}`) and its horofunction boundary.
//!
//! * [`lamp`]: lamp-stand elements, words, canonical text form.
//! * [`metric`]: closed-form distance and geodesic words.
//! * [`oracle`]: breadth-first search over the Cayley graph.
//! * [`horofn`]: boundary points and horofunction evaluators.
//! * [`classify`]: sequences, empirical horofunction limits, classification.
//! * [`topology`]: basis neighborhoods and convergence of horofunctions.
//! * [`action`]: left action of `L2` on horofunctions.

pub mod action;
pub mod classify;
pub mod error;
pub mod ext;
pub mod horofn;
pub mod lamp;
pub mod metric;
pub mod oracle;
pub mod topology;

pub use error::{Error, Result};
pub use ext::ExtInt;
pub use horofn::{BoundaryRay, Category, Direction, Horofunction, Rib};
pub use lamp::{Generator, LampStand};
pub use metric::{distance, DistanceBreakdown};
