//! Exact computation of trimming sequences, trimming cylinders and the
//! decomposition of the tight span of a finite metric space.
//!
//! All arithmetic is over arbitrary-precision rationals, so every identity
//! checked by the [`verify`] module is checked with equality, not within a
//! tolerance.

pub mod cylinder;
pub mod desk;
pub mod error;
pub mod instances;
pub mod io;
pub mod rational;
pub mod space;
pub mod tight_span;
pub mod treegen;
pub mod trimming;
pub mod verify;

pub use cylinder::{build_cylinder, Cylinder, CylinderPoint, QuotientCylinder, VertexId};
pub use error::{Error, Result};
pub use rational::Rational;
pub use space::{validate_space, DriftFunction, MetricSpace, PseudometricSpace, QuotientMap, ValidatedSpace};
pub use tight_span::{decompose, is_member, Classification, TightSpanFunction};
pub use trimming::{trim_step, trimming_sequence, TrimLevel, TrimSequence};
