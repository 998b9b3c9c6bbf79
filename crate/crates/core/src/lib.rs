//! Verified tilings, distances and cusp areas for cusped hyperbolic
//! 3-manifolds given by ideal triangulations.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub(crate) mod bigfloat;
pub mod certify;
pub mod collections;
pub mod complex;
pub mod cusp_areas;
pub mod developing;
pub mod distances;
pub mod error;
pub mod format;
pub mod geometry;
pub mod interval;
pub mod minkowski;
pub mod tiling;
pub mod trace;
pub mod triangulation;

pub use complex::ComplexInterval;
pub use error::{Error, Result};
pub use interval::{ExtendedBound, Interval};
pub use minkowski::{MMatrix, MVector};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 212;
