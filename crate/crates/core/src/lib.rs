//! Numerics for high-dimensional Euclidean geometry.
//!
//! The crate covers unit-ball volumes and sphere areas in log domain,
//! shell concentration, the inscribed-ball leakage construction inside the
//! side-2 cube, exact centroids of the k-skeletons of the standard simplex,
//! and the enumeration of dimensions in which two skeleton centroids
//! coincide. Every closed form has an independent check: an exact
//! face-enumeration oracle, or the seeded Monte Carlo and quadrature
//! estimators in [`mc`].
//!
//! With the default `parallel` feature the hot loops run on rayon. Without it
//! they run sequentially. Results are identical either way.

pub mod ball;
pub mod centroids;
pub mod diophantine;
pub mod error;
pub mod exact;
pub mod leakage;
pub mod mc;
mod par;
pub mod scaled;

pub use error::{Error, Result};
pub use exact::{BigRational, QuadraticNumber};
pub use scaled::LogScaled;
