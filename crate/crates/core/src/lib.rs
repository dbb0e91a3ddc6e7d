//! n-dimensional conic sections and their hyperplane slices.
//!
//! The crate builds hyperboloids of two sheets, ellipsoids, paraboloids
//! and cones in R^n, intersects them with hyperplanes in closed form, and
//! uses those slices to intersect the additively weighted bisectors of a
//! set of balls. The Apollonius problem (spheres tangent to n+1 given
//! spheres) falls out as an application.
//!
//! ```
//! use nconic::{Ball, Vector, cascade};
//!
//! let balls = vec![
//!     Ball::new(Vector::new(vec![0.0, 0.0]).unwrap(), 1.0).unwrap(),
//!     Ball::new(Vector::new(vec![3.0, 0.0]).unwrap(), 2.0).unwrap(),
//!     Ball::new(Vector::new(vec![0.0, 4.0]).unwrap(), 3.0).unwrap(),
//! ];
//! let r = cascade::intersect_bisectors(&balls).unwrap();
//! assert!((r.tangent_z - 6.0).abs() < 1e-9);
//! ```

pub mod apollonius;
pub mod bisectors;
pub mod cascade;
pub mod conics;
pub mod error;
pub mod geometry;
pub mod io;
pub mod slicer;
pub mod tolerance;

pub use bisectors::Ball;
pub use conics::{ConicKind, ConicSpec, SheetTag};
pub use error::{Error, Result};
pub use geometry::{Hyperplane, UnitVector, Vector};
pub use tolerance::Tolerances;
