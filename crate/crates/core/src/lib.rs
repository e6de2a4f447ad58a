//! Limit points of the pentagram map.
//!
//! For a convex polygon `A` the iterates `T^k(A)` of the pentagram map shrink
//! to a single point. That point is the projection of an eigenvector of a
//! 3×3 matrix `L_A` built directly from the vertices, and `L_A` is unchanged
//! by the map. This crate builds `L_A` exactly, extracts the limit point from
//! its spectrum, and checks every step against direct iteration.
//!
//! - [`geom`]: scalars (exact [`Rational`] or `f64`), homogeneous
//!   coordinates, polygons and their predicates.
//! - [`pentagram`]: the map itself, its duality factors and inverse.
//! - [`collineation`]: `L_A`, its characteristic polynomial and the identities
//!   it satisfies.
//! - [`limit`]: cubic roots, eigenvectors, and limit-point selection.
//! - [`axis_aligned`]: closed forms for polygons with axis-parallel edges.
//! - [`sample`]: seeded random polygons and transforms for verification.

pub mod axis_aligned;
pub mod collineation;
pub mod error;
pub mod geom;
pub mod limit;
pub mod pentagram;
pub mod sample;

pub use collineation::Collineation;
pub use error::{Error, Result};
pub use geom::{HomoVec, Mat3, Point2, Polygon, Rational, Scalar};
