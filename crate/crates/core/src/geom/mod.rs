//! Scalars, homogeneous coordinates, 3×3 matrices and polygons.

pub mod homog;
pub mod mat3;
pub mod polygon;
pub mod scalar;

pub use homog::{det3, join, join_eps, lift, meet, meet_eps, project, project_eps, HomoVec, Point2, Role};
pub use mat3::Mat3;
pub use polygon::{Genericity, Polygon};
pub use scalar::{format_rational, parse_rational, ratio, Rational, Scalar, ScalarMode, DEFAULT_EPSILON};
