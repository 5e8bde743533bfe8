//! Geometric constants of two-dimensional real normed spaces.
//!
//! The crate evaluates the skew James type constant `J_t[τ, X]` and its
//! relatives (James type constants, the James constant, von Neumann-Jordan
//! type constants, the modulus of convexity, `G_t`) on planar norms, and
//! turns the known inequalities between them into numerical certificates.
//!
//! ```
//! use skewjames::{constants, geometry::NormSpace};
//!
//! let hex = NormSpace::hexagon();
//! let req = constants::ConstantRequest::new(&hex, 1.0, 2.0);
//! let j = constants::skew_james(&req).unwrap();
//! assert!((j.value - 2.5).abs() < 1e-12);
//! ```

pub mod constants;
pub mod geometry;
pub mod means;
pub mod search;
pub mod verify;

pub use constants::{ConstantError, ConstantRequest, ConstantValue, MethodChoice};
pub use geometry::{BuiltinId, NormSpace, NormSpec, Vec2};
pub use means::{generalized_mean, ExtReal};
pub use search::{Method, SearchConfig, SearchResult};
pub use verify::{Certificate, Claim, Verdict};
