//! Differential algebra of biquaternions on Minkowski space.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: biquaternion arithmetic, conjugations, norms and inverses.
//! * [`transforms`]: rotations, Lorentz boosts and Poincaré maps as sandwich products.
//! * [`diffops`]: bigradients `∇±`, Dirac matrices, Maxwell–Dirac and KGFSh operators.
//! * [`quadrature`]: Gauss–Legendre, sphere and ball rules used by every convolution.
//! * [`waves`]: cone-layer kernels, retarded potentials, Kirchhoff formulas, shock fronts.
//! * [`physics`]: Maxwell fields, EM shock conditions, elementary and field spinors.
//! * [`source`]: JSON source specifications for the solvers.
//! * [`cli`]: the `biwave` command-line front end (verification suites and solvers).

pub mod algebra;
pub mod cli;
pub mod diffops;
mod error;
pub mod physics;
pub mod quadrature;
pub mod source;
pub mod transforms;
pub mod waves;

pub use algebra::{Biquaternion, CVec3, Complex};
pub use error::{Error, Result};
pub use transforms::SpacetimePoint;

/// Absolute tolerance used by algebraic identity checks.
pub const ATOL: f64 = 1e-12;
/// Relative tolerance used by algebraic identity checks.
pub const RTOL: f64 = 1e-12;
