//! Self-contained numerical kernel: special functions, double-exponential
//! quadrature and bracketed root finding.
//!
//! Everything here is a pure function of its inputs; no global state.

pub mod quadrature;
pub mod roots;
pub mod special;

pub use quadrature::{integrate, integrate_points, QuadPoint, QuadratureConfig};
pub use roots::{find_root, RootConfig};
pub use special::{beta, binom_real, gauss_2f1_1_s_3, log_gamma};
