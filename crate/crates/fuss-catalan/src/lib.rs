//! Numerics for the two-parameter Fuss-Catalan distributions.
//!
//! The crate evaluates the family indexed by (p, r) with p >= 1, 0 < r <= p:
//! moments and free cumulants, the density and its parametrization, free
//! Levy-Khintchine data, free-probability classification (infinite
//! divisibility, self-decomposability, regularity, the free L1 class) and a
//! unimodality / phase-transition scanner.
//!
//! Modules:
//! - [`numerics`]: special functions, tanh-sinh quadrature, Brent root finding
//! - [`combinatorics`]: Fuss-Catalan numbers and moment–cumulant conversion
//! - [`density`]: density evaluation on the trigonometric parametrization
//! - [`levy`]: cumulant transforms, Levy densities and integral verifications
//! - [`classify`]: theorem-side region tests and Hankel-matrix evidence
//! - [`unimodal`]: mode counting and the phase-transition machinery

pub mod classify;
pub mod combinatorics;
pub mod density;
pub mod error;
pub mod levy;
pub mod numerics;
pub mod params;
pub mod unimodal;

pub use error::{Error, Result};
pub use params::{FcParams, RealSequence};
