//! Stable evaluation of the special functions every other module consumes:
//! generalized Laguerre polynomials, Wigner small-d matrices, scalar spherical
//! harmonics, spherical Bessel and Hankel functions, and log-factorial ratios.
//!
//! All operations are pure functions of their arguments; tables are immutable
//! after construction, so everything here is safe for unrestricted concurrent
//! reads.

mod bessel;
mod factorial;
mod laguerre;
mod wigner;

pub use bessel::{spherical_bessel_j, spherical_bessel_y, spherical_hankel, HankelKind, BESSEL_L_CAP};
pub use factorial::{exact_factorial_ratio, LogFactorialTable};
pub use laguerre::{laguerre, LAGUERRE_DEGREE_CAP};
pub use wigner::{scalar_spherical_harmonic, wigner_small_d, WIGNER_J_CAP};

pub(crate) use factorial::table;
