//! Numerics for the countable basis of free electromagnetic fields.
//!
//! The basis is labeled by integer quadruples (n, j, m, λ): spectral profiles
//! are exponentially weighted generalized Laguerre polynomials in the
//! wavenumber k, angular structure is carried by Wigner small-d matrices, and
//! the whole family is orthonormal under the radial measure ∫ dk k summed over
//! angular channels. The crate provides
//!
//! - [`specfun`]: Laguerre polynomials, Wigner small-d, spherical harmonics,
//!   spherical Bessel/Hankel functions, log-factorial tables;
//! - [`basis`]: multipolar and plane-wave expansion functions and index
//!   enumeration;
//! - [`hilbert`]: Gauss-Laguerre quadrature rules, scalar products, photon
//!   number and energy functionals, analytic integral oracles;
//! - [`projection`]: expansion of arbitrary spectra in the basis,
//!   reconstruction, truncation residuals, dilatations;
//! - [`timedomain`]: synthesis of the regular/incoming/outgoing radial-temporal
//!   wavelet kernels;
//! - [`cli`]: the `polybasis` command-line tool built on all of the above.

pub mod basis;
pub mod cli;
pub mod error;
pub mod hilbert;
mod numeric;
pub mod projection;
pub mod specfun;
pub mod timedomain;

pub use error::{Error, Result};
