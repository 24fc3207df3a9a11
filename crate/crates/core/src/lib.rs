//! Exact arithmetic for balanced symmetric functions over GF(p).
//!
//! The crate covers:
//!
//! - [`exactnum`]: big-integer binomials and multinomials, Lucas residues,
//!   parity periods of `C(j, d) mod 2`, and lacunary binomial sums in both
//!   exact and trigonometric form.
//! - [`symfun`]: symmetric functions stored by input class, balancedness,
//!   and elementary symmetric Boolean polynomials `X(d, n)`.
//! - [`spectral`]: Walsh spectra of symmetric Boolean functions through
//!   Krawtchouk polynomials, and avalanche (SAC) tests.
//! - [`bisect`]: signed bisections of a row of Pascal's triangle.
//! - [`census`]: counts of symmetric and balanced functions, the orbit
//!   lower bound and a generator of balanced symmetric functions.
//! - [`conjectures`]: scanners and closed-form weight evaluators for the
//!   balancedness conjectures on `X(d, n)`.

pub mod bisect;
pub mod census;
pub mod conjectures;
mod error;
pub mod exactnum;
pub mod spectral;
pub mod symfun;

pub use error::{Error, Result};
pub use exactnum::Real;
