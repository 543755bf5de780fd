//! Casimir energy density and force for a massless scalar field between
//! parallel plates, regularized by a wavelet scale cutoff.
//!
//! The vacuum keeps only field modes resolved by wavelets of scale above `A`.
//! The resulting momentum cutoff function `f~` enters periodic and Dirichlet
//! mode sums, an Euler–Maclaurin series with Bernoulli remainder, and the
//! force `-d/ds (s rho)`. Four wavelet families are catalogued with closed
//! forms; arbitrary radial profiles are handled numerically.

pub mod casimir;
pub mod cwt;
pub mod error;
pub mod numerics;
pub mod verify;
pub mod wavelets;

pub use error::{Error, Result};
