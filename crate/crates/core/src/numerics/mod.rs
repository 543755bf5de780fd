//! Special functions and quadrature primitives shared by every other module.
//!
//! Everything here is a pure function of its inputs.

mod accel;
mod bernoulli;
mod diff;
mod gamma;
mod hypergeometric;
mod interp;
mod quadrature;

pub use accel::wynn_epsilon;
pub use bernoulli::{
    bernoulli_number, bernoulli_number_f64, bernoulli_polynomial, binomial, periodized_bernoulli,
};
pub use diff::{differentiate, DerivativeEstimate, DiffSpec};
pub use gamma::{
    factorial, gamma, gamma_half_integer, incomplete_gamma_upper, incomplete_gamma_upper_half,
    regularized_gamma_upper,
};
pub use hypergeometric::kummer_1f1;
pub use interp::MonotoneCubic;
pub use quadrature::{
    gauss_legendre, integrate, integrate_estimate, integrate_periodized_weight,
    integrate_on, integrate_periodized_weight_with, integrate_sine_transform, Estimate, Interval,
    PeriodicWeightHints, QuadratureMethod, QuadratureSpec,
};
