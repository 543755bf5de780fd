//! Closed forms for the exponential cutoff `f~(k) = e^{-k}`.
//!
//! With `x = pi A / s` the renormalized energy and force have convergent
//! expansions in `x^2` (radius `pi`). Below `x = 1` those are summed directly;
//! the closed forms would cancel against the bulk term there.
//!
//! The leading `coth` term of `rho0` carries a factor `1 / s`; without it the
//! energy disagrees with the mode sum everywhere except at `s = 1`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numerics::{bernoulli_number_f64, factorial};

const SERIES_BELOW: f64 = 1.0;
const TERMS: usize = 29;

/// `(energy, force)` coefficients of `(2x)^{2m-2}` in `rho s^4 / pi^2` and `F s^4 / pi^2`.
fn coefficients() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=TERMS)
            .map(|m| {
                let k = 2 * m as u32;
                let b = bernoulli_number_f64(2 * m + 2).expect("index within table");
                let force = 8.0 * b / ((f64::from(k) + 2.0) * factorial(k - 2));
                (force / (f64::from(k) + 1.0), force)
            })
            .collect()
    })
}

fn series(x: f64, pick: impl Fn(&(f64, f64)) -> f64) -> f64 {
    let y = 4.0 * x * x;
    // Horner from the highest term
    coefficients().iter().rev().fold(0.0, |acc, c| acc * y + pick(c))
}

fn check(s: f64, a: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite() && a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("closed forms need s > 0 and A > 0, got s={s}, A={a}")));
    }
    Ok(PI * a / s)
}

/// `(coth x, 1 / sinh^2 x)` without overflow.
fn hyperbolic(x: f64) -> (f64, f64) {
    let q = (-2.0 * x).exp();
    let one_minus_q = -(-2.0 * x).exp_m1();
    ((1.0 + q) / one_minus_q, 4.0 * q / (one_minus_q * one_minus_q))
}

fn bulk(a: f64) -> f64 {
    3.0 / (PI * PI * a.powi(4))
}

pub fn exact_rho0_exponential(s: f64, a: f64) -> Result<f64> {
    let x = check(s, a)?;
    if x < SERIES_BELOW {
        return Ok(bulk(a) + exact_rho_exponential(s, a)?);
    }
    let (coth, csch2) = hyperbolic(x);
    Ok(coth / (PI * a.powi(3) * s) + (PI * a * coth + s) * csch2 / (a * a * s.powi(3)))
}

pub fn exact_rho_exponential(s: f64, a: f64) -> Result<f64> {
    let x = check(s, a)?;
    if x < SERIES_BELOW {
        return Ok(PI * PI / s.powi(4) * series(x, |c| c.0));
    }
    let (coth, csch2) = hyperbolic(x);
    Ok((PI * a * coth / s - 3.0) / (PI * PI * a.powi(4)) + (PI * a * coth + s) * csch2 / (a * a * s.powi(3)))
}

pub fn exact_force_exponential(s: f64, a: f64) -> Result<f64> {
    let x = check(s, a)?;
    if x < SERIES_BELOW {
        return Ok(PI * PI / s.powi(4) * series(x, |c| c.1));
    }
    // (cosh 2x + 2) / sinh^4 x = 8q (1 + 4q + q^2) / (1 - q)^4 with q = e^{-2x}
    let q = (-2.0 * x).exp();
    let d = -(-2.0 * x).exp_m1();
    let ratio = 8.0 * q * (1.0 + 4.0 * q + q * q) / d.powi(4);
    Ok(bulk(a) - PI * PI * ratio / s.powi(4))
}
