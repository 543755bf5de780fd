//! Bernoulli remainder of the Euler–Maclaurin expansion at fourth order.
//!
//! `R_4(s; A) = (2 pi)^2 / s^3 int_0^inf (x^2 f~(alpha x))''' B_4({x}) / 4! dx`
//! with `alpha = 2 pi A / s`. The renormalized energy is exactly
//! `-pi^2 / 45 s^4 + (2 / s) R_4` for every cutoff.

use std::f64::consts::PI;

use super::{BoundaryCondition, CasimirConfig};
use crate::error::{Error, Result};
use crate::numerics::{differentiate, integrate_periodized_weight_with, DiffSpec, PeriodicWeightHints, QuadratureSpec};
use crate::wavelets::{cutoff_derivative, Analyticity, WaveletFamily};

#[derive(Debug, Clone, PartialEq)]
pub struct RemainderValue {
    pub value: f64,
    pub error: f64,
    /// All derivatives of the cutoff vanish at the origin, so the remainder
    /// carries the whole deviation from the continuum result.
    pub flat: bool,
    pub warning: Option<String>,
}

/// `d^3/dx^3 [x^2 f~(alpha x)]`.
fn third_derivative(family: &WaveletFamily, alpha: f64, x: f64) -> f64 {
    let k = alpha * x;
    let d = |order| cutoff_derivative(family, k, order).map(|d| d.value).unwrap_or(f64::NAN);
    let (d1, d2, d3) = (d(1), d(2), d(3));
    let mut v = 6.0 * alpha * d1;
    if d2 != 0.0 {
        v += 6.0 * alpha * alpha * x * d2;
    }
    if d3 != 0.0 {
        v += alpha.powi(3) * x * x * d3;
    }
    v
}

fn hints(family: &WaveletFamily, alpha: f64) -> PeriodicWeightHints {
    let mut h = PeriodicWeightHints { active_from: family.flat_until() / alpha, ..Default::default() };
    if let Some(top) = family.cutoff_support() {
        h.upper = Some(top / alpha);
    }
    h.breakpoints = family.seams().iter().map(|k| k / alpha).collect();
    h
}

pub fn remainder_r4(family: &WaveletFamily, s: f64, a: f64, spec: &QuadratureSpec) -> Result<RemainderValue> {
    if !(s > 0.0 && s.is_finite() && a >= 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("remainder needs s > 0 and A >= 0, got s={s}, A={a}")));
    }
    let flat = family.analyticity() == Analyticity::Flat;
    let warning = (!flat).then(|| {
        format!("{family} cutoff has non-vanishing derivatives at 0; the remainder is order dependent")
    });
    if a == 0.0 {
        return Ok(RemainderValue { value: 0.0, error: 0.0, flat, warning });
    }
    let alpha = 2.0 * PI * a / s;
    let g = |x: f64| third_derivative(family, alpha, x);
    let est = integrate_periodized_weight_with(g, 4, spec, &hints(family, alpha))?;
    let scale = (2.0 * PI).powi(2) / s.powi(3);
    let value = scale * est.value;
    if !value.is_finite() {
        return Err(Error::Convergence { estimate: value, error: f64::INFINITY });
    }
    Ok(RemainderValue { value, error: scale * est.error, flat, warning })
}

fn effective_separation(bc: BoundaryCondition, s: f64) -> f64 {
    match bc {
        BoundaryCondition::Periodic => s,
        BoundaryCondition::Dirichlet => 2.0 * s,
    }
}

/// Renormalized energy through the remainder route.
pub(crate) fn rho_via_remainder(config: &CasimirConfig, family: &WaveletFamily) -> Result<RemainderValue> {
    let s = effective_separation(config.bc, config.s);
    let r = remainder_r4(family, s, config.a, &config.quadrature)?;
    Ok(RemainderValue { value: -PI.powi(2) / (45.0 * s.powi(4)) + 2.0 / s * r.value, ..r })
}

/// `-pi^2 / 15 s^4 - 2 dR_4/ds` with the derivative taken numerically.
pub fn force_via_remainder(
    family: &WaveletFamily,
    s: f64,
    a: f64,
    quadrature: &QuadratureSpec,
    diff: &DiffSpec,
) -> Result<f64> {
    let continuum = -PI.powi(2) / (15.0 * s.powi(4));
    if a == 0.0 {
        return Ok(continuum);
    }
    let failure = std::cell::Cell::new(None);
    let r4 = |t: f64| match remainder_r4(family, t, a, quadrature) {
        _ if !(t > 0.0) => f64::NAN,
        Ok(r) => r.value,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let d = differentiate(r4, s, diff);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(continuum - 2.0 * d?.value)
}

pub(crate) fn force_via_remainder_bc(config: &CasimirConfig, family: &WaveletFamily, diff: &DiffSpec) -> Result<f64> {
    let s = effective_separation(config.bc, config.s);
    force_via_remainder(family, s, config.a, &config.quadrature, diff)
}
