use std::f64::consts::PI;

use super::{momentum_profile, WaveletFamily};
use crate::error::{Error, Result};
use crate::numerics::{gamma, integrate_on, integrate_sine_transform, kummer_1f1, QuadratureSpec};

/// Radially symmetric position-space wavelet `w(r)`.
///
/// Hermitian and exponential families use their closed forms; the others use
/// `w(r) = (1 / 2 pi^2 r) int kappa sin(kappa r) w~(kappa) dkappa`.
pub fn position_profile(family: &WaveletFamily, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be >= 0, got {r}")));
    }
    match family {
        WaveletFamily::Hermitian(n) => {
            let n = f64::from(*n);
            let pref = 2f64.powf((n - 1.0) / 2.0) * gamma((3.0 + n) / 2.0) / (PI * gamma(1.5 + n)).sqrt();
            Ok(pref * kummer_1f1((3.0 + n) / 2.0, 1.5, -r * r / 2.0)?)
        }
        WaveletFamily::Exponential => {
            let pref = (3.0 / (2.0 * PI)).sqrt();
            if r < 1e-4 {
                return Ok(pref * (5.0 - 52.5 * r * r));
            }
            Ok(pref * (2.5 * (2.0 * r).atan()).sin() / (r * (1.0 + 4.0 * r * r).powf(1.25)))
        }
        _ => numeric_inverse(family, r, spec),
    }
}

fn numeric_inverse(family: &WaveletFamily, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    let w = |k: f64| momentum_profile(family, k);
    let band = match family {
        WaveletFamily::Bump => Some((1.0, 2.0)),
        WaveletFamily::Custom(c) => c.profile().support(),
        _ => None,
    };
    let norm = 1.0 / (2.0 * PI * PI);
    if r == 0.0 {
        let f = |k: f64| k * k * w(k);
        return Ok(norm * radial_integral(f, band, spec)?);
    }
    let f = |k: f64| k * (k * r).sin() * w(k);
    let value = match band {
        Some(_) => radial_integral(f, band, spec)?,
        None => integrate_sine_transform(|k| k * w(k), r, 0.0, spec)?,
    };
    Ok(norm * value / r)
}

/// Integral over the band (split every half unit), or over `[0, inf)`.
fn radial_integral<F: Fn(f64) -> f64>(f: F, band: Option<(f64, f64)>, spec: &QuadratureSpec) -> Result<f64> {
    match band {
        Some((lo, hi)) => {
            let n = ((hi - lo) * 8.0).ceil() as usize;
            let breaks: Vec<f64> = (1..n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
            Ok(integrate_on(f, lo, hi, &breaks, spec)?.value)
        }
        None => {
            let head = integrate_on(&f, 0.0, 2.0, &[0.5, 1.0], spec)?.value;
            Ok(head + crate::numerics::integrate(&f, crate::numerics::Interval::SemiInfinite(2.0), spec)?)
        }
    }
}
