use std::f64::consts::PI;

use super::{momentum_profile, WaveletFamily};
use crate::error::{Error, Result};
use crate::numerics::{integrate_on, QuadratureSpec};

fn require_bump(family: &WaveletFamily, what: &str) -> Result<()> {
    match family {
        WaveletFamily::Bump => Ok(()),
        other => Err(Error::UnsupportedMethod { method: what.into(), family: other.to_string() }),
    }
}

/// `sin z / z`.
fn j0(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}

/// `sin z / z^2 - cos z / z`.
fn j1(z: f64) -> f64 {
    if z.abs() < 1e-3 {
        z / 3.0 - z * z * z / 30.0
    } else {
        (z.sin() - z * z.cos()) / (z * z)
    }
}

/// Band `(1/a, 2/a)` of `w~(a kappa)` intersected with that of `w~(a' kappa)`.
fn common_band(a: f64, b: f64) -> Option<(f64, f64)> {
    let lo = (1.0 / a).max(1.0 / b);
    let hi = (2.0 / a).min(2.0 / b);
    (hi > lo).then_some((lo, hi))
}

/// Integral over `[lo, hi]` with panels no wider than a quarter period of
/// the Bessel factor.
fn band_integral<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    let per = if r > 0.0 { (hi - lo) * r / (PI / 2.0) } else { 0.0 };
    let n = (per.ceil() as usize).max(8);
    let breaks: Vec<f64> = (1..n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    Ok(integrate_on(f, lo, hi, &breaks, spec)?.value)
}

/// Overlap `int w((x'-x)/2^j) w((x'-y)/2^l) d^3x'` at `|x - y| = shift`:
/// `2^{3j} 2^{3l} (1/2pi^2) int k^2 w~(2^j k) w~(2^l k) j0(k shift) dk`.
///
/// Distinct octaves share no momentum, so the value is exactly zero there.
pub fn dyadic_orthonormality(family: &WaveletFamily, j: i32, l: i32, shift: f64, spec: &QuadratureSpec) -> Result<f64> {
    require_bump(family, "dyadic overlap")?;
    if j.abs() > 6 || l.abs() > 6 {
        return Err(Error::InvalidArgument("dyadic indices must satisfy |j|, |l| <= 6".into()));
    }
    if !(shift >= 0.0) {
        return Err(Error::InvalidArgument(format!("shift must be >= 0, got {shift}")));
    }
    let (a, b) = (2f64.powi(j), 2f64.powi(l));
    let Some((lo, hi)) = common_band(a, b) else {
        return Ok(0.0);
    };
    let f = |k: f64| k * k * momentum_profile(family, a * k) * momentum_profile(family, b * k) * j0(k * shift);
    let v = band_integral(f, lo, hi, shift, spec)?;
    Ok((a * b).powi(3) * v / (2.0 * PI * PI))
}

/// `dC/dr` of the cross-correlation of `w(x/a)` and `w(x/a')`:
/// `-(a a')^3 / (2 pi^2) int k^3 w~(a k) w~(a' k) j1(k r) dk`.
fn kernel(family: &WaveletFamily, a: f64, b: f64, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    let Some((lo, hi)) = common_band(a, b) else {
        return Ok(0.0);
    };
    let f = |k: f64| k.powi(3) * momentum_profile(family, a * k) * momentum_profile(family, b * k) * j1(k * r);
    let v = band_integral(f, lo, hi, r, spec)?;
    Ok(-(a * b).powi(3) * v / (2.0 * PI * PI))
}

/// Derivative-kernel magnitude at one separation.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPoint {
    pub r: f64,
    /// `|dC/dr|` at `r`.
    pub magnitude: f64,
    /// Largest `|dC/dr|` over one carrier period centred on `r`.
    pub envelope: f64,
    /// Set when the quadrature failed; the numbers are then NaN.
    pub failure: Option<Error>,
}

/// `|dC/dr|` for the bump wavelet at each radius in `r_values`.
///
/// The kernel oscillates with the band's central momentum, so pointwise
/// magnitudes alone can mislead a decay fit; the envelope is reported too.
pub fn derivative_kernel_decay(
    family: &WaveletFamily,
    a: f64,
    a_prime: f64,
    r_values: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<KernelPoint>> {
    require_bump(family, "derivative kernel")?;
    if !(a > 0.0 && a_prime > 0.0) {
        return Err(Error::InvalidArgument("scales must be positive".into()));
    }
    if r_values.windows(2).any(|w| !(w[1] > w[0])) || r_values.iter().any(|r| !(*r >= 0.0)) {
        return Err(Error::InvalidArgument("r_values must be non-negative and increasing".into()));
    }
    let period = match common_band(a, a_prime) {
        Some((lo, hi)) => 2.0 * PI / (0.5 * (lo + hi)),
        None => 1.0,
    };
    const WINDOW_SAMPLES: usize = 20;
    Ok(r_values
        .iter()
        .map(|&r| {
            let eval = || -> Result<(f64, f64)> {
                let magnitude = kernel(family, a, a_prime, r, spec)?.abs();
                let mut envelope = magnitude;
                for i in 0..=WINDOW_SAMPLES {
                    let t = r + period * (i as f64 / WINDOW_SAMPLES as f64 - 0.5);
                    if t >= 0.0 {
                        envelope = envelope.max(kernel(family, a, a_prime, t, spec)?.abs());
                    }
                }
                Ok((magnitude, envelope))
            };
            match eval() {
                Ok((magnitude, envelope)) => KernelPoint { r, magnitude, envelope, failure: None },
                Err(e) => KernelPoint { r, magnitude: f64::NAN, envelope: f64::NAN, failure: Some(e) },
            }
        })
        .collect())
}
