use crate::error::{Error, Result};
use crate::numerics::gamma::gamma;

const MAX_TERMS: usize = 2000;
/// Beyond this |z| (negative z only) the large-argument expansion takes over.
const ASYMPTOTIC_THRESHOLD: f64 = 50.0;

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Kummer's confluent hypergeometric function `1F1(a; b; z)` for real arguments.
///
/// Non-negative `z` uses the power series directly. Negative `z` goes through
/// Kummer's transformation `e^z 1F1(b-a; b; -z)`, which removes the alternating
/// cancellation; for `z < -50` with a non-terminating series the large-argument
/// expansion `Gamma(b)/Gamma(b-a) (-z)^{-a} sum (a)_s (a-b+1)_s / s! (-z)^{-s}` is used.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if is_non_positive_integer(b) {
        return Err(Error::InvalidArgument(format!("1F1 undefined for b = {b}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > 0.0 {
        return power_series(a, b, z);
    }
    let c = b - a;
    if is_non_positive_integer(c) || -z <= ASYMPTOTIC_THRESHOLD {
        return Ok(z.exp() * power_series(c, b, -z)?);
    }
    large_negative(a, b, -z)
}

fn power_series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        // stop once terms are shrinking and negligible
        let shrinking = ((a + kf + 1.0) / (b + kf + 1.0) * z / (kf + 2.0)).abs() < 1.0;
        if shrinking && term.abs() <= 1e-17 * sum.abs() {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::SeriesRange { a, b, z, terms: MAX_TERMS })
}

fn large_negative(a: f64, b: f64, x: f64) -> Result<f64> {
    let d = a - b + 1.0;
    let mut term: f64 = 1.0;
    let mut sum: f64 = 1.0;
    let mut prev = f64::INFINITY;
    for s in 0..MAX_TERMS {
        let sf = s as f64;
        term *= (a + sf) * (d + sf) / ((sf + 1.0) * x);
        if term.abs() > prev {
            // smallest term reached; accept only if it is already negligible
            if prev <= 1e-15 * sum.abs() {
                break;
            }
            return Err(Error::SeriesRange { a, b, z: -x, terms: s });
        }
        sum += term;
        prev = term.abs();
        if term == 0.0 || term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    Ok(gamma(b) / gamma(b - a) * x.powf(-a) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Plain power series, no transformations, as an independent check.
    fn naive(a: f64, b: f64, z: f64, terms: usize) -> f64 {
        let mut t = 1.0;
        let mut s = 1.0;
        for k in 0..terms {
            let k = k as f64;
            t *= (a + k) / (b + k) * z / (k + 1.0);
            s += t;
        }
        s
    }

    #[test]
    fn trivial_values() {
        assert_eq!(kummer_1f1(2.0, 1.5, 0.0).unwrap(), 1.0);
        assert_relative_eq!(kummer_1f1(1.0, 1.0, 1.0).unwrap(), std::f64::consts::E, max_relative = 1e-14);
        assert_relative_eq!(kummer_1f1(3.0, 3.0, -2.0).unwrap(), (-2.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn matches_naive_series_for_small_arguments() {
        assert_relative_eq!(kummer_1f1(2.0, 1.5, -0.5).unwrap(), naive(2.0, 1.5, -0.5, 30), max_relative = 1e-13);
        for &(a, b, z) in &[(2.5, 1.5, -1.7), (3.0, 1.5, 2.2), (0.3, 2.7, -3.1)] {
            assert_relative_eq!(kummer_1f1(a, b, z).unwrap(), naive(a, b, z, 80), max_relative = 1e-12);
        }
    }

    #[test]
    fn terminating_kummer_transform() {
        // 1F1(5/2; 3/2; z) = e^z 1F1(-1; 3/2; -z) = e^z (1 + 2z/3)
        for &z in &[-0.3f64, -10.0, -80.0] {
            let expected = z.exp() * (1.0 + 2.0 * z / 3.0);
            assert_relative_eq!(kummer_1f1(2.5, 1.5, z).unwrap(), expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn asymptotic_branch_is_continuous() {
        let below = kummer_1f1(2.0, 1.5, -50.0).unwrap();
        let above = kummer_1f1(2.0, 1.5, -50.000_000_1).unwrap();
        assert_relative_eq!(below, above, max_relative = 1e-7);
        // leading behaviour Gamma(3/2)/Gamma(-1/2) x^{-2}
        let x: f64 = 400.0;
        let lead = gamma(1.5) / gamma(-0.5) / (x * x);
        assert_relative_eq!(kummer_1f1(2.0, 1.5, -x).unwrap(), lead, max_relative = 2e-2);
    }

    #[test]
    fn rejects_pole_in_b() {
        assert!(kummer_1f1(1.0, -2.0, 0.5).is_err());
    }
}
