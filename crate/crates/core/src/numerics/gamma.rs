/// `n!` as a float (exact up to 22!).
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

/// Gamma function for real arguments.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `Gamma(twice / 2)` computed exactly from the half-integer recurrence.
pub fn gamma_half_integer(twice: u32) -> f64 {
    assert!(twice > 0, "Gamma has a pole at 0");
    if twice % 2 == 0 {
        return factorial(twice / 2 - 1);
    }
    // Gamma(1/2) = sqrt(pi), Gamma(x + 1) = x Gamma(x)
    let mut g = std::f64::consts::PI.sqrt();
    let mut x = 0.5;
    while (2.0 * x) < f64::from(twice) {
        g *= x;
        x += 1.0;
    }
    g
}

/// `e^{-x} sum_{l<n} x^l / l!`, i.e. `Gamma(n, x) / (n-1)!`.
pub fn regularized_gamma_upper(n: u32, x: f64) -> f64 {
    assert!(n >= 1, "order must be positive");
    assert!(x >= 0.0, "argument must be non-negative");
    let mut term = (-x).exp();
    let mut sum = term;
    for l in 1..n {
        term *= x / f64::from(l);
        sum += term;
    }
    sum
}

/// Upper incomplete gamma `Gamma(n, x)` for positive integer order via the
/// finite sum `(n-1)! e^{-x} sum_{l<n} x^l / l!`.
pub fn incomplete_gamma_upper(n: u32, x: f64) -> f64 {
    factorial(n - 1) * regularized_gamma_upper(n, x)
}

/// Upper incomplete gamma at half-integer order, `Gamma(j + 1/2, y)`.
pub fn incomplete_gamma_upper_half(j: u32, y: f64) -> f64 {
    assert!(y >= 0.0, "argument must be non-negative");
    let mut g = std::f64::consts::PI.sqrt() * libm::erfc(y.sqrt());
    let mut a = 0.5;
    for _ in 0..j {
        g = a * g + y.powf(a) * (-y).exp();
        a += 1.0;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn finite_sum_values() {
        assert_abs_diff_eq!(incomplete_gamma_upper(2, 0.0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(incomplete_gamma_upper(1, 1.0), (-1.0f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(
            incomplete_gamma_upper(3, 2.0),
            10.0 * (-2.0f64).exp(),
            max_relative = 1e-15
        );
        assert_relative_eq!(incomplete_gamma_upper(5, 0.0), 24.0, max_relative = 1e-15);
    }

    #[test]
    fn upward_recurrence() {
        for n in 1..=10u32 {
            for i in 0..=40 {
                let x = 0.25 * f64::from(i);
                let lhs = incomplete_gamma_upper(n + 1, x);
                let rhs = f64::from(n) * incomplete_gamma_upper(n, x) + x.powi(n as i32) * (-x).exp();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn half_integer_gamma() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma_half_integer(1), sqrt_pi, max_relative = 1e-15);
        assert_relative_eq!(gamma_half_integer(5), 0.75 * sqrt_pi, max_relative = 1e-15);
        assert_relative_eq!(gamma_half_integer(8), 6.0, max_relative = 1e-15);
        for twice in 1..20 {
            assert_relative_eq!(gamma_half_integer(twice), gamma(f64::from(twice) / 2.0), max_relative = 1e-13);
        }
    }

    #[test]
    fn half_order_incomplete_gamma() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        // y = 0 gives the complete gamma function
        assert_relative_eq!(incomplete_gamma_upper_half(0, 0.0), sqrt_pi, max_relative = 1e-15);
        assert_relative_eq!(incomplete_gamma_upper_half(2, 0.0), 0.75 * sqrt_pi, max_relative = 1e-14);
        // Gamma(3/2, y) = sqrt(y) e^{-y} + sqrt(pi)/2 erfc(sqrt y)
        let y: f64 = 2.3;
        let expected = y.sqrt() * (-y).exp() + 0.5 * sqrt_pi * libm::erfc(y.sqrt());
        assert_relative_eq!(incomplete_gamma_upper_half(1, y), expected, max_relative = 1e-14);
    }
}
