//! Hand-derived derivatives of the closed-form cutoff functions.

use crate::numerics::factorial;

/// Polynomial `q` with `d^m f/dk^m = q(k) e^{-k^2}` for the Hermitian cutoff,
/// `m >= 1`. Coefficients in ascending powers.
pub(crate) fn hermitian_derivative_poly(n: u32, m: u32) -> Vec<f64> {
    debug_assert!(m >= 1);
    // f' = -2 k^{2n-1} e^{-k^2} / (n-1)!  (the finite sum telescopes)
    let top = 2 * n as usize - 1;
    let mut q = vec![0.0; top + 1];
    q[top] = -2.0 / factorial(n - 1);
    for _ in 1..m {
        // (q e^{-k^2})' = (q' - 2k q) e^{-k^2}
        let mut next = vec![0.0; q.len() + 1];
        for (p, c) in q.iter().enumerate() {
            if p > 0 {
                next[p - 1] += p as f64 * c;
            }
            next[p + 1] -= 2.0 * c;
        }
        q = next;
    }
    q
}

pub(crate) fn hermitian_derivative(n: u32, m: u32, k: f64) -> f64 {
    let q = hermitian_derivative_poly(n, m);
    let poly = q.iter().rev().fold(0.0, |acc, c| acc * k + c);
    poly * (-k * k).exp()
}

/// Terms `(c, p)` with `d^m/dk^m e^{-k^-10} = sum c k^p e^{-k^-10}`.
fn flat_exponential_terms(m: u32) -> Vec<(f64, i32)> {
    let mut terms = vec![(1.0, 0)];
    for _ in 0..m {
        let mut next: Vec<(f64, i32)> = Vec::new();
        let mut push = |c: f64, p: i32| match next.iter_mut().find(|t| t.1 == p) {
            Some(t) => t.0 += c,
            None => next.push((c, p)),
        };
        for &(c, p) in &terms {
            if p != 0 {
                push(c * f64::from(p), p - 1);
            }
            push(10.0 * c, p - 11);
        }
        terms = next;
    }
    terms
}

/// Derivative of `1 - e^{-k^-10}`; every order vanishes at `k = 0`.
pub(crate) fn nonanalytic_derivative(m: u32, k: f64) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    let base = -k.powi(-10);
    let lk = k.ln();
    -flat_exponential_terms(m)
        .iter()
        .map(|&(c, p)| c * (base + f64::from(p) * lk).exp())
        .sum::<f64>()
}

/// Logistic `1 / (1 + e^{-h})` without overflow.
pub(crate) fn logistic(h: f64) -> f64 {
    if h >= 0.0 {
        1.0 / (1.0 + (-h).exp())
    } else {
        let e = h.exp();
        e / (1.0 + e)
    }
}

/// Exponent of the smoothed step on `(1, 2)`.
pub(crate) fn bump_exponent(k: f64) -> f64 {
    1.0 / (k - 1.0) - 1.0 / (2.0 - k)
}

pub(crate) fn bump_cutoff(k: f64) -> f64 {
    if k <= 1.0 {
        1.0
    } else if k >= 2.0 {
        0.0
    } else {
        logistic(bump_exponent(k))
    }
}

/// Derivative of the smoothed step of order 1..=3. Outside `(1, 2)` every
/// derivative is zero, including at the seams by flatness.
pub(crate) fn bump_derivative(m: u32, k: f64) -> f64 {
    if k <= 1.0 || k >= 2.0 {
        return 0.0;
    }
    let h = bump_exponent(k);
    let s = logistic(h);
    // s(1-s) from |h| directly keeps precision in the flat tails
    let e = (-h.abs()).exp();
    let s1 = e / ((1.0 + e) * (1.0 + e));
    if s1 == 0.0 {
        return 0.0;
    }
    let (u, v) = (k - 1.0, 2.0 - k);
    let h1 = -1.0 / (u * u) - 1.0 / (v * v);
    let h2 = 2.0 / (u * u * u) - 2.0 / (v * v * v);
    let h3 = -6.0 / u.powi(4) - 6.0 / v.powi(4);
    let s2 = s1 * (1.0 - 2.0 * s);
    let s3 = s1 * (1.0 - 6.0 * s + 6.0 * s * s);
    let value = match m {
        1 => s1 * h1,
        2 => s2 * h1 * h1 + s1 * h2,
        3 => s3 * h1 * h1 * h1 + 3.0 * s2 * h1 * h2 + s1 * h3,
        _ => unreachable!("bump derivatives are implemented up to order 3"),
    };
    if value.is_finite() {
        value
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{differentiate, regularized_gamma_upper, DiffSpec};
    use approx::assert_relative_eq;

    #[test]
    fn hermitian_first_derivative_closed_form() {
        // n = 2: f = e^{-k^2}(1 + k^2), f' = -2 k^3 e^{-k^2}
        let k: f64 = 1.3;
        assert_relative_eq!(hermitian_derivative(2, 1, k), -2.0 * k.powi(3) * (-k * k).exp(), max_relative = 1e-14);
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        for n in 1..=3u32 {
            for m in 1..=3u32 {
                for &k in &[0.4, 1.1, 2.3] {
                    let d = differentiate(|x| regularized_gamma_upper(n, x * x), k, &DiffSpec::order(m).with_reach(0.3))
                        .unwrap();
                    let exact = hermitian_derivative(n, m, k);
                    assert!((d.value - exact).abs() < 1e-7 * exact.abs().max(1e-3), "n{n} m{m} k{k}");
                }
            }
        }
        for m in 1..=3u32 {
            for &k in &[0.9, 1.2, 2.0] {
                let d = differentiate(|x: f64| 1.0 - (-x.powi(-10)).exp(), k, &DiffSpec::order(m).with_reach(0.2))
                    .unwrap();
                let exact = nonanalytic_derivative(m, k);
                assert!((d.value - exact).abs() < 1e-6 * exact.abs().max(1e-3), "m{m} k{k}: {} {exact}", d.value);
            }
            for &k in &[1.3, 1.5, 1.8] {
                let d = differentiate(bump_cutoff, k, &DiffSpec::order(m).with_reach(0.1)).unwrap();
                let exact = bump_derivative(m, k);
                assert!((d.value - exact).abs() < 1e-6 * exact.abs().max(1e-2), "m{m} k{k}: {} {exact}", d.value);
            }
        }
    }

    #[test]
    fn flat_tails() {
        assert_eq!(nonanalytic_derivative(1, 0.5), -10.0 * 2f64.powi(11) * (-1024.0f64).exp());
        assert_eq!(bump_derivative(2, 1.0), 0.0);
        assert_eq!(bump_derivative(3, 2.0), 0.0);
        assert!(bump_derivative(3, 1.0 + 1e-300).is_finite());
        assert_eq!(bump_cutoff(1.5), 0.5);
    }
}
