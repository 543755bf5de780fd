/// Wynn's epsilon algorithm applied to a sequence of partial sums.
///
/// Returns the deepest even-column entry of the epsilon table, which is the
/// accelerated limit estimate. Exact convergence (a zero difference) returns
/// the converged value directly.
pub fn wynn_epsilon(partial: &[f64]) -> f64 {
    let n = partial.len();
    if n == 0 {
        return 0.0;
    }
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial.to_vec();
    let mut best = partial[n - 1];
    for k in 1..n {
        let m = cur.len() - 1;
        let mut next = Vec::with_capacity(m);
        for j in 0..m {
            let d = cur[j + 1] - cur[j];
            if d == 0.0 {
                return if k % 2 == 1 { cur[j + 1] } else { best };
            }
            next.push(prev[j + 1] + 1.0 / d);
        }
        if k % 2 == 0 {
            best = next[m - 1];
        }
        prev = cur;
        cur = next;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accelerates_alternating_harmonic_series() {
        let mut s = 0.0;
        let partial: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / f64::from(k);
                s
            })
            .collect();
        let est = wynn_epsilon(&partial);
        assert!((est - std::f64::consts::LN_2).abs() < 1e-10, "{est}");
        assert!((partial[19] - std::f64::consts::LN_2).abs() > 1e-2);
    }

    #[test]
    fn geometric_series_is_exact() {
        let partial: Vec<f64> = (0..6).map(|k| (0..=k).map(|j| 0.5f64.powi(j)).sum()).collect();
        assert!((wynn_epsilon(&partial) - 2.0).abs() < 1e-12);
    }
}
