use std::f64::consts::PI;

use proptest::prelude::*;
use scalecut::cwt::NumericCutoff;
use scalecut::numerics::{integrate, Interval, QuadratureSpec};
use scalecut::wavelets::{
    cutoff, cutoff_derivative, derivatives_at_zero, dyadic_orthonormality, momentum_profile, position_profile,
    radial_profile, WaveletFamily,
};

fn family(idx: usize) -> WaveletFamily {
    [
        WaveletFamily::Hermitian(1),
        WaveletFamily::Hermitian(2),
        WaveletFamily::Hermitian(4),
        WaveletFamily::Exponential,
        WaveletFamily::Bump,
        WaveletFamily::NonAnalytic,
    ][idx]
    .clone()
}

/// `(1 / 2 pi^2 r) int k sin(k r) w~(k) dk` by plain quadrature, for profiles
/// that decay fast enough.
fn inverse_transform(f: &WaveletFamily, r: f64) -> f64 {
    let spec = QuadratureSpec::with_tolerances(1e-13, 1e-12);
    let g = |k: f64| k * (k * r).sin() * momentum_profile(f, k);
    integrate(g, Interval::SemiInfinite(0.0), &spec).unwrap() / (2.0 * PI * PI * r)
}

#[test]
fn hermitian_position_profiles_match_momentum_profiles() {
    // the printed position normalisation differs from the momentum one by 2/sqrt(pi)
    let spec = QuadratureSpec::default();
    for n in 1..=3 {
        let f = WaveletFamily::Hermitian(n);
        let ratios: Vec<f64> = [0.2, 0.9, 1.7, 3.0]
            .iter()
            .map(|&r| inverse_transform(&f, r) / position_profile(&f, r, &spec).unwrap())
            .collect();
        for q in &ratios {
            assert!((q / ratios[0] - 1.0).abs() < 1e-5, "n={n}: {ratios:?}");
        }
        assert!((ratios[0] - 2.0 / PI.sqrt()).abs() < 1e-9, "n={n}: {}", ratios[0]);
    }
}

#[test]
fn exponential_position_profile_matches_momentum_profile() {
    let spec = QuadratureSpec::default();
    let f = WaveletFamily::Exponential;
    for &r in &[0.3, 1.0, 2.5] {
        let closed = position_profile(&f, r, &spec).unwrap();
        let g = |k: f64| k * momentum_profile(&f, k);
        let numeric =
            scalecut::numerics::integrate_sine_transform(g, r, 0.0, &spec).unwrap() / (2.0 * PI * PI * r);
        assert!((closed - numeric).abs() < 1e-5, "r={r}: {closed} vs {numeric}");
    }
}

#[test]
fn closed_cutoffs_equal_defining_integral() {
    let spec = QuadratureSpec::default();
    for f in [WaveletFamily::Hermitian(1), WaveletFamily::Hermitian(2), WaveletFamily::Hermitian(3), WaveletFamily::Exponential] {
        let nc = NumericCutoff::new(radial_profile(&f), spec).unwrap();
        for i in 0..=50 {
            let k = 0.1 * f64::from(i);
            assert!((nc.eval(k).unwrap() - cutoff(&f, k)).abs() < 1e-8, "{f} k={k}");
        }
    }
}

#[test]
fn bump_cross_octave_overlaps_vanish() {
    let spec = QuadratureSpec::default();
    for j in -3..=3 {
        for l in -3..=3 {
            if j == l {
                continue;
            }
            for &shift in &[0.0, 1.3, 3.7] {
                assert_eq!(dyadic_orthonormality(&WaveletFamily::Bump, j, l, shift, &spec).unwrap(), 0.0);
            }
        }
    }
}

proptest! {
    #[test]
    fn cutoff_is_a_decreasing_fraction(idx in 0usize..6, k in 0.0f64..12.0, dk in 1e-3f64..1.0) {
        let f = family(idx);
        let (a, b) = (cutoff(&f, k), cutoff(&f, k + dk));
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b <= a);
    }

    #[test]
    fn cutoff_slope_is_non_positive(idx in 0usize..6, k in 0.0f64..8.0) {
        let d = cutoff_derivative(&family(idx), k, 1).unwrap();
        prop_assert!(d.value <= 0.0);
    }

    #[test]
    fn parse_round_trip(idx in 0usize..6) {
        let f = family(idx);
        let back: WaveletFamily = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn odd_taylor_data_vanishes_for_even_cutoffs(n in 1u32..8) {
        let d = derivatives_at_zero(&WaveletFamily::Hermitian(n), 12).unwrap();
        prop_assert_eq!(d[0], 1.0);
        prop_assert!(d.iter().skip(1).step_by(2).all(|v| *v == 0.0));
    }
}
