use std::f64::consts::PI;

use super::{exact, remainder, series, Accumulator, BoundaryCondition, CasimirConfig, EnergyResult, Method, Truncation};
use crate::error::{Error, Result};
use crate::numerics::{factorial, incomplete_gamma_upper_half, integrate, integrate_on, Interval, QuadratureSpec};
use crate::wavelets::{cutoff, WaveletFamily};

/// `int_lo^hi g` where `hi = None` means infinity; panels break at `seams`.
fn integrate_from<G: Fn(f64) -> f64>(
    g: G,
    lo: f64,
    hi: Option<f64>,
    seams: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    match hi {
        Some(h) if lo >= h => Ok(0.0),
        Some(h) => Ok(integrate_on(g, lo, h, seams, spec)?.value),
        None => {
            let mid = lo.max(2.0);
            let head = if mid > lo { integrate_on(&g, lo, mid, seams, spec)?.value } else { 0.0 };
            Ok(head + integrate(&g, Interval::SemiInfinite(mid), spec)?)
        }
    }
}

/// `M(x) = int_x^inf u^2 f~(u) du`.
pub fn moment_integral(family: &WaveletFamily, x: f64) -> Result<f64> {
    moment_integral_with(family, x, &QuadratureSpec::default())
}

pub(crate) fn moment_integral_with(family: &WaveletFamily, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!("moment integral needs x >= 0, got {x}")));
    }
    match family {
        WaveletFamily::Exponential => Ok((x * x + 2.0 * x + 2.0) * (-x).exp()),
        WaveletFamily::Hermitian(n) => {
            // int_x^inf u^{2l+2} e^{-u^2} du = Gamma(l + 3/2, x^2) / 2
            let y = x * x;
            let mut acc = Accumulator::default();
            for l in 0..*n {
                acc.add(incomplete_gamma_upper_half(l + 1, y) / (2.0 * factorial(l)));
            }
            Ok(acc.value())
        }
        WaveletFamily::Bump => {
            if x >= 2.0 {
                return Ok(0.0);
            }
            let g = |u: f64| u * u * cutoff(family, u);
            if x >= 1.0 {
                return integrate_from(g, x, Some(2.0), &[1.5], spec);
            }
            let band = integrate_from(g, 1.0, Some(2.0), &[1.5], spec)?;
            Ok((1.0 - x * x * x) / 3.0 + band)
        }
        _ => {
            let g = |u: f64| u * u * cutoff(family, u);
            let v = integrate_from(g, x, family.cutoff_support(), family.seams(), spec)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Convergence { estimate: v, error: f64::INFINITY })
            }
        }
    }
}

/// `F(n; A) = M(2 pi n A / s) / (2 pi A^3)`; `n` may be fractional.
pub fn aux_f(family: &WaveletFamily, n: f64, s: f64, a: f64) -> Result<f64> {
    aux_f_with(family, n, s, a, &QuadratureSpec::default())
}

pub(crate) fn aux_f_with(family: &WaveletFamily, n: f64, s: f64, a: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument("F(n;A) diverges at A = 0; use the series method".into()));
    }
    if !(s > 0.0 && n >= 0.0) {
        return Err(Error::InvalidArgument(format!("need s > 0 and n >= 0, got s={s}, n={n}")));
    }
    Ok(moment_integral_with(family, 2.0 * PI * n * a / s, spec)? / (2.0 * PI * a.powi(3)))
}

const ADAPTIVE_START: u64 = 16;
const ADAPTIVE_LIMIT: u64 = 1 << 24;
const ADAPTIVE_REL: f64 = 1e-12;

/// `sum_{n >= 1} F(n * step)` under the configured truncation.
fn mode_sum(family: &WaveletFamily, config: &CasimirConfig, step: f64) -> Result<(f64, f64, u64, Option<String>)> {
    let term = |n: u64| aux_f_with(family, step * n as f64, config.s, config.a, &config.quadrature);
    let mut acc = Accumulator::default();
    let mut last = 0.0;
    match config.truncation {
        Truncation::Fixed(n_max) => {
            for n in 1..=n_max {
                last = term(n)?;
                acc.add(last);
            }
            Ok((acc.value(), last.abs(), n_max, None))
        }
        Truncation::Adaptive => {
            let mut n = 0;
            let mut limit = ADAPTIVE_START;
            loop {
                while n < limit {
                    n += 1;
                    last = term(n)?;
                    acc.add(last);
                }
                if last.abs() <= ADAPTIVE_REL * acc.value().abs() || last == 0.0 {
                    return Ok((acc.value(), last.abs(), n, None));
                }
                if limit >= ADAPTIVE_LIMIT {
                    let msg = format!("mode sum not converged after {n} modes; last mode {last:e}");
                    return Ok((acc.value(), last.abs(), n, Some(msg)));
                }
                limit *= 2;
            }
        }
    }
}

/// Mode-sum energy `rho0` (no bulk subtraction; `rho` left at `rho0 - bulk`
/// with `bulk = 0` until [`rho_renormalized`] fills it in).
pub fn rho0_direct(config: &CasimirConfig, family: &WaveletFamily) -> Result<EnergyResult> {
    config.validate()?;
    if config.a == 0.0 {
        return Err(Error::InvalidArgument("direct mode sums need A > 0".into()));
    }
    let s = config.s;
    let f0 = aux_f_with(family, 0.0, s, config.a, &config.quadrature)?;
    let (rho0, last, modes, warning, shift) = match config.bc {
        BoundaryCondition::Periodic => {
            let (sum, last, modes, w) = mode_sum(family, config, 1.0)?;
            ((f0 + 2.0 * sum) / s, 2.0 * last / s, modes, w, 0.0)
        }
        BoundaryCondition::Dirichlet => {
            let (sum, last, modes, w) = mode_sum(family, config, 0.5)?;
            let shift = -f0 / (2.0 * s);
            (sum / s - shift, last / s, modes, w, shift)
        }
    };
    let mut r = EnergyResult::from_parts(rho0, 0.0, Method::DirectSum);
    r.truncation_diagnostic = last;
    r.modes = modes;
    r.boundary_shift = shift;
    r.warnings.extend(warning);
    if last > 1e-6 * rho0.abs() {
        r.warnings.push(format!("last included mode contributes {last:e} (relative {:.1e})", last / rho0.abs()));
    }
    Ok(r)
}

/// `(1 / 2 pi^2) int_0^inf k^3 f~(A k) dk`, always by quadrature.
pub fn bulk_energy(family: &WaveletFamily, a: f64) -> Result<f64> {
    bulk_energy_with(family, a, &QuadratureSpec::default())
}

pub(crate) fn bulk_energy_with(family: &WaveletFamily, a: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument("bulk energy diverges at A = 0".into()));
    }
    let g = |u: f64| u.powi(3) * cutoff(family, u);
    let v = integrate_from(g, 0.0, family.cutoff_support(), family.seams(), spec)?;
    Ok(v / (2.0 * PI * PI * a.powi(4)))
}

/// Renormalized energy `rho = rho0 - bulk` by the configured method.
pub fn rho_renormalized(config: &CasimirConfig, family: &WaveletFamily) -> Result<EnergyResult> {
    config.validate()?;
    match config.method {
        Method::DirectSum => {
            let mut r = rho0_direct(config, family)?;
            r.bulk = bulk_energy_with(family, config.a, &config.quadrature)?;
            r.rho = r.rho0 - r.bulk;
            Ok(r)
        }
        Method::ExactClosedForm => {
            if *family != WaveletFamily::Exponential {
                return Err(Error::UnsupportedMethod { method: "exact".into(), family: family.to_string() });
            }
            let s_eff = match config.bc {
                BoundaryCondition::Periodic => config.s,
                BoundaryCondition::Dirichlet => 2.0 * config.s,
            };
            let rho0 = exact::exact_rho0_exponential(s_eff, config.a)?;
            let bulk = 3.0 / (PI * PI * config.a.powi(4));
            let mut r = EnergyResult::from_parts(rho0, bulk, Method::ExactClosedForm);
            r.rho = exact::exact_rho_exponential(s_eff, config.a)?;
            if config.bc == BoundaryCondition::Dirichlet {
                r.boundary_shift = -(1.0 / (PI * config.a.powi(3))) / (2.0 * config.s);
            }
            // rho is taken from the cancellation-free form; keep the identity exact
            r.rho0 = r.rho + r.bulk;
            Ok(r)
        }
        Method::EulerMaclaurinSeries => {
            let v = series::energy_series(config, family)?;
            finish_without_sum(config, family, v.value, Method::EulerMaclaurinSeries, v.warning)
        }
        Method::Remainder => {
            let rho = remainder::rho_via_remainder(config, family)?;
            finish_without_sum(config, family, rho.value, Method::Remainder, rho.warning)
        }
    }
}

fn finish_without_sum(
    config: &CasimirConfig,
    family: &WaveletFamily,
    rho: f64,
    method: Method,
    warning: Option<String>,
) -> Result<EnergyResult> {
    let (bulk, extra) = if config.a > 0.0 {
        (bulk_energy_with(family, config.a, &config.quadrature)?, None)
    } else {
        (0.0, Some("A = 0: rho0 and bulk diverge separately; only rho is meaningful".to_string()))
    };
    let mut r = EnergyResult::from_parts(rho + bulk, bulk, method);
    r.rho = rho;
    r.rho0 = rho + bulk;
    r.warnings.extend(warning);
    r.warnings.extend(extra);
    if config.bc == BoundaryCondition::Dirichlet && config.a > 0.0 {
        r.boundary_shift = -aux_f_with(family, 0.0, config.s, config.a, &config.quadrature)? / (2.0 * config.s);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn moment_examples() {
        assert_eq!(moment_integral(&WaveletFamily::Exponential, 0.0).unwrap(), 2.0);
        assert_relative_eq!(moment_integral(&WaveletFamily::Exponential, 1.0).unwrap(), 5.0 * (-1.0f64).exp());
        assert_eq!(moment_integral(&WaveletFamily::Bump, 2.0).unwrap(), 0.0);
        assert!(moment_integral(&WaveletFamily::Exponential, -1.0).is_err());
    }

    #[test]
    fn closed_moments_match_quadrature() {
        let spec = QuadratureSpec::default();
        for f in [WaveletFamily::Hermitian(1), WaveletFamily::Hermitian(3), WaveletFamily::Exponential] {
            for &x in &[0.0, 0.4, 1.7, 3.0] {
                let g = |u: f64| u * u * cutoff(&f, u);
                let q = integrate_from(g, x, None, &[], &spec).unwrap();
                assert_relative_eq!(moment_integral(&f, x).unwrap(), q, max_relative = 1e-11);
            }
        }
        // bump below 1 splits into the flat part and the band
        let g = |u: f64| u * u * cutoff(&WaveletFamily::Bump, u);
        let q = integrate_from(g, 0.3, Some(2.0), &[1.0, 1.5], &spec).unwrap();
        assert_relative_eq!(moment_integral(&WaveletFamily::Bump, 0.3).unwrap(), q, max_relative = 1e-12);
    }

    #[test]
    fn aux_examples() {
        assert_relative_eq!(aux_f(&WaveletFamily::Exponential, 0.0, 3.0, 1.0).unwrap(), 1.0 / PI, max_relative = 1e-15);
        assert_relative_eq!(
            aux_f(&WaveletFamily::Hermitian(1), 0.0, 3.0, 1.0).unwrap(),
            PI.sqrt() / (8.0 * PI),
            max_relative = 1e-14
        );
        assert!(aux_f(&WaveletFamily::Exponential, 200.0, 1.0, 1.0).unwrap() < 1e-300);
        assert!(aux_f(&WaveletFamily::Exponential, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn bulk_examples() {
        assert_relative_eq!(bulk_energy(&WaveletFamily::Exponential, 1.0).unwrap(), 3.0 / (PI * PI), max_relative = 1e-12);
        assert_relative_eq!(
            bulk_energy(&WaveletFamily::Exponential, 2.0).unwrap(),
            3.0 / (16.0 * PI * PI),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            bulk_energy(&WaveletFamily::Hermitian(1), 1.0).unwrap(),
            1.0 / (4.0 * PI * PI),
            max_relative = 1e-12
        );
    }

    #[test]
    fn direct_sum_matches_exponential_closed_form() {
        let c = CasimirConfig::new(1.0, 1.0).with_truncation(Truncation::Fixed(50));
        let r = rho0_direct(&c, &WaveletFamily::Exponential).unwrap();
        assert_relative_eq!(r.rho0, exact::exact_rho0_exponential(1.0, 1.0).unwrap(), max_relative = 1e-10);
    }

    #[test]
    fn direct_sum_matches_closed_form_away_from_unit_separation() {
        for &s in &[0.7, 2.5, 6.0] {
            let r = rho_renormalized(&CasimirConfig::new(s, 1.0), &WaveletFamily::Exponential).unwrap();
            assert_relative_eq!(r.rho0, exact::exact_rho0_exponential(s, 1.0).unwrap(), max_relative = 1e-10);
            assert_relative_eq!(r.rho, exact::exact_rho_exponential(s, 1.0).unwrap(), max_relative = 1e-8);
        }
    }

    #[test]
    fn radial_reduction_matches_plane_quadrature() {
        // F(n; A) as the integral over the plate-parallel momentum plane
        let (s, a, n) = (2.0, 1.0, 1.0);
        let kz = 2.0 * PI * n / s;
        let spec = QuadratureSpec::with_tolerances(1e-13, 1e-11);
        let l = 45.0;
        let row = |kx: f64| {
            let g = |ky: f64| {
                let w = (kx * kx + ky * ky + kz * kz).sqrt();
                w * cutoff(&WaveletFamily::Exponential, a * w)
            };
            integrate_on(g, -l, l, &[0.0], &spec).unwrap().value
        };
        let plane = integrate_on(row, -l, l, &[0.0], &spec).unwrap().value / (4.0 * PI * PI);
        assert_relative_eq!(aux_f(&WaveletFamily::Exponential, n, s, a).unwrap(), plane, max_relative = 1e-9);
    }

    #[test]
    fn fixed_truncation_regimes() {
        let f = WaveletFamily::Exponential;
        let few = CasimirConfig::new(10.0, 1.0).with_truncation(Truncation::Fixed(3));
        let many = CasimirConfig::new(10.0, 1.0).with_truncation(Truncation::Fixed(50));
        let (a, b) = (rho0_direct(&few, &f).unwrap(), rho0_direct(&many, &f).unwrap());
        assert!((a.rho0 - b.rho0).abs() / b.rho0.abs() > 1e-3);
        assert!(!a.warnings.is_empty());
        let few = CasimirConfig::new(1.0, 1.0).with_truncation(Truncation::Fixed(3));
        let many = CasimirConfig::new(1.0, 1.0).with_truncation(Truncation::Fixed(50));
        let (a, b) = (rho0_direct(&few, &f).unwrap(), rho0_direct(&many, &f).unwrap());
        assert!((a.rho0 - b.rho0).abs() / b.rho0.abs() < 1e-6);
    }

    #[test]
    fn identity_rho_equals_rho0_minus_bulk() {
        let c = CasimirConfig::new(2.0, 1.0);
        for f in [WaveletFamily::Hermitian(2), WaveletFamily::Bump, WaveletFamily::NonAnalytic] {
            let r = rho_renormalized(&c, &f).unwrap();
            assert_eq!(r.rho, r.rho0 - r.bulk);
        }
    }

    #[test]
    fn dirichlet_sum_is_periodic_at_double_separation() {
        let f = WaveletFamily::Hermitian(1);
        let d = rho_renormalized(&CasimirConfig::new(1.5, 1.0).with_bc(BoundaryCondition::Dirichlet), &f).unwrap();
        let p = rho_renormalized(&CasimirConfig::new(3.0, 1.0), &f).unwrap();
        assert_relative_eq!(d.rho, p.rho, max_relative = 1e-10);
        let f0 = aux_f(&f, 0.0, 1.5, 1.0).unwrap();
        assert_relative_eq!(d.boundary_shift, -f0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn exact_method_only_for_exponential() {
        let c = CasimirConfig::new(2.0, 1.0).with_method(Method::ExactClosedForm);
        assert!(matches!(rho_renormalized(&c, &WaveletFamily::Bump), Err(Error::UnsupportedMethod { .. })));
        let r = rho_renormalized(&c, &WaveletFamily::Exponential).unwrap();
        assert_eq!(r.rho, r.rho0 - r.bulk);
    }
}
