use std::cell::RefCell;
use std::f64::consts::PI;

use super::{exact, remainder, rho_renormalized, series, BoundaryCondition, CasimirConfig, Method};
use crate::error::{Error, Result};
use crate::numerics::{differentiate, DiffSpec};
use crate::wavelets::WaveletFamily;

/// Force without a cutoff: `-pi^2 / 15 s^4` (periodic), `-pi^2 / 240 s^4` (Dirichlet).
pub fn continuum_force(s: f64, bc: BoundaryCondition) -> f64 {
    let d = match bc {
        BoundaryCondition::Periodic => 15.0,
        BoundaryCondition::Dirichlet => 240.0,
    };
    -PI * PI / (d * s.powi(4))
}

/// Short step sweep used for force curves; stencils stay within `s / 4`.
pub fn force_spec(s: f64) -> DiffSpec {
    DiffSpec { order: 1, base_step: 0.02, steps: 8, extra_points: 4, max_reach: Some(0.25 * s) }
}

/// `-d/ds [s rho(s; A)]` with `rho` from the configured method.
pub fn force_numeric(config: &CasimirConfig, family: &WaveletFamily, spec: &DiffSpec) -> Result<f64> {
    config.validate()?;
    let failure = RefCell::new(None);
    let energy = |s: f64| {
        if !(s > 0.0) {
            return f64::NAN;
        }
        match rho_renormalized(&config.at_separation(s), family) {
            Ok(r) => s * r.rho,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let d = differentiate(energy, config.s, spec);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(-d?.value)
}

/// One point of a force curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceSample {
    pub s: f64,
    pub force: f64,
    pub continuum: f64,
    pub correction: f64,
    pub method: Method,
    pub warnings: Vec<String>,
}

/// Force by the configured method; derivatives use [`force_spec`].
pub fn force(config: &CasimirConfig, family: &WaveletFamily) -> Result<ForceSample> {
    config.validate()?;
    let s = config.s;
    let mut warnings = Vec::new();
    let value = match config.method {
        Method::DirectSum => force_numeric(config, family, &force_spec(s))?,
        Method::EulerMaclaurinSeries => {
            let v = series::force_series(config, family)?;
            warnings.extend(v.warning);
            v.value
        }
        Method::ExactClosedForm => {
            if *family != WaveletFamily::Exponential {
                return Err(Error::UnsupportedMethod { method: "exact".into(), family: family.to_string() });
            }
            let s_eff = if config.bc == BoundaryCondition::Dirichlet { 2.0 * s } else { s };
            exact::exact_force_exponential(s_eff, config.a)?
        }
        Method::Remainder => {
            let spec = force_spec(s);
            let spec = if config.bc == BoundaryCondition::Dirichlet { spec.with_reach(0.5 * s) } else { spec };
            remainder::force_via_remainder_bc(config, family, &spec)?
        }
    };
    let continuum = continuum_force(s, config.bc);
    Ok(ForceSample { s, force: value, continuum, correction: value - continuum, method: config.method, warnings })
}

/// Force over a list of separations. Points that fail are collected with
/// their error instead of aborting the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceCurve {
    pub config: CasimirConfig,
    pub family: String,
    pub samples: Vec<ForceSample>,
    pub failures: Vec<(f64, Error)>,
}

pub fn force_curve(config: &CasimirConfig, family: &WaveletFamily, separations: &[f64]) -> ForceCurve {
    let mut curve =
        ForceCurve { config: config.clone(), family: family.to_string(), samples: Vec::new(), failures: Vec::new() };
    for &s in separations {
        match force(&config.at_separation(s), family) {
            Ok(p) if p.force.is_finite() => curve.samples.push(p),
            Ok(p) => curve.failures.push((s, Error::Convergence { estimate: p.force, error: f64::INFINITY })),
            Err(e) => curve.failures.push((s, e)),
        }
    }
    curve
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::{exact_force_exponential, exact_rho_exponential, Truncation};
    use approx::assert_relative_eq;

    #[test]
    fn numeric_force_matches_exact_exponential() {
        let f = WaveletFamily::Exponential;
        for &s in &[1.0, 2.0, 5.0] {
            let v = force_numeric(&CasimirConfig::new(s, 1.0), &f, &DiffSpec::default()).unwrap();
            assert_relative_eq!(v, exact_force_exponential(s, 1.0).unwrap(), max_relative = 1e-6);
        }
    }

    #[test]
    fn exact_force_is_derivative_of_exact_energy() {
        for &s in &[1.0, 1.7, 4.0] {
            let spec = DiffSpec::default().with_reach(0.5 * s);
            let d = differentiate(|t| t * exact_rho_exponential(t, 1.0).unwrap(), s, &spec).unwrap();
            assert_relative_eq!(-d.value, exact_force_exponential(s, 1.0).unwrap(), max_relative = 1e-9);
        }
    }

    #[test]
    fn dispatcher_methods_agree() {
        let f = WaveletFamily::Exponential;
        let base = CasimirConfig::new(2.0, 1.0);
        let exact = force(&base.clone().with_method(Method::ExactClosedForm), &f).unwrap().force;
        for m in [Method::DirectSum, Method::Remainder] {
            let v = force(&base.clone().with_method(m), &f).unwrap().force;
            assert_relative_eq!(v, exact, max_relative = 1e-6);
        }
        let err = force(&base.with_method(Method::ExactClosedForm), &WaveletFamily::Bump).unwrap_err();
        assert!(matches!(err, Error::UnsupportedMethod { .. }));
    }

    #[test]
    fn hermitian_approaches_continuum() {
        let c = CasimirConfig::new(50.0, 1.0);
        let v = force_numeric(&c, &WaveletFamily::Hermitian(3), &force_spec(50.0)).unwrap();
        assert_relative_eq!(v, continuum_force(50.0, BoundaryCondition::Periodic), max_relative = 1e-4);
    }

    #[test]
    fn dirichlet_force_is_periodic_at_double_separation() {
        let f = WaveletFamily::Hermitian(1);
        let d = force(&CasimirConfig::new(1.5, 1.0).with_bc(BoundaryCondition::Dirichlet), &f).unwrap();
        let p = force(&CasimirConfig::new(3.0, 1.0), &f).unwrap();
        assert_relative_eq!(d.force, p.force, max_relative = 1e-7);
        assert_relative_eq!(d.continuum, p.continuum, max_relative = 1e-15);
    }

    #[test]
    fn curve_keeps_order_and_records_failures() {
        let c = CasimirConfig::new(1.0, 1.0).with_truncation(Truncation::Fixed(20));
        let curve = force_curve(&c, &WaveletFamily::Exponential, &[1.0, -2.0, 3.0]);
        assert_eq!(curve.samples.iter().map(|p| p.s).collect::<Vec<_>>(), vec![1.0, 3.0]);
        assert_eq!(curve.failures.len(), 1);
    }
}
