//! Continuous wavelet transform pieces for isotropic wavelets.
//!
//! Only the modulus of the momentum-space wavelet matters for the cutoff
//! function, so profiles are radial functions `kappa -> |w~(kappa)|`.
//! Fourier convention: `w~(k) = int w(x) e^{-ikx} dx`, inverse with `(2 pi)^-d`.

mod transform;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{integrate_estimate, integrate_on, Estimate, Interval, QuadratureSpec};

pub use transform::{
    cwt_forward_1d, cwt_inverse_1d, isometry_inner_product, mexican_hat, CoefficientGrid, ScaleGrid,
    Signal1d, Wavelet1d,
};

type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Radial momentum profile `|w~(kappa)|` in dimension 1 or 3.
#[derive(Clone)]
pub struct RadialProfile {
    dimension: u32,
    eval: RadialFn,
    support: Option<(f64, f64)>,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("dimension", &self.dimension)
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

impl RadialProfile {
    pub fn new<F>(dimension: u32, eval: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        sphere_area(dimension)?;
        Ok(RadialProfile { dimension, eval: Arc::new(eval), support: None })
    }

    /// Declares that the profile vanishes outside `[lo, hi]`.
    pub fn with_support(mut self, lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= 0.0 && hi > lo) {
            return Err(Error::InvalidArgument(format!("bad support interval [{lo}, {hi}]")));
        }
        self.support = Some((lo, hi));
        Ok(self)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn support(&self) -> Option<(f64, f64)> {
        self.support
    }

    pub fn eval(&self, kappa: f64) -> f64 {
        if let Some((lo, hi)) = self.support {
            if kappa <= lo || kappa >= hi {
                return 0.0;
            }
        }
        (self.eval)(kappa).abs()
    }

    /// Same profile dilated: `kappa -> |w~(lambda kappa)|`.
    pub fn dilated(&self, lambda: f64) -> Self {
        let inner = self.eval.clone();
        RadialProfile {
            dimension: self.dimension,
            eval: Arc::new(move |k| inner(lambda * k)),
            support: self.support.map(|(lo, hi)| (lo / lambda, hi / lambda)),
        }
    }

    /// `|w~|^2 / kappa`, the admissibility density without the sphere factor.
    fn density(&self, kappa: f64) -> f64 {
        if kappa <= 0.0 {
            return 0.0;
        }
        let w = self.eval(kappa);
        w * w / kappa
    }

    /// `int_lo^inf |w~|^2 / kappa`.
    fn tail_integral(&self, lo: f64, spec: &QuadratureSpec) -> Result<Estimate> {
        let f = |k: f64| self.density(k);
        match self.support {
            Some((a, b)) => {
                let start = lo.max(a);
                if start >= b {
                    return Ok(Estimate { value: 0.0, error: 0.0 });
                }
                integrate_on(f, start, b, &[], spec)
            }
            None => {
                // a unit first panel keeps peaks near the origin resolved
                if lo < 1.0 {
                    let mut head = integrate_on(f, lo, 1.0, &[], spec)?;
                    head += integrate_estimate(f, Interval::SemiInfinite(1.0), spec)?;
                    Ok(head)
                } else {
                    integrate_estimate(f, Interval::SemiInfinite(lo), spec)
                }
            }
        }
    }
}

/// Area of the unit sphere `S^{d-1}`; `S^0 = {-1, 1}` counts 2.
pub fn sphere_area(dimension: u32) -> Result<f64> {
    match dimension {
        1 => Ok(2.0),
        3 => Ok(4.0 * PI),
        d => Err(Error::InvalidArgument(format!("dimension {d} unsupported; use 1 or 3"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityReport {
    pub c_w: f64,
    pub converged: bool,
    /// Error bound of the panel touching `kappa = 0`.
    pub lower_tail_estimate: f64,
    /// Error bound of the semi-infinite tail, including its truncation.
    pub upper_tail_estimate: f64,
}

/// Local power of `|w~|^2` near the origin, from two probes.
fn small_kappa_exponent(profile: &RadialProfile) -> Option<f64> {
    let (k1, k2) = (1e-9, 1e-7);
    let (a, b) = (profile.eval(k1), profile.eval(k2));
    if a == 0.0 {
        return None;
    }
    Some((b * b / (a * a)).ln() / (k2 / k1).ln())
}

/// `C_w = S_{d-1} int_0^inf |w~|^2 / kappa dkappa`.
pub fn admissibility_constant(profile: &RadialProfile, spec: &QuadratureSpec) -> Result<AdmissibilityReport> {
    if let Some(p) = small_kappa_exponent(profile) {
        if p < 0.05 {
            return Err(Error::Inadmissible(format!(
                "|w~|^2 behaves like kappa^{p:.3} at the origin, so int |w~|^2/kappa diverges"
            )));
        }
    }
    let s = sphere_area(profile.dimension)?;
    let f = |k: f64| profile.density(k);
    let (head, tail) = match profile.support {
        Some((a, b)) => (integrate_on(f, a, b, &[], spec)?, Estimate { value: 0.0, error: 0.0 }),
        None => (
            integrate_on(f, 0.0, 1.0, &[], spec)?,
            integrate_estimate(f, Interval::SemiInfinite(1.0), spec)?,
        ),
    };
    let c_w = s * (head.value + tail.value);
    if !(c_w > 0.0) || !c_w.is_finite() {
        return Err(Error::Inadmissible(format!("admissibility integral evaluated to {c_w}")));
    }
    let lower_tail_estimate = s * head.error;
    let upper_tail_estimate = s * tail.error;
    let budget = spec.rel_tol * c_w;
    Ok(AdmissibilityReport {
        c_w,
        converged: lower_tail_estimate <= budget && upper_tail_estimate <= budget,
        lower_tail_estimate,
        upper_tail_estimate,
    })
}

/// Cutoff function computed from its defining integral with `C_w` cached.
#[derive(Debug, Clone)]
pub struct NumericCutoff {
    profile: RadialProfile,
    spec: QuadratureSpec,
    report: AdmissibilityReport,
}

impl NumericCutoff {
    pub fn new(profile: RadialProfile, spec: QuadratureSpec) -> Result<Self> {
        let report = admissibility_constant(&profile, &spec)?;
        Ok(NumericCutoff { profile, spec, report })
    }

    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    pub fn report(&self) -> &AdmissibilityReport {
        &self.report
    }

    pub fn c_w(&self) -> f64 {
        self.report.c_w
    }

    pub fn eval(&self, k: f64) -> Result<f64> {
        if !(k >= 0.0) {
            return Err(Error::InvalidArgument(format!("cutoff argument must be >= 0, got {k}")));
        }
        if k == 0.0 {
            return Ok(1.0);
        }
        let s = sphere_area(self.profile.dimension)?;
        let tail = self.profile.tail_integral(k, &self.spec)?;
        Ok((s * tail.value / self.report.c_w).clamp(0.0, 1.0))
    }

    /// `df~/dk = -S_{d-1} |w~(k)|^2 / (C_w k)`.
    pub fn derivative(&self, k: f64) -> Result<f64> {
        let s = sphere_area(self.profile.dimension)?;
        Ok(-s * self.profile.density(k) / self.report.c_w)
    }
}

/// `f~(k) = S_{d-1} int_k^inf |w~|^2/kappa dkappa / C_w`.
pub fn cutoff_function_numeric(profile: &RadialProfile, k: f64, spec: &QuadratureSpec) -> Result<f64> {
    NumericCutoff::new(profile.clone(), *spec)?.eval(k)
}

/// `(phi, psi)_A = (2 pi)^-d S_{d-1} int kappa^{d-1} phi^ f~(A kappa) psi^ dkappa`
/// for a known cutoff function.
pub fn scale_limited_inner_product_with<P, Q, C>(
    phi_hat: P,
    psi_hat: Q,
    a: f64,
    dimension: u32,
    cutoff: C,
    spec: &QuadratureSpec,
) -> Result<f64>
where
    P: Fn(f64) -> f64,
    Q: Fn(f64) -> f64,
    C: Fn(f64) -> f64,
{
    if !(a >= 0.0) {
        return Err(Error::InvalidArgument(format!("scale cutoff must be >= 0, got {a}")));
    }
    let s = sphere_area(dimension)?;
    let d = dimension as i32;
    let integrand = |k: f64| k.powi(d - 1) * phi_hat(k) * cutoff(a * k) * psi_hat(k);
    let mut total = integrate_on(integrand, 0.0, 1.0, &[], spec)?;
    total += integrate_estimate(integrand, Interval::SemiInfinite(1.0), spec)?;
    Ok(s * total.value / (2.0 * PI).powi(d))
}

/// Scale-limited inner product with the cutoff computed from `profile`.
pub fn scale_limited_inner_product<P, Q>(
    phi_hat: P,
    psi_hat: Q,
    a: f64,
    profile: &RadialProfile,
    spec: &QuadratureSpec,
) -> Result<f64>
where
    P: Fn(f64) -> f64,
    Q: Fn(f64) -> f64,
{
    let cutoff = NumericCutoff::new(profile.clone(), *spec)?;
    let failure = std::cell::Cell::new(None);
    let f = |k: f64| {
        cutoff.eval(k).unwrap_or_else(|e| {
            failure.set(Some(e));
            f64::NAN
        })
    };
    let v = scale_limited_inner_product_with(phi_hat, psi_hat, a, profile.dimension, f, spec);
    match failure.into_inner() {
        Some(e) => Err(e),
        None => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn hermite1() -> RadialProfile {
        RadialProfile::new(3, |k: f64| k * (-k * k / 2.0).exp()).unwrap()
    }

    fn exponential() -> RadialProfile {
        RadialProfile::new(3, |k: f64| k.sqrt() * (-k / 2.0).exp()).unwrap()
    }

    #[test]
    fn admissibility_constants() {
        let spec = QuadratureSpec::default();
        let r = admissibility_constant(&exponential(), &spec).unwrap();
        assert_relative_eq!(r.c_w, 4.0 * PI, max_relative = 1e-11);
        assert!(r.converged);
        let r = admissibility_constant(&hermite1(), &spec).unwrap();
        assert_relative_eq!(r.c_w, 2.0 * PI, max_relative = 1e-11);
    }

    #[test]
    fn constant_profile_is_inadmissible() {
        let p = RadialProfile::new(3, |k: f64| (-k).exp()).unwrap();
        let r = admissibility_constant(&p, &QuadratureSpec::default());
        assert!(matches!(r, Err(Error::Inadmissible(_))));
    }

    #[test]
    fn unsupported_dimension() {
        assert!(RadialProfile::new(2, |k| k).is_err());
    }

    #[test]
    fn numeric_cutoff_values() {
        let spec = QuadratureSpec::default();
        assert_eq!(cutoff_function_numeric(&hermite1(), 0.0, &spec).unwrap(), 1.0);
        assert_relative_eq!(
            cutoff_function_numeric(&hermite1(), 1.0, &spec).unwrap(),
            (-1.0f64).exp(),
            max_relative = 1e-10
        );
        assert_relative_eq!(
            cutoff_function_numeric(&exponential(), 2.0, &spec).unwrap(),
            (-2.0f64).exp(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn cutoff_is_monotone_and_decays() {
        let c = NumericCutoff::new(hermite1(), QuadratureSpec::default()).unwrap();
        let mut prev = 1.0;
        for i in 1..=60 {
            let v = c.eval(0.1 * f64::from(i)).unwrap();
            assert!(v <= prev);
            prev = v;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn derivative_identity_against_differentiation() {
        use crate::numerics::{differentiate, DiffSpec};
        let c = NumericCutoff::new(exponential(), QuadratureSpec::with_tolerances(1e-14, 1e-13)).unwrap();
        for &k in &[0.5, 1.0, 2.0] {
            let d = differentiate(|x| c.eval(x).unwrap(), k, &DiffSpec::order(1).with_reach(0.4)).unwrap();
            let rhs = c.derivative(k).unwrap();
            assert_relative_eq!(d.value, rhs, max_relative = 1e-6);
        }
    }

    #[test]
    fn scale_covariance() {
        let spec = QuadratureSpec::default();
        let base = NumericCutoff::new(hermite1(), spec).unwrap();
        let wide = NumericCutoff::new(hermite1().dilated(2.0), spec).unwrap();
        for &k in &[0.3, 1.0, 2.5] {
            assert_relative_eq!(wide.eval(k).unwrap(), base.eval(2.0 * k).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn scale_limited_inner_products() {
        let spec = QuadratureSpec::default();
        let g = |k: f64| (-k * k / 2.0).exp();
        let plain = scale_limited_inner_product_with(g, g, 0.0, 1, |k: f64| (-k).exp(), &spec).unwrap();
        assert_relative_eq!(plain, 1.0 / (2.0 * PI.sqrt()), max_relative = 1e-12);
        let v = scale_limited_inner_product_with(g, g, 1.0, 1, |k: f64| (-k).exp(), &spec).unwrap();
        let exact = 0.25f64.exp() * libm::erfc(0.5) / (2.0 * PI.sqrt());
        assert_relative_eq!(v, exact, max_relative = 1e-11);
        let p = exponential();
        let one = scale_limited_inner_product(g, g, 1.0, &p, &spec).unwrap();
        let two = scale_limited_inner_product(g, g, 2.0, &p, &spec).unwrap();
        assert!(two <= one);
    }
}
