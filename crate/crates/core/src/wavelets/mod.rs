//! The wavelet catalogue: Hermitian, exponential, bump and non-analytic
//! families plus user-tabulated radial profiles.
//!
//! Every family is described by its cutoff function `f~`. Momentum profiles
//! follow from `|w~(kappa)|^2 = -C_w kappa f~'(kappa) / (4 pi)`, so the
//! printed exponential and non-analytic profiles have their exponents halved.

mod analytic;
mod bump;
mod custom;
mod position;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cwt::RadialProfile;
use crate::error::{Error, Result};
use crate::numerics::{differentiate, factorial, gamma, integrate_on, regularized_gamma_upper, DiffSpec, QuadratureSpec};

pub use bump::{derivative_kernel_decay, dyadic_orthonormality, KernelPoint};
pub use custom::CustomWavelet;
pub use position::position_profile;

/// One of the catalogued wavelet families.
#[derive(Debug, Clone)]
pub enum WaveletFamily {
    Hermitian(u32),
    Exponential,
    Bump,
    NonAnalytic,
    Custom(Arc<CustomWavelet>),
}

impl PartialEq for WaveletFamily {
    fn eq(&self, other: &Self) -> bool {
        use WaveletFamily::*;
        match (self, other) {
            (Hermitian(a), Hermitian(b)) => a == b,
            (Exponential, Exponential) | (Bump, Bump) | (NonAnalytic, NonAnalytic) => true,
            (Custom(a), Custom(b)) => Arc::ptr_eq(a, b) || a.source() == b.source(),
            _ => false,
        }
    }
}

impl fmt::Display for WaveletFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WaveletFamily::Hermitian(n) => write!(f, "hermitian:n={n}"),
            WaveletFamily::Exponential => f.write_str("exponential"),
            WaveletFamily::Bump => f.write_str("bump"),
            WaveletFamily::NonAnalytic => f.write_str("nonanalytic"),
            WaveletFamily::Custom(c) => write!(f, "custom:{}", c.source()),
        }
    }
}

impl FromStr for WaveletFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("unknown wavelet `{s}`; expected hermitian:n=<int>, exponential, bump, nonanalytic or custom:<path>"));
        if let Some(rest) = s.strip_prefix("hermitian:") {
            let n = rest.strip_prefix("n=").ok_or_else(bad)?;
            let n: u32 = n.parse().map_err(|_| bad())?;
            return WaveletFamily::hermitian(n);
        }
        if let Some(path) = s.strip_prefix("custom:") {
            return CustomWavelet::from_path(path).map(|c| WaveletFamily::Custom(Arc::new(c)));
        }
        match s {
            "exponential" => Ok(WaveletFamily::Exponential),
            "bump" => Ok(WaveletFamily::Bump),
            "nonanalytic" => Ok(WaveletFamily::NonAnalytic),
            _ => Err(bad()),
        }
    }
}

/// How smooth the cutoff is at `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analyticity {
    /// Taylor series converges to the cutoff.
    Analytic,
    /// Every derivative of positive order vanishes at the origin.
    Flat,
    /// Tabulated profile; derivatives are finite-difference estimates.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    ClosedForm,
    Numeric,
}

/// Cutoff value at one momentum plus its Taylor data at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffEvaluation {
    pub value: f64,
    pub derivatives_at_zero: Vec<f64>,
    pub source: Source,
    pub analyticity: Analyticity,
}

/// Derivative value; `seam` marks the bump's matching points `k = 1, 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffDerivative {
    pub value: f64,
    pub seam: bool,
}

const MAX_TAYLOR_ORDER: usize = 20;

impl WaveletFamily {
    pub fn hermitian(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Hermitian order must be at least 1".into()));
        }
        // n beyond this overflows the factorials in the coefficients
        if n > 80 {
            return Err(Error::InvalidArgument(format!("Hermitian order {n} too large (max 80)")));
        }
        Ok(WaveletFamily::Hermitian(n))
    }

    pub fn name(&self) -> &'static str {
        match self {
            WaveletFamily::Hermitian(_) => "hermitian",
            WaveletFamily::Exponential => "exponential",
            WaveletFamily::Bump => "bump",
            WaveletFamily::NonAnalytic => "nonanalytic",
            WaveletFamily::Custom(_) => "custom",
        }
    }

    pub fn analyticity(&self) -> Analyticity {
        match self {
            WaveletFamily::Hermitian(_) | WaveletFamily::Exponential => Analyticity::Analytic,
            WaveletFamily::Bump | WaveletFamily::NonAnalytic => Analyticity::Flat,
            WaveletFamily::Custom(_) => Analyticity::Unknown,
        }
    }

    /// Momentum above which the cutoff is identically zero.
    pub fn cutoff_support(&self) -> Option<f64> {
        match self {
            WaveletFamily::Bump => Some(2.0),
            _ => None,
        }
    }

    /// Points where the cutoff is only piecewise defined.
    pub fn seams(&self) -> &'static [f64] {
        match self {
            WaveletFamily::Bump => &[1.0, 2.0],
            _ => &[],
        }
    }

    /// Argument below which all derivatives of the cutoff are negligible.
    pub fn flat_until(&self) -> f64 {
        match self {
            WaveletFamily::Bump => 1.0,
            // e^{-k^-10} < 1e-300 for k < 0.5
            WaveletFamily::NonAnalytic => 0.5,
            _ => 0.0,
        }
    }
}

/// Closed-form `f~(k)`; numeric for custom profiles.
pub fn cutoff(family: &WaveletFamily, k: f64) -> f64 {
    let k = k.max(0.0);
    match family {
        WaveletFamily::Hermitian(n) => regularized_gamma_upper(*n, k * k),
        WaveletFamily::Exponential => (-k).exp(),
        WaveletFamily::Bump => analytic::bump_cutoff(k),
        WaveletFamily::NonAnalytic => {
            if k == 0.0 {
                1.0
            } else {
                -(-k.powi(-10)).exp_m1()
            }
        }
        WaveletFamily::Custom(c) => c.cutoff(k),
    }
}

/// `d^order f~ / dk^order` for `order` in `1..=3`.
pub fn cutoff_derivative(family: &WaveletFamily, k: f64, order: u32) -> Result<CutoffDerivative> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidArgument(format!("cutoff derivative order must be 1..=3, got {order}")));
    }
    if !(k >= 0.0) {
        return Err(Error::InvalidArgument(format!("momentum must be >= 0, got {k}")));
    }
    let plain = |value| Ok(CutoffDerivative { value, seam: false });
    match family {
        WaveletFamily::Hermitian(n) => plain(analytic::hermitian_derivative(*n, order, k)),
        WaveletFamily::Exponential => {
            plain(if order % 2 == 1 { -(-k).exp() } else { (-k).exp() })
        }
        WaveletFamily::Bump => Ok(CutoffDerivative {
            value: analytic::bump_derivative(order, k),
            seam: k == 1.0 || k == 2.0,
        }),
        WaveletFamily::NonAnalytic => plain(analytic::nonanalytic_derivative(order, k)),
        WaveletFamily::Custom(c) => plain(c.cutoff_derivative(k, order)?),
    }
}

/// Taylor coefficient `c_j` of `e^{-x} sum_{l<n} x^l / l!` in `x = k^2`.
fn hermitian_taylor(n: u32, j: u32) -> BigRational {
    let mut c = BigRational::zero();
    for l in 0..=j.min(n - 1) {
        let den = big_factorial(j - l) * big_factorial(l);
        let term = BigRational::new(BigInt::one(), den);
        if (j - l) % 2 == 0 {
            c += term;
        } else {
            c -= term;
        }
    }
    c
}

fn big_factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exact `f~^{(m)}(0)`, `m = 0..=max_m`, for the closed-form families.
pub fn derivatives_at_zero_exact(family: &WaveletFamily, max_m: usize) -> Result<Vec<BigRational>> {
    if max_m > MAX_TAYLOR_ORDER {
        return Err(Error::InvalidArgument(format!("max_m must be <= {MAX_TAYLOR_ORDER}")));
    }
    let one = BigRational::one();
    match family {
        WaveletFamily::Hermitian(n) => Ok((0..=max_m)
            .map(|m| {
                if m % 2 == 1 {
                    BigRational::zero()
                } else {
                    let j = (m / 2) as u32;
                    hermitian_taylor(*n, j) * BigRational::from_integer(big_factorial(m as u32))
                }
            })
            .collect()),
        WaveletFamily::Exponential => {
            Ok((0..=max_m).map(|m| if m % 2 == 0 { one.clone() } else { -one.clone() }).collect())
        }
        WaveletFamily::Bump | WaveletFamily::NonAnalytic => {
            Ok((0..=max_m).map(|m| if m == 0 { one.clone() } else { BigRational::zero() }).collect())
        }
        WaveletFamily::Custom(_) => Err(Error::UnsupportedMethod {
            method: "exact Taylor coefficients".into(),
            family: family.to_string(),
        }),
    }
}

/// `f~^{(m)}(0)` for `m = 0..=max_m`. Custom profiles use finite differences
/// on the even extension `f~(|k|)` and are limited to order 10.
pub fn derivatives_at_zero(family: &WaveletFamily, max_m: usize) -> Result<Vec<f64>> {
    use num_traits::ToPrimitive;
    match family {
        WaveletFamily::Custom(c) => {
            if max_m > 10 {
                return Err(Error::InvalidArgument("custom profiles support derivatives up to order 10".into()));
            }
            let mut out = vec![1.0];
            for m in 1..=max_m as u32 {
                if m % 2 == 1 {
                    out.push(0.0);
                    continue;
                }
                let d = differentiate(|k: f64| c.cutoff(k.abs()), 0.0, &DiffSpec::order(m))?;
                out.push(d.value);
            }
            Ok(out)
        }
        _ => Ok(derivatives_at_zero_exact(family, max_m)?
            .iter()
            .map(|r| r.to_f64().expect("finite rational"))
            .collect()),
    }
}

/// Cutoff value together with its Taylor data at the origin.
pub fn evaluate(family: &WaveletFamily, k: f64, max_m: usize) -> Result<CutoffEvaluation> {
    Ok(CutoffEvaluation {
        value: cutoff(family, k),
        derivatives_at_zero: derivatives_at_zero(family, max_m)?,
        source: match family {
            WaveletFamily::Custom(_) => Source::Numeric,
            _ => Source::ClosedForm,
        },
        analyticity: family.analyticity(),
    })
}

/// Bump profile without its normalisation: `sqrt(kappa (2k^2-6k+5)) / ((k-1)(2-k) cosh(..))`.
fn bump_shape(k: f64) -> f64 {
    if k <= 1.0 || k >= 2.0 {
        return 0.0;
    }
    let (u, v) = (k - 1.0, 2.0 - k);
    let c = ((1.5 - k) / (u * v)).cosh();
    if !c.is_finite() {
        return 0.0;
    }
    (k * (2.0 * k * k - 6.0 * k + 5.0)).sqrt() / (u * v * c)
}

/// Bump normalisation fixed by unit self-overlap `(1/2pi^2) int k^2 w~^2 = 1`.
pub fn bump_normalization() -> f64 {
    static N: OnceLock<f64> = OnceLock::new();
    *N.get_or_init(|| {
        let spec = QuadratureSpec::with_tolerances(1e-14, 1e-13);
        let m = integrate_on(|k| k * k * bump_shape(k).powi(2), 1.0, 2.0, &[1.25, 1.5, 1.75], &spec)
            .expect("compact smooth integrand")
            .value;
        (2.0 * PI * PI / m).sqrt()
    })
}

/// `|w~(kappa)|` in three dimensions.
pub fn momentum_profile(family: &WaveletFamily, kappa: f64) -> f64 {
    let k = kappa.max(0.0);
    match family {
        WaveletFamily::Hermitian(n) => {
            let n = *n as i32;
            2.0 * PI / gamma(1.5 + f64::from(n)).sqrt() * k.powi(n) * (-k * k / 2.0).exp()
        }
        WaveletFamily::Exponential => PI / 3f64.sqrt() * k.sqrt() * (-k / 2.0).exp(),
        WaveletFamily::Bump => bump_normalization() * bump_shape(k),
        WaveletFamily::NonAnalytic => {
            if k == 0.0 {
                0.0
            } else {
                (20.0 * PI * PI / gamma(0.7)).sqrt() * (-0.5 * k.powi(-10) - 5.0 * k.ln()).exp()
            }
        }
        WaveletFamily::Custom(c) => c.profile().eval(k),
    }
}

/// Admissibility constant of the (reconciled) momentum profile, `d = 3`.
pub fn admissibility(family: &WaveletFamily) -> f64 {
    match family {
        WaveletFamily::Hermitian(n) => 8.0 * PI.powi(3) * factorial(n - 1) / gamma(1.5 + f64::from(*n)),
        WaveletFamily::Exponential => 4.0 * PI.powi(3) / 3.0,
        WaveletFamily::Bump => 16.0 * PI * bump_normalization().powi(2),
        WaveletFamily::NonAnalytic => 8.0 * PI.powi(3) / gamma(0.7),
        WaveletFamily::Custom(c) => c.c_w(),
    }
}

/// The family's momentum profile as a [`RadialProfile`].
pub fn radial_profile(family: &WaveletFamily) -> RadialProfile {
    let f = family.clone();
    let p = RadialProfile::new(3, move |k| momentum_profile(&f, k)).expect("d = 3 is supported");
    match family {
        WaveletFamily::Bump => p.with_support(1.0, 2.0).expect("valid band"),
        WaveletFamily::Custom(c) => c.profile().clone(),
        _ => p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwt::{admissibility_constant, NumericCutoff};
    use approx::assert_relative_eq;

    fn catalogue() -> Vec<WaveletFamily> {
        vec![
            WaveletFamily::Hermitian(1),
            WaveletFamily::Hermitian(2),
            WaveletFamily::Hermitian(3),
            WaveletFamily::Exponential,
            WaveletFamily::Bump,
            WaveletFamily::NonAnalytic,
        ]
    }

    #[test]
    fn parse_round_trip() {
        for f in catalogue() {
            assert_eq!(f.to_string().parse::<WaveletFamily>().unwrap(), f);
        }
        assert!("hermitian:n=0".parse::<WaveletFamily>().is_err());
        assert!("hermitian:3".parse::<WaveletFamily>().is_err());
        assert!("morlet".parse::<WaveletFamily>().is_err());
    }

    #[test]
    fn cutoff_values() {
        assert_relative_eq!(cutoff(&WaveletFamily::Hermitian(2), 1.0), 2.0 * (-1.0f64).exp(), max_relative = 1e-15);
        assert_eq!(cutoff(&WaveletFamily::Bump, 1.5), 0.5);
        assert_relative_eq!(cutoff(&WaveletFamily::NonAnalytic, 1.0), 1.0 - (-1.0f64).exp(), max_relative = 1e-15);
        for f in catalogue() {
            assert_eq!(cutoff(&f, 0.0), 1.0, "{f}");
        }
    }

    #[test]
    fn cutoffs_are_monotone() {
        for f in catalogue() {
            let mut prev = 1.0;
            for i in 0..500 {
                let v = cutoff(&f, 10.0 * f64::from(i) / 499.0);
                assert!(v <= prev && (0.0..=1.0).contains(&v), "{f} at step {i}");
                prev = v;
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let d = cutoff_derivative(&WaveletFamily::Exponential, 1.0, 1).unwrap();
        assert_relative_eq!(d.value, -(-1.0f64).exp());
        let d = cutoff_derivative(&WaveletFamily::Hermitian(1), 0.0, 2).unwrap();
        assert_eq!(d.value, -2.0);
        let d = cutoff_derivative(&WaveletFamily::NonAnalytic, 0.5, 1).unwrap();
        assert!(d.value.abs() < 1e-300);
        let d = cutoff_derivative(&WaveletFamily::Bump, 2.0, 1).unwrap();
        assert!(d.seam && d.value == 0.0);
        assert!(cutoff_derivative(&WaveletFamily::Bump, 1.5, 4).is_err());
    }

    #[test]
    fn taylor_data() {
        let h1 = derivatives_at_zero(&WaveletFamily::Hermitian(1), 4).unwrap();
        assert_eq!(h1, vec![1.0, 0.0, -2.0, 0.0, 12.0]);
        let e = derivatives_at_zero(&WaveletFamily::Exponential, 3).unwrap();
        assert_eq!(e, vec![1.0, -1.0, 1.0, -1.0]);
        assert_eq!(derivatives_at_zero(&WaveletFamily::Bump, 3).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        assert!(derivatives_at_zero(&WaveletFamily::Exponential, 21).is_err());
    }

    #[test]
    fn hermitian_suppression_pattern() {
        for n in 1..=6u32 {
            let d = derivatives_at_zero(&WaveletFamily::Hermitian(n), 2 * n as usize).unwrap();
            assert!(d[1..2 * n as usize].iter().all(|v| *v == 0.0), "n={n}: {d:?}");
            let expect = -factorial(2 * n) / factorial(n);
            assert_relative_eq!(d[2 * n as usize], expect, max_relative = 1e-15);
        }
    }

    #[test]
    fn hermitian_taylor_matches_finite_differences() {
        let d = derivatives_at_zero(&WaveletFamily::Hermitian(1), 8).unwrap();
        for m in 1..=8u32 {
            let fd = differentiate(|k: f64| (-k * k).exp(), 0.0, &DiffSpec::order(m)).unwrap();
            assert!((fd.value - d[m as usize]).abs() < 1e-6 * d[m as usize].abs().max(1.0), "m={m}");
        }
    }

    #[test]
    fn profiles_reproduce_cutoffs() {
        let spec = QuadratureSpec::default();
        for f in [WaveletFamily::Hermitian(1), WaveletFamily::Hermitian(3), WaveletFamily::Exponential] {
            let nc = NumericCutoff::new(radial_profile(&f), spec).unwrap();
            assert_relative_eq!(nc.c_w(), admissibility(&f), max_relative = 1e-10);
            for &k in &[0.3, 1.0, 2.2] {
                assert_relative_eq!(nc.eval(k).unwrap(), cutoff(&f, k), max_relative = 1e-9);
            }
        }
        for f in [WaveletFamily::Bump, WaveletFamily::NonAnalytic] {
            let r = admissibility_constant(&radial_profile(&f), &spec).unwrap();
            assert_relative_eq!(r.c_w, admissibility(&f), max_relative = 1e-9);
            let nc = NumericCutoff::new(radial_profile(&f), spec).unwrap();
            for &k in &[0.8, 1.2, 1.5, 1.9] {
                assert!((nc.eval(k).unwrap() - cutoff(&f, k)).abs() < 1e-9, "{f} {k}");
            }
        }
    }

    #[test]
    fn profile_examples() {
        assert_eq!(momentum_profile(&WaveletFamily::Bump, 0.5), 0.0);
        // Hermitian n=1 peaks at kappa = 1
        let h = |k| momentum_profile(&WaveletFamily::Hermitian(1), k);
        assert!(h(1.0) > h(0.99) && h(1.0) > h(1.01));
        let e = momentum_profile(&WaveletFamily::Exponential, 1.0);
        assert_relative_eq!(e, PI / 3f64.sqrt() * (-0.5f64).exp(), max_relative = 1e-15);
    }
}
