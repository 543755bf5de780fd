//! Euler–Maclaurin expansion in powers of `A / s`.
//!
//! Both quantities are written as `sum_m c_m pi^{2m} A^{2m-2} / s^{2m+2}` with
//! `m = 1` the continuum term. Periodic plates use `c_m = 8 (4^{m-1}) a_m`
//! for the force; Dirichlet plates use `c_m = a_m / 2`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{BoundaryCondition, CasimirConfig};
use crate::error::{Error, Result};
use crate::numerics::{bernoulli_number, bernoulli_number_f64, factorial};
use crate::wavelets::{derivatives_at_zero, derivatives_at_zero_exact, WaveletFamily};

pub const MAX_SERIES_ORDER: u32 = 10;
const WARN_RATIO: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Energy,
    Force,
}

/// `a_m = B_{2m+2} / (2m+2) * f~^{(2m-2)}(0) / (2m-2)!` for `m = 1..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    pub order: u32,
    /// Exact values, absent for tabulated profiles.
    pub exact: Option<Vec<BigRational>>,
    pub values: Vec<f64>,
}

impl SeriesCoefficients {
    /// `a_m`; `m = 1` gives the universal `-1/120`.
    pub fn a(&self, m: u32) -> f64 {
        self.values[(m - 1) as usize]
    }

    pub fn a_exact(&self, m: u32) -> Option<&BigRational> {
        self.exact.as_ref().map(|v| &v[(m - 1) as usize])
    }

    /// Continuum term as a rational multiple of `pi^2 / s^4`.
    pub fn leading_term(bc: BoundaryCondition, kind: SeriesKind) -> BigRational {
        let d = match (bc, kind) {
            (BoundaryCondition::Periodic, SeriesKind::Energy) => 45,
            (BoundaryCondition::Periodic, SeriesKind::Force) => 15,
            (BoundaryCondition::Dirichlet, SeriesKind::Energy) => 720,
            (BoundaryCondition::Dirichlet, SeriesKind::Force) => 240,
        };
        BigRational::new(BigInt::from(-1), BigInt::from(d))
    }
}

fn big_factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn series_coefficients(family: &WaveletFamily, order: u32) -> Result<SeriesCoefficients> {
    if order == 0 || order > MAX_SERIES_ORDER {
        return Err(Error::InvalidArgument(format!("series order must be in 1..={MAX_SERIES_ORDER}, got {order}")));
    }
    let top = (2 * order - 2) as usize;
    if let WaveletFamily::Custom(_) = family {
        let d = derivatives_at_zero(family, top)?;
        let values = (1..=order)
            .map(|m| {
                let b = bernoulli_number_f64((2 * m + 2) as usize).expect("index within table");
                b / f64::from(2 * m + 2) * d[(2 * m - 2) as usize] / factorial(2 * m - 2)
            })
            .collect();
        return Ok(SeriesCoefficients { order, exact: None, values });
    }
    let d = derivatives_at_zero_exact(family, top)?;
    let exact: Vec<BigRational> = (1..=order)
        .map(|m| {
            let b = bernoulli_number((2 * m + 2) as usize).expect("index within table");
            b / BigRational::from_integer(BigInt::from(2 * m + 2)) * &d[(2 * m - 2) as usize]
                / BigRational::from_integer(big_factorial(2 * m - 2))
        })
        .collect();
    let values = exact.iter().map(|r| r.to_f64().expect("finite rational")).collect();
    Ok(SeriesCoefficients { order, exact: Some(exact), values })
}

/// One term `coefficient * pi^pi_power * A^a_power / s^s_power`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTerm {
    pub m: u32,
    pub coefficient: f64,
    pub exact: Option<BigRational>,
    pub pi_power: u32,
    pub a_power: u32,
    pub s_power: u32,
}

impl SeriesTerm {
    pub fn value(&self, s: f64, a: f64) -> f64 {
        self.coefficient * PI.powi(self.pi_power as i32) * a.powi(self.a_power as i32) / s.powi(self.s_power as i32)
    }
}

fn term_scale(bc: BoundaryCondition, kind: SeriesKind, m: u32) -> BigRational {
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let base = match bc {
        BoundaryCondition::Periodic => int(8) * int(4i64.pow(m - 1)),
        BoundaryCondition::Dirichlet => BigRational::new(BigInt::from(1), BigInt::from(2)),
    };
    match kind {
        SeriesKind::Force => base,
        SeriesKind::Energy => base / int(i64::from(2 * m + 1)),
    }
}

/// Terms `m = 1..=order` of the expansion.
pub fn series_terms(family: &WaveletFamily, bc: BoundaryCondition, kind: SeriesKind, order: u32) -> Result<Vec<SeriesTerm>> {
    let c = series_coefficients(family, order)?;
    Ok((1..=order)
        .map(|m| {
            let scale = term_scale(bc, kind, m);
            let exact = c.a_exact(m).map(|a| a * &scale);
            let coefficient = match &exact {
                Some(e) => e.to_f64().expect("finite rational"),
                None => c.a(m) * scale.to_f64().expect("finite rational"),
            };
            SeriesTerm { m, coefficient, exact, pi_power: 2 * m, a_power: 2 * m - 2, s_power: 2 * m + 2 }
        })
        .collect())
}

/// Truncated series value with the individual term values (`m = 1` first).
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: Vec<f64>,
    pub warning: Option<String>,
}

fn evaluate(config: &CasimirConfig, family: &WaveletFamily, kind: SeriesKind) -> Result<SeriesValue> {
    config.validate()?;
    let ratio = config.a / config.s;
    if ratio >= 1.0 {
        return Err(Error::InvalidArgument(format!("series needs A/s < 1, got {ratio}")));
    }
    let terms: Vec<f64> = series_terms(family, config.bc, kind, config.series_order)?
        .iter()
        .map(|t| t.value(config.s, config.a))
        .collect();
    let value = terms.iter().fold(super::Accumulator::default(), |mut acc, t| {
        acc.add(*t);
        acc
    });
    let mut notes = Vec::new();
    if ratio > WARN_RATIO {
        notes.push(format!("A/s = {ratio:.3} exceeds {WARN_RATIO}; the asymptotic series is unreliable"));
    }
    let nonzero: Vec<f64> = terms.iter().copied().filter(|t| *t != 0.0).collect();
    if let [.., prev, last] = nonzero[..] {
        if last.abs() > 0.5 * prev.abs() {
            notes.push(format!("last series term {last:e} exceeds half the previous term {prev:e}"));
        }
    }
    let warning = if notes.is_empty() { None } else { Some(notes.join("; ")) };
    Ok(SeriesValue { value: value.value(), terms, warning })
}

/// Renormalized energy from the truncated series.
pub fn energy_series(config: &CasimirConfig, family: &WaveletFamily) -> Result<SeriesValue> {
    evaluate(config, family, SeriesKind::Energy)
}

/// Force from the truncated series; `A = 0` gives the continuum value.
pub fn force_series(config: &CasimirConfig, family: &WaveletFamily) -> Result<SeriesValue> {
    evaluate(config, family, SeriesKind::Force)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn coefficient_examples() {
        let h = series_coefficients(&WaveletFamily::Hermitian(1), 3).unwrap();
        assert_eq!(h.a_exact(1).unwrap(), &rat(-1, 120));
        assert_eq!(h.a_exact(2).unwrap(), &rat(-1, 252));
        let e = series_coefficients(&WaveletFamily::Exponential, 3).unwrap();
        assert_eq!(e.a_exact(2).unwrap(), &rat(1, 504));
        for f in [WaveletFamily::Bump, WaveletFamily::NonAnalytic] {
            let c = series_coefficients(&f, 10).unwrap();
            assert!((2..=10).all(|m| c.a(m) == 0.0));
        }
        assert!(series_coefficients(&WaveletFamily::Exponential, 11).is_err());
        assert!(series_coefficients(&WaveletFamily::Exponential, 0).is_err());
    }

    #[test]
    fn force_terms_carry_the_printed_corrections() {
        let t = series_terms(&WaveletFamily::Hermitian(1), BoundaryCondition::Periodic, SeriesKind::Force, 2).unwrap();
        assert_eq!(t[0].exact.as_ref().unwrap(), &rat(-1, 15));
        // 8 pi^2 a_2 (2 pi A / s)^2 = -2 pi^2/63 * (2 pi A/s)^2
        assert_eq!(t[1].exact.as_ref().unwrap(), &rat(-8, 63));
        let e = series_terms(&WaveletFamily::Exponential, BoundaryCondition::Periodic, SeriesKind::Energy, 3).unwrap();
        assert_eq!(e[0].exact.as_ref().unwrap(), &rat(-1, 45));
        assert_eq!(e[1].exact.as_ref().unwrap(), &rat(4 * 4, 315 * 4));
    }

    #[test]
    fn dirichlet_leading_terms() {
        for (kind, d) in [(SeriesKind::Energy, 720), (SeriesKind::Force, 240)] {
            let t = series_terms(&WaveletFamily::Hermitian(2), BoundaryCondition::Dirichlet, kind, 1).unwrap();
            assert_eq!(t[0].exact.as_ref().unwrap(), &rat(-1, d));
            assert_eq!(SeriesCoefficients::leading_term(BoundaryCondition::Dirichlet, kind), rat(-1, d));
        }
    }

    #[test]
    fn dirichlet_is_periodic_at_double_separation() {
        for f in [WaveletFamily::Hermitian(1), WaveletFamily::Hermitian(3), WaveletFamily::Exponential] {
            for kind in [SeriesKind::Energy, SeriesKind::Force] {
                let p = series_terms(&f, BoundaryCondition::Periodic, kind, 5).unwrap();
                let d = series_terms(&f, BoundaryCondition::Dirichlet, kind, 5).unwrap();
                for (tp, td) in p.iter().zip(&d) {
                    let two = BigRational::from_integer(BigInt::from(2)).pow(tp.s_power as i32);
                    assert_eq!(tp.exact.as_ref().unwrap() / two, *td.exact.as_ref().unwrap());
                    assert_eq!((tp.pi_power, tp.a_power, tp.s_power), (td.pi_power, td.a_power, td.s_power));
                }
            }
        }
    }

    #[test]
    fn force_series_examples() {
        let c = CasimirConfig::new(10.0, 0.0);
        let v = force_series(&c, &WaveletFamily::Hermitian(2)).unwrap();
        assert_relative_eq!(v.value, -PI * PI / 15.0 * 1e-4, max_relative = 1e-15);
        let v = force_series(&c.clone().with_bc(BoundaryCondition::Dirichlet), &WaveletFamily::Bump).unwrap();
        assert_relative_eq!(v.value, -PI * PI / 240.0 * 1e-4, max_relative = 1e-15);
        let c = CasimirConfig::new(10.0, 1.0).with_series_order(2);
        let v = force_series(&c, &WaveletFamily::Hermitian(1)).unwrap();
        let want = -PI * PI / 15.0 * 1e-4 - 2.0 * PI * PI / 63.0 * (2.0 * PI / 10.0).powi(2) * 1e-4;
        assert_relative_eq!(v.value, want, max_relative = 1e-14);
    }

    #[test]
    fn warnings() {
        let v = force_series(&CasimirConfig::new(2.0, 1.0), &WaveletFamily::Exponential).unwrap();
        assert!(v.warning.is_some());
        let v = force_series(&CasimirConfig::new(100.0, 1.0), &WaveletFamily::Exponential).unwrap();
        assert!(v.warning.is_none());
        assert!(force_series(&CasimirConfig::new(1.0, 1.0), &WaveletFamily::Exponential).is_err());
    }

    #[test]
    fn series_matches_exact_exponential() {
        let c = CasimirConfig::new(20.0, 1.0).with_series_order(6);
        let v = force_series(&c, &WaveletFamily::Exponential).unwrap();
        let exact = super::super::exact_force_exponential(20.0, 1.0).unwrap();
        assert_relative_eq!(v.value, exact, max_relative = 1e-9);
        let v = energy_series(&c, &WaveletFamily::Exponential).unwrap();
        let exact = super::super::exact_rho_exponential(20.0, 1.0).unwrap();
        assert_relative_eq!(v.value, exact, max_relative = 1e-9);
    }
}
