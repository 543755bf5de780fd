//! Vacuum energy density and force between plates under a scale cutoff.
//!
//! All quantities are per unit plate area in natural units; energies and
//! forces carry dimension length^-4. `s` is the plate separation and `a`
//! the scale cutoff `A`.

mod exact;
mod force;
mod modes;
mod remainder;
mod series;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::QuadratureSpec;

pub use exact::{exact_force_exponential, exact_rho0_exponential, exact_rho_exponential};
pub use force::{continuum_force, force, force_curve, force_numeric, force_spec, ForceCurve, ForceSample};
pub use modes::{aux_f, bulk_energy, moment_integral, rho0_direct, rho_renormalized};
pub use remainder::{force_via_remainder, remainder_r4, RemainderValue};
pub use series::{
    SeriesKind, MAX_SERIES_ORDER,
    energy_series, force_series, series_coefficients, series_terms, SeriesCoefficients, SeriesTerm, SeriesValue,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Periodic,
    Dirichlet,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryCondition::Periodic => "periodic",
            BoundaryCondition::Dirichlet => "dirichlet",
        })
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(BoundaryCondition::Periodic),
            "dirichlet" => Ok(BoundaryCondition::Dirichlet),
            _ => Err(Error::InvalidArgument(format!("unknown boundary condition `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    DirectSum,
    EulerMaclaurinSeries,
    ExactClosedForm,
    Remainder,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::DirectSum => "sum",
            Method::EulerMaclaurinSeries => "series",
            Method::ExactClosedForm => "exact",
            Method::Remainder => "remainder",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Method::DirectSum),
            "series" => Ok(Method::EulerMaclaurinSeries),
            "exact" => Ok(Method::ExactClosedForm),
            "remainder" => Ok(Method::Remainder),
            _ => Err(Error::InvalidArgument(format!("unknown method `{s}`; expected sum, series, exact or remainder"))),
        }
    }
}

/// Mode-sum range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Double `N` until the last mode contributes below 1e-12 relative.
    Adaptive,
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CasimirConfig {
    pub s: f64,
    pub a: f64,
    pub bc: BoundaryCondition,
    pub method: Method,
    pub truncation: Truncation,
    /// Highest index `m` kept in the Euler–Maclaurin series.
    pub series_order: u32,
    pub quadrature: QuadratureSpec,
}

impl CasimirConfig {
    pub fn new(s: f64, a: f64) -> Self {
        CasimirConfig {
            s,
            a,
            bc: BoundaryCondition::Periodic,
            method: Method::DirectSum,
            truncation: Truncation::Adaptive,
            series_order: 3,
            quadrature: QuadratureSpec::default(),
        }
    }

    pub fn with_bc(mut self, bc: BoundaryCondition) -> Self {
        self.bc = bc;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_truncation(mut self, truncation: Truncation) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn with_series_order(mut self, m: u32) -> Self {
        self.series_order = m;
        self
    }

    pub fn at_separation(&self, s: f64) -> Self {
        CasimirConfig { s, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::InvalidArgument(format!("separation must be positive, got {}", self.s)));
        }
        if !(self.a >= 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale cutoff must be >= 0, got {}", self.a)));
        }
        if let Truncation::Fixed(0) = self.truncation {
            return Err(Error::InvalidArgument("fixed truncation needs N >= 1".into()));
        }
        if self.series_order == 0 {
            return Err(Error::InvalidArgument("series order must be >= 1".into()));
        }
        self.quadrature.validate()
    }
}

/// Energy density split into mode sum, bulk term and their difference.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyResult {
    /// Mode-sum energy; for Dirichlet plates the separation-independent
    /// shift `-F(0;A) / 2s` is excluded and reported in `boundary_shift`.
    pub rho0: f64,
    pub bulk: f64,
    pub rho: f64,
    pub method: Method,
    /// Magnitude of the last mode included in the sum (0 for other methods).
    pub truncation_diagnostic: f64,
    /// Number of modes summed (0 for other methods).
    pub modes: u64,
    pub boundary_shift: f64,
    pub warnings: Vec<String>,
}

impl EnergyResult {
    fn from_parts(rho0: f64, bulk: f64, method: Method) -> Self {
        EnergyResult {
            rho0,
            bulk,
            rho: rho0 - bulk,
            method,
            truncation_diagnostic: 0.0,
            modes: 0,
            boundary_shift: 0.0,
            warnings: Vec::new(),
        }
    }
}

/// Left-to-right compensated (Neumaier) summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
