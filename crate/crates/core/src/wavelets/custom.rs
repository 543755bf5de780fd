use std::path::Path;

use crate::cwt::{NumericCutoff, RadialProfile};
use crate::error::{Error, Result};
use crate::numerics::{differentiate, DiffSpec, MonotoneCubic, QuadratureSpec};

/// Radial momentum profile read from a two-column table `(kappa, |w~|)`.
#[derive(Debug, Clone)]
pub struct CustomWavelet {
    source: String,
    cutoff: NumericCutoff,
}

impl CustomWavelet {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ProfileTable(format!("{}: {e}", path.display())))?;
        Self::from_table(path.display().to_string(), &text)
    }

    /// Parses whitespace- or comma-separated rows; `#` starts a comment.
    pub fn from_table(source: impl Into<String>, text: &str) -> Result<Self> {
        let mut kappa = Vec::new();
        let mut value = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|c| !c.is_empty()).collect();
            if cols.len() != 2 {
                return Err(Error::ProfileTable(format!("line {}: expected 2 columns, found {}", i + 1, cols.len())));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| Error::ProfileTable(format!("line {}: `{s}` is not a number", i + 1)))
            };
            let (k, w) = (parse(cols[0])?, parse(cols[1])?);
            if k < 0.0 {
                return Err(Error::ProfileTable(format!("line {}: negative momentum", i + 1)));
            }
            kappa.push(k);
            value.push(w.abs());
        }
        let interp = MonotoneCubic::new(kappa, value)?;
        let (lo, hi) = interp.domain();
        let profile = RadialProfile::new(3, move |k| interp.eval(k).max(0.0))?.with_support(lo, hi)?;
        let cutoff = NumericCutoff::new(profile, QuadratureSpec::default())?;
        Ok(CustomWavelet { source: source.into(), cutoff })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn profile(&self) -> &RadialProfile {
        self.cutoff.profile()
    }

    pub fn c_w(&self) -> f64 {
        self.cutoff.c_w()
    }

    /// Numeric cutoff; NaN if the quadrature fails.
    pub fn cutoff(&self, k: f64) -> f64 {
        self.cutoff.eval(k).unwrap_or(f64::NAN)
    }

    pub fn cutoff_derivative(&self, k: f64, order: u32) -> Result<f64> {
        if order == 1 {
            return self.cutoff.derivative(k);
        }
        let spec = DiffSpec::order(order - 1).with_reach((0.5 * k).max(1e-3));
        let d = differentiate(|x| self.cutoff.derivative(x).unwrap_or(f64::NAN), k, &spec)?;
        Ok(d.value)
    }
}
