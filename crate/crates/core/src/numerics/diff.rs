use crate::error::{Error, Result};

const MAX_ORDER: u32 = 10;
const STEP_GROWTH: f64 = 1.25;

/// Wide central stencils evaluated over a geometric sweep of step sizes.
///
/// A stencil of `order / 2 + extra_points` points per side is exact for
/// polynomials of high degree, so moderately large steps can be used and the
/// `h^-order` rounding amplification stays small. The step whose estimate
/// agrees best with both neighbours in the sweep is returned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffSpec {
    pub order: u32,
    /// Smallest step, relative to `max(|x|, 1)`. Lowered when `max_reach`
    /// would otherwise be exceeded.
    pub base_step: f64,
    /// Number of steps in the sweep; each is 1.25 times the previous.
    pub steps: u32,
    /// Points per side beyond the minimum `ceil(order / 2)`.
    pub extra_points: u32,
    /// Largest distance from `x` at which `f` may be evaluated.
    pub max_reach: Option<f64>,
}

impl Default for DiffSpec {
    fn default() -> Self {
        DiffSpec { order: 1, base_step: 0.02, steps: 20, extra_points: 10, max_reach: None }
    }
}

impl DiffSpec {
    pub fn order(order: u32) -> Self {
        DiffSpec { order, ..Default::default() }
    }

    pub fn with_reach(mut self, reach: f64) -> Self {
        self.max_reach = Some(reach);
        self
    }

    fn half_width(&self) -> usize {
        (self.order as usize).div_ceil(2) + self.extra_points as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 1 || self.order > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "derivative order must lie in 1..={MAX_ORDER}, got {}",
                self.order
            )));
        }
        if !(self.base_step > 0.0) {
            return Err(Error::InvalidArgument("base_step must be positive".into()));
        }
        if self.steps < 3 {
            return Err(Error::InvalidArgument("step sweep needs at least 3 steps".into()));
        }
        if let Some(r) = self.max_reach {
            if !(r > 0.0) {
                return Err(Error::InvalidArgument("max_reach must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate {
    pub value: f64,
    /// Largest disagreement with the neighbouring steps of the sweep.
    pub error: f64,
}

/// Fornberg weights for the `m`-th derivative at 0 on nodes `-n..=n`.
fn stencil_weights(m: usize, n: usize) -> Vec<f64> {
    let nodes: Vec<f64> = (0..=2 * n).map(|i| i as f64 - n as f64).collect();
    let len = nodes.len();
    // c[j][k]: weight of node j for derivative k
    let mut c = vec![vec![0.0; m + 1]; len];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    for i in 1..len {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Derivative of order `spec.order` at `x`.
pub fn differentiate<F: Fn(f64) -> f64>(f: F, x: f64, spec: &DiffSpec) -> Result<DerivativeEstimate> {
    spec.validate()?;
    let n = spec.half_width();
    let w = stencil_weights(spec.order as usize, n);
    let mut h0 = spec.base_step * x.abs().max(1.0);
    if let Some(r) = spec.max_reach {
        // slide the whole sweep down so its widest stencil fits
        let widest = h0 * n as f64 * STEP_GROWTH.powi(spec.steps as i32 - 1);
        if widest > r {
            h0 *= r / widest;
        }
    }
    let mut values = Vec::with_capacity(spec.steps as usize);
    for i in 0..spec.steps {
        let h = h0 * STEP_GROWTH.powi(i as i32);
        let mut acc = 0.0;
        for (j, wj) in w.iter().enumerate() {
            if *wj != 0.0 {
                acc += wj * f(x + (j as f64 - n as f64) * h);
            }
        }
        values.push(acc / h.powi(spec.order as i32));
    }
    let mut best = DerivativeEstimate { value: f64::NAN, error: f64::INFINITY };
    for i in 1..values.len() - 1 {
        let err = (values[i] - values[i - 1]).abs().max((values[i] - values[i + 1]).abs());
        if err < best.error {
            best = DerivativeEstimate { value: values[i], error: err };
        }
    }
    if !best.value.is_finite() || best.error > 1e-3 * best.value.abs().max(1.0) {
        return Err(Error::UnreliableDerivative { estimate: best.value, error: best.error });
    }
    Ok(best)
}
