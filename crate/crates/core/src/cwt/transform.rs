use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::RadialProfile;
use crate::error::{Error, Result};
use crate::numerics::{integrate_on, QuadratureSpec};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Real even 1D wavelet with its momentum modulus.
#[derive(Clone)]
pub struct Wavelet1d {
    position: RealFn,
    momentum: RadialProfile,
    /// `|w(x)|` is negligible for `|x| > half_width`.
    half_width: f64,
}

impl fmt::Debug for Wavelet1d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Wavelet1d").field("half_width", &self.half_width).finish_non_exhaustive()
    }
}

impl Wavelet1d {
    pub fn new<F>(position: F, momentum: RadialProfile, half_width: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if momentum.dimension() != 1 {
            return Err(Error::InvalidArgument("1D wavelet needs a dimension-1 profile".into()));
        }
        if !(half_width > 0.0) {
            return Err(Error::InvalidArgument("half_width must be positive".into()));
        }
        Ok(Wavelet1d { position: Arc::new(position), momentum, half_width })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.position)(x)
    }

    pub fn momentum(&self) -> &RadialProfile {
        &self.momentum
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }
}

/// Mexican hat `(1 - x^2) e^{-x^2/2}`, whose transform is `sqrt(2 pi) k^2 e^{-k^2/2}`.
pub fn mexican_hat() -> Wavelet1d {
    let momentum = RadialProfile::new(1, |k: f64| (2.0 * PI).sqrt() * k * k * (-k * k / 2.0).exp())
        .expect("dimension 1 is supported");
    Wavelet1d::new(|x: f64| (1.0 - x * x) * (-x * x / 2.0).exp(), momentum, 9.0)
        .expect("valid wavelet")
}

/// Signal with the window outside which it is negligible.
#[derive(Clone)]
pub struct Signal1d {
    eval: RealFn,
    window: (f64, f64),
}

impl fmt::Debug for Signal1d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Signal1d").field("window", &self.window).finish_non_exhaustive()
    }
}

impl Signal1d {
    pub fn new<F>(eval: F, lo: f64, hi: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(hi > lo) {
            return Err(Error::InvalidArgument(format!("empty signal window [{lo}, {hi}]")));
        }
        Ok(Signal1d { eval: Arc::new(eval), window: (lo, hi) })
    }

    /// Gaussian `e^{-(x - centre)^2 / 2}`.
    pub fn gaussian(centre: f64) -> Self {
        Signal1d::new(move |x: f64| (-(x - centre).powi(2) / 2.0).exp(), centre - 9.0, centre + 9.0)
            .expect("non-empty window")
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }
}

/// Log-uniform scales, each with its own row of equally spaced positions.
///
/// The rotation variable is absent: for even 1D wavelets the reflection
/// group contributes the factor `S^0 = 2` to the constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    scales: Vec<f64>,
    positions: Vec<Vec<f64>>,
    log_step: f64,
    params: GridParams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct GridParams {
    a_min: f64,
    a_max: f64,
    per_octave: u32,
    window: (f64, f64),
    reach: f64,
    per_width: u32,
}

impl ScaleGrid {
    /// `per_octave` scales per doubling in `[a_min, a_max]`; position rows
    /// cover `window` widened by `reach * a` with spacing `a / per_width`.
    pub fn log_uniform(
        a_min: f64,
        a_max: f64,
        per_octave: u32,
        window: (f64, f64),
        reach: f64,
        per_width: u32,
    ) -> Result<Self> {
        if !(a_min > 0.0 && a_max > a_min) || per_octave == 0 || per_width == 0 || !(reach > 0.0) {
            return Err(Error::InvalidArgument("invalid scale grid parameters".into()));
        }
        if !(window.1 > window.0) {
            return Err(Error::InvalidArgument("empty position window".into()));
        }
        let octaves = (a_max / a_min).log2();
        let count = (octaves * f64::from(per_octave)).round().max(1.0) as usize;
        let log_step = (a_max / a_min).ln() / count as f64;
        let scales: Vec<f64> = (0..=count).map(|i| a_min * (log_step * i as f64).exp()).collect();
        let positions = scales
            .iter()
            .map(|&a| {
                let step = a / f64::from(per_width);
                let lo = window.0 - reach * a;
                let n = ((window.1 + reach * a - lo) / step).ceil() as usize;
                (0..=n).map(|i| lo + step * i as f64).collect()
            })
            .collect();
        let params = GridParams { a_min, a_max, per_octave, window, reach, per_width };
        Ok(ScaleGrid { scales, positions, log_step, params })
    }

    /// Wider grid at the same sampling density: one more octave of small
    /// scales and two more of large ones. The dominant discretisation error
    /// comes from the missing large scales, so this shrinks it about 4-fold.
    pub fn refined(&self) -> Self {
        let p = self.params;
        ScaleGrid::log_uniform(p.a_min / 2.0, p.a_max * 4.0, p.per_octave, p.window, p.reach, p.per_width)
            .expect("refining a valid grid")
    }

    /// Grid used for the Parseval check on unit-width signals.
    pub fn default_for(window: (f64, f64)) -> Self {
        ScaleGrid::log_uniform(1.0 / 64.0, 4096.0, 8, window, 9.0, 4).expect("valid defaults")
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn positions(&self, scale_index: usize) -> &[f64] {
        &self.positions[scale_index]
    }

    /// Trapezoid weight of scale `i` for the measure `da / a^2`, including the
    /// position spacing of that row.
    fn cell_weight(&self, i: usize) -> f64 {
        let end = i == 0 || i + 1 == self.scales.len();
        let wu = if end { self.log_step / 2.0 } else { self.log_step };
        let row = &self.positions[i];
        let db = if row.len() > 1 { row[1] - row[0] } else { 1.0 };
        wu / self.scales[i] * db
    }

    pub fn cell_count(&self) -> usize {
        self.positions.iter().map(Vec::len).sum()
    }
}

/// Coefficients `W(a, x)` indexed by scale row then position.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    pub rows: Vec<Vec<f64>>,
}

/// `W(a, x) = int a^{-1/2} w((x' - x)/a) phi(x') dx'` on every grid cell.
pub fn cwt_forward_1d(
    signal: &Signal1d,
    wavelet: &Wavelet1d,
    grid: &ScaleGrid,
    spec: &QuadratureSpec,
) -> Result<CoefficientGrid> {
    let (slo, shi) = signal.window();
    let mut rows = Vec::with_capacity(grid.scales.len());
    for (i, &a) in grid.scales.iter().enumerate() {
        let norm = a.powf(-0.5);
        let mut row = Vec::with_capacity(grid.positions[i].len());
        for &x in &grid.positions[i] {
            let lo = slo.max(x - wavelet.half_width * a);
            let hi = shi.min(x + wavelet.half_width * a);
            if lo >= hi {
                row.push(0.0);
                continue;
            }
            // the narrower of the two factors sets the panel size
            let width = 3.0 * a.min(1.0);
            let n = ((hi - lo) / width).ceil().min(64.0) as usize;
            let breaks: Vec<f64> = (1..n).map(|j| lo + (hi - lo) * j as f64 / n as f64).collect();
            let f = |t: f64| norm * wavelet.eval((t - x) / a) * signal.eval(t);
            let v = integrate_on(f, lo, hi, &breaks, spec).map_err(|e| Error::TransformCell {
                scale: a,
                position: x,
                message: e.to_string(),
            })?;
            row.push(v.value);
        }
        rows.push(row);
    }
    Ok(CoefficientGrid { rows })
}

fn check_shape(coefficients: &CoefficientGrid, grid: &ScaleGrid) -> Result<()> {
    let ok = coefficients.rows.len() == grid.scales.len()
        && coefficients.rows.iter().zip(&grid.positions).all(|(r, p)| r.len() == p.len());
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument("coefficient grid does not match the scale grid".into()))
    }
}

/// Reconstruction `phi(x) = (2 / C_w) int da/a^2 int dx' W(a, x') a^{-1/2} w((x - x')/a)`.
pub fn cwt_inverse_1d(
    coefficients: &CoefficientGrid,
    wavelet: &Wavelet1d,
    grid: &ScaleGrid,
    c_w: f64,
) -> Result<impl Fn(f64) -> f64> {
    check_shape(coefficients, grid)?;
    if !(c_w > 0.0) {
        return Err(Error::InvalidArgument("C_w must be positive".into()));
    }
    let coefficients = coefficients.clone();
    let grid = grid.clone();
    let wavelet = wavelet.clone();
    Ok(move |x: f64| {
        let mut total = 0.0;
        for (i, &a) in grid.scales.iter().enumerate() {
            let norm = a.powf(-0.5);
            let reach = wavelet.half_width * a;
            let mut row_sum = 0.0;
            for (&b, &w) in grid.positions[i].iter().zip(&coefficients.rows[i]) {
                if (x - b).abs() < reach {
                    row_sum += w * norm * wavelet.eval((x - b) / a);
                }
            }
            total += grid.cell_weight(i) * row_sum;
        }
        2.0 * total / c_w
    })
}

/// Wavelet-domain inner product `(2 / C_w) sum W_phi W_psi da dx / a^2`.
pub fn isometry_inner_product(
    phi: &CoefficientGrid,
    psi: &CoefficientGrid,
    grid: &ScaleGrid,
    c_w: f64,
) -> Result<f64> {
    check_shape(phi, grid)?;
    check_shape(psi, grid)?;
    let mut total = 0.0;
    for (i, (rp, rq)) in phi.rows.iter().zip(&psi.rows).enumerate() {
        let row: f64 = rp.iter().zip(rq).map(|(p, q)| p * q).sum();
        total += grid.cell_weight(i) * row;
    }
    Ok(2.0 * total / c_w)
}
