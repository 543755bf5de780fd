//! Gauss–Legendre and adaptive Gauss–Kronrod quadrature, semi-infinite
//! integration by geometric panel growth, Bernoulli-weighted integrals on
//! unit periods, and half-period summation for sine transforms.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::numerics::accel::wynn_epsilon;
use crate::numerics::bernoulli::bernoulli_polynomial;
use crate::numerics::gamma::factorial;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureMethod {
    /// Fixed-order Gauss–Legendre on the whole interval (or per panel).
    GaussLegendre { order: usize },
    /// Globally adaptive 21-point Gauss–Kronrod bisection.
    Adaptive,
    /// Adaptive Gauss–Kronrod on each unit interval `[n, n+1]` separately.
    PerUnitInterval,
}

/// Tolerance contract shared by all integrals in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub method: QuadratureMethod,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Semi-infinite integration stops once a panel contributes less than
    /// `tail_threshold` times the accumulated value.
    pub tail_threshold: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            method: QuadratureMethod::Adaptive,
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            tail_threshold: 1e-14,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureSpec { abs_tol, rel_tol, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("quadrature spec: {what}")));
        if !(self.abs_tol > 0.0) {
            return bad("abs_tol must be positive");
        }
        if !(self.rel_tol > 0.0) {
            return bad("rel_tol must be positive");
        }
        if self.max_subdivisions < 1 {
            return bad("max_subdivisions must be at least 1");
        }
        if !(self.tail_threshold > 0.0) {
            return bad("tail_threshold must be positive");
        }
        if let QuadratureMethod::GaussLegendre { order } = self.method {
            if order < 1 {
                return bad("Gauss-Legendre order must be at least 1");
            }
        }
        Ok(())
    }

    fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Finite(f64, f64),
    SemiInfinite(f64),
}

/// Integral value together with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    fn zero() -> Self {
        Estimate { value: 0.0, error: 0.0 }
    }
}

impl std::ops::AddAssign for Estimate {
    fn add_assign(&mut self, rhs: Self) {
        self.value += rhs.value;
        self.error += rhs.error;
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    if n == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn fixed_gauss_legendre<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize) -> Estimate {
    let (x, w) = gauss_legendre(order);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let value: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * f(c + h * xi)).sum::<f64>() * h;
    let coarse = (order / 2).max(1);
    let (xc, wc) = gauss_legendre(coarse);
    let value_c: f64 = xc.iter().zip(&wc).map(|(xi, wi)| wi * f(c + h * xi)).sum::<f64>() * h;
    Estimate { value, error: (value - value_c).abs() }
}

// 21-point Kronrod extension of the 10-point Gauss rule.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

struct Segment {
    a: f64,
    b: f64,
    est: Estimate,
    resabs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

fn gauss_kronrod_21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);
    let dhlgth = hlgth.abs();
    let fc = f(centr);
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let absc = hlgth * XGK[jtw];
        let f1 = f(centr - absc);
        let f2 = f(centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += WG[j] * (f1 + f2);
        resk += WGK[jtw] * (f1 + f2);
        resabs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let absc = hlgth * XGK[jtwm1];
        let f1 = f(centr - absc);
        let f2 = f(centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += WGK[jtwm1] * (f1 + f2);
        resabs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    let mut abserr = ((resk - resg) * hlgth).abs();
    if resasc != 0.0 && abserr != 0.0 {
        abserr = resasc * (200.0 * abserr / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        abserr = abserr.max(50.0 * f64::EPSILON * resabs);
    }
    Segment { a, b, est: Estimate { value, error: abserr }, resabs }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, points: &[f64], spec: &QuadratureSpec) -> Result<Estimate> {
    let mut heap = BinaryHeap::new();
    let mut frozen = Estimate::zero();
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(gauss_kronrod_21(f, w[0], w[1]));
        }
    }
    let mut evaluations = heap.len();
    loop {
        let mut total = frozen;
        let mut resabs = 0.0;
        for s in heap.iter() {
            total += s.est;
            resabs += s.resabs;
        }
        let target = spec.tolerance_for(total.value).max(50.0 * f64::EPSILON * resabs);
        if total.error <= target || heap.is_empty() {
            return Ok(total);
        }
        if evaluations >= spec.max_subdivisions {
            return Err(Error::Convergence { estimate: total.value, error: total.error });
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) < 4.0 * f64::EPSILON * mid.abs() {
            // cannot resolve further in double precision
            frozen += worst.est;
            continue;
        }
        heap.push(gauss_kronrod_21(f, worst.a, mid));
        heap.push(gauss_kronrod_21(f, mid, worst.b));
        evaluations += 1;
    }
}

fn with_integer_breaks(a: f64, b: f64, breaks: &[f64]) -> Vec<f64> {
    let mut pts = vec![a];
    let mut n = a.floor() + 1.0;
    while n < b {
        pts.push(n);
        n += 1.0;
    }
    pts.extend(breaks.iter().copied().filter(|x| *x > a && *x < b));
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Integrates over `[a, b]` with the interior `breaks` honoured as panel edges.
pub fn integrate_on<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if a == b {
        return Ok(Estimate::zero());
    }
    if b < a {
        let e = integrate_on(f, b, a, breaks, spec)?;
        return Ok(Estimate { value: -e.value, error: e.error });
    }
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|x| *x > a && *x < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    match spec.method {
        QuadratureMethod::GaussLegendre { order } => {
            let mut total = Estimate::zero();
            for w in pts.windows(2) {
                total += fixed_gauss_legendre(&f, w[0], w[1], order);
            }
            Ok(total)
        }
        QuadratureMethod::Adaptive => adaptive(&f, &pts, spec),
        QuadratureMethod::PerUnitInterval => {
            let pts = with_integer_breaks(a, b, &pts);
            let mut total = Estimate::zero();
            for w in pts.windows(2) {
                total += adaptive(&f, w, spec)?;
            }
            Ok(total)
        }
    }
}

const MAX_PANELS: usize = 80;

/// Integral with error bound. Semi-infinite ranges are covered by panels of
/// doubling width, starting from width `max(1, |a|)`.
pub fn integrate_estimate<F: Fn(f64) -> f64>(
    f: F,
    interval: Interval,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    match interval {
        Interval::Finite(a, b) => integrate_on(&f, a, b, &[], spec),
        Interval::SemiInfinite(a) => {
            let mut width = a.abs().max(1.0);
            let mut lo = a;
            let mut total = Estimate::zero();
            let mut quiet = 0;
            for panel in 0..MAX_PANELS {
                let hi = lo + width;
                let part = integrate_on(&f, lo, hi, &[], spec)?;
                total += part;
                let small = part.value.abs() <= spec.tail_threshold * total.value.abs()
                    || (total.value == 0.0 && part.value == 0.0 && panel >= 8);
                quiet = if small { quiet + 1 } else { 0 };
                if quiet >= 2 && panel >= 3 {
                    total.error += part.value.abs();
                    return Ok(total);
                }
                lo = hi;
                width *= 2.0;
            }
            Err(Error::Convergence { estimate: total.value, error: total.error.max(total.value.abs()) })
        }
    }
}

/// Integral of `f` over `interval` within the tolerances of `spec`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, interval: Interval, spec: &QuadratureSpec) -> Result<f64> {
    integrate_estimate(f, interval, spec).map(|e| e.value)
}

/// Controls for [`integrate_periodized_weight_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicWeightHints {
    /// The truncation test is not applied before this abscissa.
    pub active_from: f64,
    /// Integrand vanishes beyond this point.
    pub upper: Option<f64>,
    /// Interior points where the integrand is not smooth.
    pub breakpoints: Vec<f64>,
    pub max_periods: usize,
}

impl Default for PeriodicWeightHints {
    fn default() -> Self {
        PeriodicWeightHints { active_from: 0.0, upper: None, breakpoints: Vec::new(), max_periods: 100_000 }
    }
}

/// `int_0^inf g(x) B_p({x}) / p! dx`, summed one unit period at a time.
pub fn integrate_periodized_weight<G: Fn(f64) -> f64>(g: G, p: u32, spec: &QuadratureSpec) -> Result<f64> {
    integrate_periodized_weight_with(g, p, spec, &PeriodicWeightHints::default()).map(|e| e.value)
}

pub fn integrate_periodized_weight_with<G: Fn(f64) -> f64>(
    g: G,
    p: u32,
    spec: &QuadratureSpec,
    hints: &PeriodicWeightHints,
) -> Result<Estimate> {
    spec.validate()?;
    if p < 1 {
        return Err(Error::InvalidArgument("Bernoulli weight order must be at least 1".into()));
    }
    let norm = factorial(p);
    let mut total = Estimate::zero();
    let mut quiet = 0;
    let mut last = 0.0;
    for n in 0..hints.max_periods {
        let lo = n as f64;
        let mut hi = lo + 1.0;
        if let Some(u) = hints.upper {
            if lo >= u {
                return Ok(total);
            }
            hi = hi.min(u);
        }
        let weighted = |x: f64| g(x) * bernoulli_polynomial(p, x - lo) / norm;
        let part = integrate_on(weighted, lo, hi, &hints.breakpoints, spec)?;
        total += part;
        last = part.value;
        if hi >= hints.active_from {
            let small = part.value.abs() * (lo + 1.0) <= spec.tolerance_for(total.value);
            quiet = if small { quiet + 1 } else { 0 };
            if quiet >= 2 {
                return Ok(total);
            }
        }
    }
    Err(Error::SlowDecay { estimate: total.value, last_period: last })
}

/// `int_lower^inf g(k) sin(k r) dk` for slowly decaying `g`: the range is cut
/// at the zeros of the sine and the partial sums are accelerated with Wynn's
/// epsilon algorithm.
pub fn integrate_sine_transform<G: Fn(f64) -> f64>(
    g: G,
    r: f64,
    lower: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if r <= 0.0 {
        return Err(Error::InvalidArgument("sine transform needs r > 0".into()));
    }
    const MAX_HALF_PERIODS: usize = 20_000;
    const WINDOW: usize = 24;
    let half = std::f64::consts::PI / r;
    let integrand = |k: f64| g(k) * (k * r).sin();
    let mut edge = ((lower / half).floor() + 1.0) * half;
    let mut sum = integrate_on(integrand, lower, edge, &[], spec)?.value;
    let mut partial: Vec<f64> = Vec::new();
    let mut last_est = f64::NAN;
    let mut last_term = 0.0;
    let mut agree = 0;
    for _ in 0..MAX_HALF_PERIODS {
        let next = edge + half;
        let term = integrate_on(integrand, edge, next, &[], spec)?.value;
        sum += term;
        last_term = term;
        edge = next;
        partial.push(sum);
        if partial.len() > WINDOW {
            partial.remove(0);
        }
        if partial.len() >= 6 {
            let est = wynn_epsilon(&partial);
            if (est - last_est).abs() <= spec.tolerance_for(est) {
                agree += 1;
                if agree >= 3 {
                    return Ok(est);
                }
            } else {
                agree = 0;
            }
            last_est = est;
        }
        if term == 0.0 && partial.len() >= 3 && partial[partial.len() - 2] == sum {
            return Ok(sum);
        }
    }
    Err(Error::Oscillatory { estimate: last_est, last_term })
}
