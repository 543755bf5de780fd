//! Self-checks behind the `verify` command and the acceptance test target.
//!
//! Each check returns an [`Outcome`] with the expected and observed values
//! rendered as text; numeric failures inside a check are reported as a failed
//! outcome rather than propagated.

use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::casimir::{
    bulk_energy, exact_force_exponential, force, force_numeric, remainder_r4, rho0_direct, rho_renormalized, series_coefficients,
    series_terms, BoundaryCondition, CasimirConfig, Method, SeriesKind,
};
use crate::cwt::{
    admissibility_constant, cwt_forward_1d, isometry_inner_product, mexican_hat, NumericCutoff, ScaleGrid, Signal1d,
};
use crate::error::Result;
use crate::numerics::{differentiate, factorial, DiffSpec, QuadratureSpec};
use crate::wavelets::{
    cutoff, derivative_kernel_decay, derivatives_at_zero_exact, dyadic_orthonormality,
    radial_profile, WaveletFamily,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub expected: String,
    pub observed: String,
    pub tolerance: String,
    pub pass: bool,
    pub seconds: f64,
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub summary: &'static str,
    check: fn() -> Result<Check>,
}

struct Check {
    expected: String,
    observed: String,
    tolerance: String,
    pass: bool,
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let c = (self.check)().unwrap_or_else(|e| Check {
            expected: "numeric evaluation succeeds".into(),
            observed: format!("error: {e}"),
            tolerance: "-".into(),
            pass: false,
        });
        Outcome {
            name: self.name,
            expected: c.expected,
            observed: c.observed,
            tolerance: c.tolerance,
            pass: c.pass,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

impl std::fmt::Debug for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Criterion").field("id", &self.id).field("name", &self.name).finish()
    }
}

pub fn criteria() -> &'static [Criterion] {
    CRITERIA
}

pub fn find(name: &str) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.name == name)
}

static CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "exponential-oracle", summary: "numeric force matches the exponential closed form", check: exponential_oracle },
    Criterion { id: 2, name: "repulsion", summary: "force is repulsive near the cutoff", check: repulsion },
    Criterion { id: 3, name: "continuum-limits", summary: "rho s^4 reaches the continuum values", check: continuum_limits },
    Criterion { id: 4, name: "leading-coefficients", summary: "8 pi^2 a_2 as exact rationals", check: leading_coefficients },
    Criterion { id: 5, name: "hermitian-suppression", summary: "first non-zero Hermitian derivative at order 2n", check: hermitian_suppression },
    Criterion { id: 6, name: "cutoff-closed-forms", summary: "closed-form cutoffs equal the defining integral", check: cutoff_closed_forms },
    Criterion { id: 7, name: "bulk-energy", summary: "exponential bulk energy 3/(pi^2 A^4)", check: bulk_energy_check },
    Criterion { id: 8, name: "remainder-consistency", summary: "remainder route equals direct sums", check: remainder_consistency },
    Criterion { id: 9, name: "oscillatory-corrections", summary: "flat cutoffs give oscillating corrections", check: oscillatory_corrections },
    Criterion { id: 10, name: "dirichlet-correspondence", summary: "Dirichlet at s equals periodic at 2s", check: dirichlet_correspondence },
    Criterion { id: 11, name: "cwt-isometry", summary: "Mexican-hat Parseval identity", check: cwt_isometry },
    Criterion { id: 12, name: "bump-structure", summary: "dyadic orthogonality and kernel decay", check: bump_structure },
    Criterion { id: 13, name: "hermitian-ordering", summary: "higher n suppresses the correction at s = 3", check: hermitian_ordering },
];

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn exponential_oracle() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for &s in &[1.2, 1.5, 2.0, 5.0, 10.0] {
        let v = force_numeric(&CasimirConfig::new(s, 1.0), &WaveletFamily::Exponential, &DiffSpec::default())?;
        worst = worst.max(rel(v, exact_force_exponential(s, 1.0)?));
    }
    Ok(Check {
        expected: "closed-form force at s/A in {1.2, 1.5, 2, 5, 10}".into(),
        observed: format!("max rel err {worst:.2e}"),
        tolerance: "1e-5 rel".into(),
        pass: worst < 1e-5,
    })
}

fn repulsion() -> Result<Check> {
    let closed = exact_force_exponential(1.0, 1.0)?;
    let printed = 3.0 / (PI * PI) - PI * PI * ((2.0 * PI).cosh() + 2.0) / PI.sinh().powi(4);
    let numeric = force_numeric(&CasimirConfig::new(1.0, 1.0), &WaveletFamily::Exponential, &DiffSpec::default())?;
    let hermitian = force(&CasimirConfig::new(1.05, 1.0), &WaveletFamily::Hermitian(1))?.force;
    let pass = closed > 0.0
        && rel(closed, printed) < 1e-12
        && rel(closed, 0.154300) < 1e-5
        && rel(numeric, closed) < 1e-5
        && hermitian > 0.0;
    Ok(Check {
        expected: "F_exp(1,1) ~ +0.154300 > 0; numeric agrees; F_herm1(1.05) > 0".into(),
        observed: format!("F_exp {closed:.9}, numeric rel err {:.2e}, F_herm1 {hermitian:.4e}", rel(numeric, closed)),
        tolerance: "1e-5 rel; sign".into(),
        pass,
    })
}

fn continuum_limits() -> Result<Check> {
    let (s, a): (f64, f64) = (1000.0, 1.0);
    let f = WaveletFamily::Hermitian(3);
    let base = CasimirConfig::new(s, a).with_method(Method::Remainder);
    let p = rho_renormalized(&base, &f)?.rho * s.powi(4);
    let d = rho_renormalized(&base.with_bc(BoundaryCondition::Dirichlet), &f)?.rho * s.powi(4);
    let (ep, ed) = (rel(p, -PI * PI / 45.0), rel(d, -PI * PI / 720.0));
    Ok(Check {
        expected: "rho s^4 = -pi^2/45 (periodic), -pi^2/720 (Dirichlet)".into(),
        observed: format!("{p:.10} (rel {ep:.1e}), {d:.10} (rel {ed:.1e})"),
        tolerance: "1e-4 rel".into(),
        pass: ep < 1e-4 && ed < 1e-4,
    })
}

fn leading_coefficients() -> Result<Check> {
    let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let eight = rat(8, 1);
    let h = series_coefficients(&WaveletFamily::Hermitian(1), 2)?;
    let e = series_coefficients(&WaveletFamily::Exponential, 2)?;
    let h2 = h.a_exact(2).map(|a| a * &eight);
    let e2 = e.a_exact(2).map(|a| a * &eight);
    let pass = h2 == Some(rat(-2, 63)) && e2 == Some(rat(1, 63));
    let show = |r: Option<BigRational>| r.map_or("n/a".to_string(), |r| r.to_string());
    Ok(Check {
        expected: "8 a_2 = -2/63 (hermitian:n=1), 1/63 (exponential)".into(),
        observed: format!("{}, {}", show(h2), show(e2)),
        tolerance: "exact".into(),
        pass,
    })
}

fn hermitian_suppression() -> Result<Check> {
    let mut pass = true;
    let mut found = Vec::new();
    for n in 1..=4u32 {
        let f = WaveletFamily::Hermitian(n);
        let exact = derivatives_at_zero_exact(&f, 2 * n as usize)?;
        let first = (1..exact.len()).find(|&m| exact[m] != BigRational::from_integer(0.into()));
        let mut numeric_first = None;
        for m in 1..=2 * n {
            let d = differentiate(|k: f64| cutoff(&f, k.abs()), 0.0, &DiffSpec::order(m))?.value;
            let scale = factorial(m);
            if d.abs() > 1e-6 * scale {
                numeric_first = Some(m as usize);
                break;
            }
        }
        pass &= first == Some(2 * n as usize) && numeric_first == Some(2 * n as usize);
        found.push(format!("n={n}: {}/{}", first.unwrap_or(0), numeric_first.unwrap_or(0)));
    }
    Ok(Check {
        expected: "first non-zero derivative at 2n (taylor/numeric)".into(),
        observed: found.join(", "),
        tolerance: "1e-6 * m!".into(),
        pass,
    })
}

fn cutoff_closed_forms() -> Result<Check> {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for f in [WaveletFamily::Hermitian(1), WaveletFamily::Hermitian(2), WaveletFamily::Hermitian(3), WaveletFamily::Exponential] {
        let nc = NumericCutoff::new(radial_profile(&f), spec)?;
        for i in 0..=100 {
            let k = 0.05 * f64::from(i);
            worst = worst.max((nc.eval(k)? - cutoff(&f, k)).abs());
        }
    }
    Ok(Check {
        expected: "numeric cutoff = closed form on k in [0, 5]".into(),
        observed: format!("sup err {worst:.2e}"),
        tolerance: "1e-8 abs".into(),
        pass: worst < 1e-8,
    })
}

fn bulk_energy_check() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for &a in &[0.5, 1.0, 2.0] {
        worst = worst.max(rel(bulk_energy(&WaveletFamily::Exponential, a)?, 3.0 / (PI * PI * a.powi(4))));
    }
    Ok(Check {
        expected: "3/(pi^2 A^4) at A in {0.5, 1, 2}".into(),
        observed: format!("max rel err {worst:.2e}"),
        tolerance: "1e-8 rel".into(),
        pass: worst < 1e-8,
    })
}

fn remainder_consistency() -> Result<Check> {
    let (s, a): (f64, f64) = (3.0, 1.0);
    let f = WaveletFamily::NonAnalytic;
    let spec = QuadratureSpec::default();
    let r4 = remainder_r4(&f, s, a, &spec)?.value;
    let via_r4 = -PI * PI / (45.0 * s.powi(4)) + 2.0 / s * r4;
    let direct = rho_renormalized(&CasimirConfig::new(s, a), &f)?.rho;
    let base = CasimirConfig::new(s, a);
    let diff = DiffSpec::default().with_reach(0.5 * s);
    let fr = crate::casimir::force_via_remainder(&f, s, a, &spec, &diff)?;
    let fd = force_numeric(&base, &f, &diff)?;
    let (e1, e2) = (rel(via_r4, direct), rel(fr, fd));
    Ok(Check {
        expected: "rho: remainder = direct; F: remainder = numeric".into(),
        observed: format!("rho rel err {e1:.2e}, force rel err {e2:.2e}"),
        tolerance: "1e-6 rel (rho), 1e-5 rel (force)".into(),
        pass: e1 < 1e-6 && e2 < 1e-5,
    })
}

/// Force corrections `F + pi^2 / 15 s^4` over `[1.5, 6]`, evaluated in parallel.
pub fn correction_sweep(family: &WaveletFamily, points: usize) -> Result<Vec<(f64, f64)>> {
    let s: Vec<f64> = (0..points).map(|i| 1.5 + 4.5 * i as f64 / (points - 1) as f64).collect();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(points);
    let chunk = points.div_ceil(threads);
    let results: Vec<Result<Vec<(f64, f64)>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = s
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&s| {
                            let c = CasimirConfig::new(s, 1.0).with_method(Method::Remainder);
                            force(&c, family).map(|p| (s, p.correction))
                        })
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(points);
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

pub fn sign_changes(values: &[f64]) -> usize {
    let signs: Vec<bool> = values.iter().filter(|v| **v != 0.0).map(|v| *v > 0.0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn oscillatory_corrections() -> Result<Check> {
    let mut counts = Vec::new();
    for f in [WaveletFamily::Bump, WaveletFamily::NonAnalytic] {
        let sweep = correction_sweep(&f, 200)?;
        let values: Vec<f64> = sweep.iter().map(|p| p.1).collect();
        counts.push((f.to_string(), sign_changes(&values)));
    }
    Ok(Check {
        expected: ">= 2 sign changes on s in [1.5, 6] for bump and nonanalytic".into(),
        observed: counts.iter().map(|(f, n)| format!("{f}: {n}")).collect::<Vec<_>>().join(", "),
        tolerance: "sign".into(),
        pass: counts.iter().all(|(_, n)| *n >= 2),
    })
}

fn dirichlet_correspondence() -> Result<Check> {
    let mut rational = true;
    for f in [WaveletFamily::Hermitian(1), WaveletFamily::Hermitian(2), WaveletFamily::Exponential] {
        for kind in [SeriesKind::Energy, SeriesKind::Force] {
            let p = series_terms(&f, BoundaryCondition::Periodic, kind, 5)?;
            let d = series_terms(&f, BoundaryCondition::Dirichlet, kind, 5)?;
            for (tp, td) in p.iter().zip(&d) {
                let two = BigRational::from_integer(BigInt::from(2)).pow(tp.s_power as i32);
                let same_powers = (tp.pi_power, tp.a_power, tp.s_power) == (td.pi_power, td.a_power, td.s_power);
                rational &= same_powers && tp.exact.as_ref().map(|c| c / &two) == td.exact;
            }
        }
    }
    let mut worst: f64 = 0.0;
    for f in [WaveletFamily::Hermitian(1), WaveletFamily::Exponential, WaveletFamily::Bump] {
        for &s in &[1.2, 2.0, 3.5] {
            let d = rho0_direct(&CasimirConfig::new(s, 1.0).with_bc(BoundaryCondition::Dirichlet), &f)?;
            let p = rho0_direct(&CasimirConfig::new(2.0 * s, 1.0), &f)?;
            worst = worst.max(rel(d.rho0, p.rho0));
        }
    }
    Ok(Check {
        expected: "Dirichlet term m = periodic term m at 2s (m <= 5); rho0_D(s) = rho0_P(2s)".into(),
        observed: format!("rational identity {}, direct-sum rel err {worst:.2e}", if rational { "holds" } else { "broken" }),
        tolerance: "exact; 1e-8 rel".into(),
        pass: rational && worst < 1e-8,
    })
}

fn cwt_isometry() -> Result<Check> {
    let spec = QuadratureSpec::default();
    let w = mexican_hat();
    let c_w = admissibility_constant(w.momentum(), &spec)?.c_w;
    let phi = Signal1d::gaussian(0.0);
    let psi = Signal1d::gaussian(0.5);
    let exact = PI.sqrt() * (-1.0f64 / 16.0).exp();
    let mut grid = ScaleGrid::default_for((-9.0, 9.5));
    let mut errors = Vec::new();
    for _ in 0..3 {
        let a = cwt_forward_1d(&phi, &w, &grid, &spec)?;
        let b = cwt_forward_1d(&psi, &w, &grid, &spec)?;
        errors.push(rel(isometry_inner_product(&a, &b, &grid, c_w)?, exact));
        grid = grid.refined();
    }
    let pass = errors[0] < 1e-3 && errors[1] < errors[0] && errors[2] < errors[1];
    Ok(Check {
        expected: "<phi, psi> recovered; error falls under two refinements".into(),
        observed: format!("rel err {:.2e}, {:.2e}, {:.2e}", errors[0], errors[1], errors[2]),
        tolerance: "1e-3 rel; monotone".into(),
        pass,
    })
}

fn bump_structure() -> Result<Check> {
    let spec = QuadratureSpec::default();
    let f = WaveletFamily::Bump;
    let mut overlap: f64 = 0.0;
    for j in -2..=2 {
        for l in -2..=2i32 {
            if j == l {
                continue;
            }
            for &shift in &[0.0, 1.3, 3.7] {
                overlap = overlap.max(dyadic_orthonormality(&f, j, l, shift, &spec)?.abs());
            }
        }
    }
    let points = derivative_kernel_decay(&f, 1.0, 1.0, &[5.0, 10.0, 20.0], &spec)?;
    if let Some(e) = points.iter().find_map(|p| p.failure.clone()) {
        return Err(e);
    }
    let slope = |i: usize| (points[i + 1].envelope / points[i].envelope).ln() / (points[i + 1].r / points[i].r).ln();
    let (s1, s2) = (slope(0), slope(1));
    let pass = overlap < 1e-10 && s1 < -6.0 && s2 < -6.0 && s2 < s1;
    Ok(Check {
        expected: "cross-octave overlap 0; kernel slope < -6 and steepening on r = 5, 10, 20".into(),
        observed: format!("max overlap {overlap:.1e}; envelope slopes {s1:.2}, {s2:.2}"),
        tolerance: "1e-10 abs; slope".into(),
        pass,
    })
}

fn hermitian_ordering() -> Result<Check> {
    let (s, a): (f64, f64) = (3.0, 1.0);
    let continuum = -PI * PI / (15.0 * s.powi(4));
    let mut dev = Vec::new();
    for n in 1..=3 {
        let v = force_numeric(&CasimirConfig::new(s, a), &WaveletFamily::Hermitian(n), &DiffSpec::default())?;
        dev.push((v - continuum).abs());
    }
    let pass = dev.windows(2).all(|w| w[1] < w[0]);
    Ok(Check {
        expected: "|F_n - F_continuum| strictly decreasing in n = 1, 2, 3".into(),
        observed: format!("{:.5e}, {:.5e}, {:.5e}", dev[0], dev[1], dev[2]),
        tolerance: "ordering".into(),
        pass,
    })
}
