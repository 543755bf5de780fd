use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use scalecut::casimir::{
    force as casimir_force, rho_renormalized, BoundaryCondition, CasimirConfig, Method, Truncation,
};
use scalecut::numerics::QuadratureSpec;
use scalecut::verify;
use scalecut::wavelets::{cutoff, momentum_profile, position_profile, WaveletFamily};
use serde::Serialize;
use thiserror::Error;

use crate::args::{CutoffArgs, Format, OutputArgs, SweepArgs, Unit, VerifyArgs};
use crate::table::{render_csv, render_json, CurveTable, RunManifest};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} check(s) failed")]
    VerificationFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<scalecut::Error> for CliError {
    fn from(e: scalecut::Error) -> Self {
        use scalecut::Error as E;
        match e {
            E::InvalidArgument(_) | E::UnsupportedMethod { .. } | E::ProfileTable(_) | E::BernoulliRange(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

fn parse_family(spec: &str) -> Result<WaveletFamily> {
    Ok(spec.parse::<WaveletFamily>()?)
}

fn grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return usage("--steps must be at least 1");
    }
    if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
        return usage(format!("empty range [{lo}, {hi}]"));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect())
}

#[derive(Debug, Serialize)]
struct Diagnostic {
    x: f64,
    message: String,
}

/// Writes the table, plus a diagnostics sidecar when there is anything to report.
fn emit(manifest: &RunManifest, table: &CurveTable, out: &OutputArgs, diagnostics: &[Diagnostic]) -> Result<()> {
    let text = match out.format {
        Format::Csv => render_csv(manifest, table),
        Format::Json => render_json(manifest, table),
    };
    match &out.out {
        Some(path) => {
            fs::write(path, text)?;
            if !diagnostics.is_empty() {
                let doc = serde_json::json!({ "command": manifest.command, "dropped_or_flagged": diagnostics });
                fs::write(sidecar(path), serde_json::to_string_pretty(&doc).expect("diagnostics serialize") + "\n")?;
            }
        }
        None => {
            print!("{text}");
            for d in diagnostics {
                eprintln!("warning: x = {}: {}", d.x, d.message);
            }
        }
    }
    Ok(())
}

pub fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".diagnostics.json");
    path.with_file_name(name)
}

pub fn run_cutoff(args: &CutoffArgs) -> Result<()> {
    let family = parse_family(&args.wavelet)?;
    if !(args.kmax > 0.0) {
        return usage("--kmax must be positive");
    }
    let xs = grid(0.0, args.kmax, args.steps)?;
    let mut manifest = RunManifest::new("cutoff", &family.to_string());
    manifest.param("kmax", args.kmax).param("steps", args.steps).param("position", args.position);
    let spec = QuadratureSpec::default();
    manifest.tolerance("quadrature_abs", format!("{:e}", spec.abs_tol)).tolerance("quadrature_rel", format!("{:e}", spec.rel_tol));
    let (table, diagnostics) = if args.position {
        let mut t = CurveTable::new(&[("r", "A"), ("w_position", "A^-3/2")]);
        let mut diag = Vec::new();
        for r in xs {
            match position_profile(&family, r, &spec) {
                Ok(v) if v.is_finite() => t.push(vec![r, v]),
                Ok(v) => diag.push(Diagnostic { x: r, message: format!("non-finite value {v}") }),
                Err(e) => diag.push(Diagnostic { x: r, message: e.to_string() }),
            }
        }
        (t, diag)
    } else {
        let mut t = CurveTable::new(&[("k", "1/A"), ("f_tilde", "1"), ("w_tilde_momentum", "A^3/2")]);
        let mut diag = Vec::new();
        for k in xs {
            let (f, w) = (cutoff(&family, k), momentum_profile(&family, k));
            if f.is_finite() && w.is_finite() {
                t.push(vec![k, f, w]);
            } else {
                diag.push(Diagnostic { x: k, message: "non-finite cutoff value".into() });
            }
        }
        (t, diag)
    };
    if table.rows.is_empty() {
        return Err(CliError::Numeric("every grid point failed".into()));
    }
    emit(&manifest, &table, &args.output, &diagnostics)
}

struct Sweep {
    family: WaveletFamily,
    config: CasimirConfig,
    separations: Vec<f64>,
    manifest: RunManifest,
}

fn prepare(command: &str, args: &SweepArgs) -> Result<Sweep> {
    let family = parse_family(&args.wavelet)?;
    let bc: BoundaryCondition = args.bc.parse()?;
    let method: Method = args.method.parse()?;
    let truncation = match args.truncation.as_str() {
        "adaptive" => Truncation::Adaptive,
        n => match n.parse::<u64>() {
            Ok(n) if n >= 1 => Truncation::Fixed(n),
            _ => return usage(format!("--truncation expects a positive integer or `adaptive`, got `{n}`")),
        },
    };
    if method == Method::ExactClosedForm && family != WaveletFamily::Exponential {
        return usage(format!("--method exact is only available for the exponential family, not {family}"));
    }
    if !(args.a >= 0.0 && args.a.is_finite()) {
        return usage("--A must be >= 0");
    }
    if args.a == 0.0 && args.output.unit == Unit::Cutoff {
        return usage("--A 0 has no cutoff unit; pass --unit absolute");
    }
    if args.a == 0.0 && matches!(method, Method::DirectSum | Method::ExactClosedForm) {
        return usage("--A 0 requires --method series or remainder");
    }
    if !(args.smin > 0.0) {
        return usage("--smin must be positive");
    }
    let config = CasimirConfig::new(args.smin, args.a)
        .with_bc(bc)
        .with_method(method)
        .with_truncation(truncation)
        .with_series_order(args.order);
    config.validate()?;
    let separations = grid(args.smin, args.smax, args.steps)?;
    let mut manifest = RunManifest::new(command, &family.to_string());
    manifest
        .param("A", args.a)
        .param("smin", args.smin)
        .param("smax", args.smax)
        .param("steps", args.steps)
        .param("bc", bc)
        .param("method", method)
        .param("truncation", &args.truncation)
        .param("order", args.order)
        .param("unit", if args.output.unit == Unit::Cutoff { "cutoff" } else { "absolute" });
    let q = config.quadrature;
    manifest
        .tolerance("quadrature_abs", format!("{:e}", q.abs_tol))
        .tolerance("quadrature_rel", format!("{:e}", q.rel_tol))
        .tolerance("mode_sum_rel", "1e-12");
    Ok(Sweep { family, config, separations, manifest })
}

/// Evaluates `f` at each separation on a bounded pool; results keep grid order.
fn sweep<T, F>(separations: &[f64], workers: Option<usize>, f: F) -> Result<Vec<(f64, std::result::Result<T, String>)>>
where
    T: Send,
    F: Fn(f64) -> std::result::Result<T, String> + Sync,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return usage("--workers must be at least 1");
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Numeric(e.to_string()))?;
    Ok(pool.install(|| separations.par_iter().map(|&s| (s, f(s))).collect()))
}

fn length_scale(args: &SweepArgs) -> (f64, f64) {
    match args.output.unit {
        Unit::Cutoff => (1.0 / args.a, args.a.powi(4)),
        Unit::Absolute => (1.0, 1.0),
    }
}

fn unit_names(unit: Unit) -> (&'static str, &'static str) {
    match unit {
        Unit::Cutoff => ("A", "A^-4"),
        Unit::Absolute => ("length", "length^-4"),
    }
}

pub fn run_force(args: &SweepArgs) -> Result<()> {
    let Sweep { family, config, separations, manifest } = prepare("force", args)?;
    let results = sweep(&separations, args.workers, |s| {
        casimir_force(&config.at_separation(s), &family).map_err(|e| e.to_string())
    })?;
    let (len, dens) = length_scale(args);
    let (lu, du) = unit_names(args.output.unit);
    let flagged_column = config.method == Method::EulerMaclaurinSeries;
    let mut cols = vec![("s", lu), ("F", du), ("F_continuum", du), ("correction", du)];
    if flagged_column {
        cols.push(("asymptotic_warning", "1"));
    }
    let mut table = CurveTable::new(&cols);
    let mut diagnostics = Vec::new();
    for (s, r) in results {
        match r {
            Ok(p) if p.force.is_finite() => {
                let mut row = vec![s * len, p.force * dens, p.continuum * dens, p.correction * dens];
                if flagged_column {
                    row.push(if p.warnings.is_empty() { 0.0 } else { 1.0 });
                }
                for w in &p.warnings {
                    diagnostics.push(Diagnostic { x: s, message: format!("flagged: {w}") });
                }
                table.push(row);
            }
            Ok(p) => diagnostics.push(Diagnostic { x: s, message: format!("dropped: non-finite force {}", p.force) }),
            Err(e) => diagnostics.push(Diagnostic { x: s, message: format!("dropped: {e}") }),
        }
    }
    if table.rows.is_empty() {
        let first = diagnostics.first().map_or(String::new(), |d| d.message.clone());
        return Err(CliError::Numeric(format!("every separation failed; first: {first}")));
    }
    emit(&manifest, &table, &args.output, &diagnostics)
}

pub fn run_energy(args: &SweepArgs) -> Result<()> {
    let Sweep { family, config, separations, manifest } = prepare("energy", args)?;
    let results = sweep(&separations, args.workers, |s| {
        rho_renormalized(&config.at_separation(s), &family).map_err(|e| e.to_string())
    })?;
    let (len, dens) = length_scale(args);
    let (lu, du) = unit_names(args.output.unit);
    let mut table = CurveTable::new(&[("s", lu), ("rho0", du), ("bulk", du), ("rho", du)]);
    let mut diagnostics = Vec::new();
    for (s, r) in results {
        match r {
            Ok(e) if e.rho.is_finite() && e.rho0.is_finite() => {
                for w in &e.warnings {
                    diagnostics.push(Diagnostic { x: s, message: format!("flagged: {w}") });
                }
                table.push(vec![s * len, e.rho0 * dens, e.bulk * dens, e.rho * dens]);
            }
            Ok(_) => diagnostics.push(Diagnostic { x: s, message: "dropped: non-finite energy".into() }),
            Err(e) => diagnostics.push(Diagnostic { x: s, message: format!("dropped: {e}") }),
        }
    }
    if table.rows.is_empty() {
        let first = diagnostics.first().map_or(String::new(), |d| d.message.clone());
        return Err(CliError::Numeric(format!("every separation failed; first: {first}")));
    }
    emit(&manifest, &table, &args.output, &diagnostics)
}

pub fn run_verify(args: &VerifyArgs) -> Result<()> {
    if args.list {
        for c in verify::criteria() {
            println!("{:<26} {}", c.name, c.summary);
        }
        return Ok(());
    }
    let selected: Vec<&verify::Criterion> = match &args.only {
        Some(name) => match verify::find(name) {
            Some(c) => vec![c],
            None => return usage(format!("unknown check `{name}`; see --list")),
        },
        None => verify::criteria().iter().collect(),
    };
    let outcomes: Vec<verify::Outcome> = selected.par_iter().map(|c| c.run()).collect();
    println!("{:<3} {:<26} {:<6} {:<24} {}", "#", "criterion", "status", "tolerance", "observed / expected");
    for (c, o) in selected.iter().zip(&outcomes) {
        println!(
            "{:<3} {:<26} {:<6} {:<24} {} / {}",
            c.id,
            o.name,
            if o.pass { "PASS" } else { "FAIL" },
            o.tolerance,
            o.observed,
            o.expected
        );
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("{} of {} passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        return Err(CliError::VerificationFailed(failed));
    }
    Ok(())
}
