use criterion::{black_box, criterion_group, criterion_main, Criterion};
use scalecut::casimir::{
    exact_force_exponential, force, remainder_r4, rho_renormalized, CasimirConfig, Method,
};
use scalecut::numerics::QuadratureSpec;
use scalecut::wavelets::{cutoff, WaveletFamily};

fn energies(c: &mut Criterion) {
    let mut g = c.benchmark_group("energy");
    for f in [WaveletFamily::Hermitian(1), WaveletFamily::Exponential, WaveletFamily::Bump] {
        let config = CasimirConfig::new(3.0, 1.0);
        g.bench_function(format!("direct_sum/{}", f.name()), |b| {
            b.iter(|| rho_renormalized(black_box(&config), &f).unwrap())
        });
    }
    let spec = QuadratureSpec::default();
    g.bench_function("remainder_r4/nonanalytic", |b| {
        b.iter(|| remainder_r4(&WaveletFamily::NonAnalytic, black_box(3.0), 1.0, &spec).unwrap())
    });
    g.finish();
}

fn forces(c: &mut Criterion) {
    let mut g = c.benchmark_group("force");
    g.sample_size(20);
    g.bench_function("exact/exponential", |b| b.iter(|| exact_force_exponential(black_box(2.0), 1.0).unwrap()));
    for (name, method) in [("sum", Method::DirectSum), ("series", Method::EulerMaclaurinSeries)] {
        let config = CasimirConfig::new(5.0, 1.0).with_method(method);
        g.bench_function(format!("{name}/hermitian1"), |b| {
            b.iter(|| force(black_box(&config), &WaveletFamily::Hermitian(1)).unwrap())
        });
    }
    let config = CasimirConfig::new(3.0, 1.0).with_method(Method::Remainder);
    g.bench_function("remainder/nonanalytic", |b| {
        b.iter(|| force(black_box(&config), &WaveletFamily::NonAnalytic).unwrap())
    });
    g.finish();
}

fn cutoffs(c: &mut Criterion) {
    let mut g = c.benchmark_group("cutoff");
    for f in [WaveletFamily::Hermitian(3), WaveletFamily::Bump, WaveletFamily::NonAnalytic] {
        g.bench_function(f.name(), |b| b.iter(|| cutoff(&f, black_box(1.37))));
    }
    g.finish();
}

criterion_group!(benches, energies, forces, cutoffs);
criterion_main!(benches);
