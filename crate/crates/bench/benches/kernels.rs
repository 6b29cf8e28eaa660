use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use latwidth_core::cases::{verify_case, CaseName};
use latwidth_core::catalog;
use latwidth_core::covering::covering_radius_bracket;
use latwidth_core::metrics::{difference_body, first_minimum, lattice_width, polar};
use latwidth_core::rational::frac;
use latwidth_core::search::{search, SearchSpec};

fn bench_widths(c: &mut Criterion) {
    let bodies = [
        ("width3-triangle", catalog::scaled_standard_triangle(3)),
        ("terminal-triangle", catalog::terminal_triangle()),
        ("extremal-hexagon", catalog::extremal_hexagon()),
        ("two-point-maximizer", catalog::two_point_maximizer()),
    ];
    let mut group = c.benchmark_group("lattice_width");
    for (name, p) in &bodies {
        group.bench_with_input(BenchmarkId::from_parameter(name), p, |b, p| {
            b.iter(|| lattice_width(p).unwrap())
        });
    }
    group.finish();
}

fn bench_duality(c: &mut Criterion) {
    let h = catalog::extremal_hexagon();
    c.bench_function("polar_difference_minimum", |b| {
        b.iter(|| first_minimum(&polar(&difference_body(&h)).unwrap()).unwrap())
    });
}

fn bench_covering(c: &mut Criterion) {
    let t = catalog::standard_triangle();
    c.bench_function("covering_radius_1_64", |b| {
        b.iter(|| covering_radius_bracket(&t, &frac(1, 64)).unwrap())
    });
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("triangles_r3", |b| {
        b.iter(|| search(&SearchSpec::triangles(3, 0, 1)).unwrap())
    });
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("term_grid16", |b| {
        b.iter(|| verify_case(CaseName::Term, 16, 20, 1e-6).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_widths,
    bench_duality,
    bench_covering,
    bench_search,
    bench_verify
);
criterion_main!(benches);
