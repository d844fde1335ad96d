use criterion::{black_box, criterion_group, criterion_main, Criterion};

use newtonps::{
    ambient_series, compute_diagram, poincare_coefficient, quotient_dim_a, BoxBounds, Method,
    MethodA, MultiIndex, QuotientSpec,
};
use newtonps_bench::{plane_curve, surface_five_facets, surface_four_facets};

fn bench_diagram(c: &mut Criterion) {
    let (_, germ) = surface_five_facets();
    let support = germ.support();
    c.bench_function("diagram/five_facet_surface", |b| {
        b.iter(|| compute_diagram(black_box(&support)).unwrap())
    });
}

fn bench_coefficient(c: &mut Criterion) {
    let (profile, germ) = surface_four_facets();
    let v = MultiIndex::new(vec![4, 5, 5, 5]);
    c.bench_function("coefficient_b/four_facet_surface_at_uf", |b| {
        b.iter(|| {
            poincare_coefficient(black_box(&profile), &germ, &v, Method::B, None).unwrap()
        })
    });

    let (profile, germ) = surface_five_facets();
    let v = MultiIndex::new(vec![14, 40, 40, 80, 80]);
    c.bench_function("coefficient_b/five_facet_surface_at_uf", |b| {
        b.iter(|| {
            poincare_coefficient(black_box(&profile), &germ, &v, Method::B, None).unwrap()
        })
    });
}

fn bench_method_a(c: &mut Criterion) {
    let (profile, germ) = plane_curve();
    let spec = QuotientSpec::new(MultiIndex::new(vec![10, 10]), MultiIndex::new(vec![11, 11]))
        .unwrap();
    let n = MethodA::n_safe(&germ, spec.upper());
    c.bench_function("quotient_dim_a/plane_curve_at_uf", |b| {
        b.iter(|| quotient_dim_a(black_box(&profile), &germ, &spec, n).unwrap())
    });
}

fn bench_series(c: &mut Criterion) {
    let (profile, _) = plane_curve();
    let bounds = BoxBounds::cube(2, 20);
    c.bench_function("ambient_series/plane_curve_box20", |b| {
        b.iter(|| ambient_series(black_box(&profile), &bounds).unwrap())
    });
}

criterion_group!(benches, bench_diagram, bench_coefficient, bench_method_a, bench_series);
criterion_main!(benches);
