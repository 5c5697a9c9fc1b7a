use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use towerset::gentower::{
    is_generalized_towerizable, is_towerizable, PermutationScope, SearchCaps,
};
use towerset::hilbert_burch::{matrix_ideal, orient_and_sort, u_sets, verify_characterization};
use towerset::resolution::{betti_numbers, taylor_pd_oracle};
use towerset::series::{brute_hilbert_function, hilbert_numerator};
use towerset::tower::{distinct_variable_families, sigma_hash, tower_scheme_ideal};
use towerset_bench::{bidiagonal, six_member_ideal, six_member_support, staircase, star_form};

fn resolutions(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolution");
    for r in [3, 5, 7] {
        let i = matrix_ideal(&star_form(r)).unwrap();
        g.bench_with_input(BenchmarkId::new("hochster", r), &i, |b, i| {
            b.iter(|| betti_numbers(black_box(i)))
        });
        g.bench_with_input(BenchmarkId::new("taylor", r), &i, |b, i| {
            b.iter(|| taylor_pd_oracle(black_box(i)))
        });
    }
    g.finish();
}

fn hilbert(c: &mut Criterion) {
    let t = staircase(4);
    let (fam, _) = distinct_variable_families(&t);
    let i = tower_scheme_ideal(&t, &fam).unwrap();
    c.bench_function("hilbert/numerator", |b| {
        b.iter(|| hilbert_numerator(black_box(&i)))
    });
    c.bench_function("hilbert/brute_degree_6", |b| {
        b.iter(|| brute_hilbert_function(black_box(&i), 6))
    });
}

fn towers(c: &mut Criterion) {
    let mut g = c.benchmark_group("sigma_hash");
    for k in [4, 8, 12] {
        let t = staircase(k);
        g.bench_with_input(BenchmarkId::from_parameter(k), &t, |b, t| {
            b.iter(|| sigma_hash(black_box(t)))
        });
    }
    g.finish();
}

fn searches(c: &mut Criterion) {
    let u = six_member_support();
    let caps = SearchCaps::default();
    c.bench_function("search/towerizable_exhausted", |b| {
        b.iter(|| is_towerizable(black_box(&u), caps, PermutationScope::Ambient))
    });
    c.bench_function("search/generalized", |b| {
        b.iter(|| is_generalized_towerizable(black_box(&u), caps, PermutationScope::Columns))
    });
}

fn hilbert_burch(c: &mut Criterion) {
    let mut g = c.benchmark_group("towerize");
    for r in [3, 6, 9] {
        let m = bidiagonal(r);
        g.bench_with_input(BenchmarkId::new("bidiagonal", r), &m, |b, m| {
            b.iter(|| orient_and_sort(m, &u_sets(m).unwrap()))
        });
    }
    g.finish();
    let i = six_member_ideal();
    c.bench_function("verify/six_member", |b| {
        b.iter(|| verify_characterization(black_box(&i), SearchCaps::default()))
    });
}

criterion_group!(
    benches,
    resolutions,
    hilbert,
    towers,
    searches,
    hilbert_burch
);
criterion_main!(benches);
