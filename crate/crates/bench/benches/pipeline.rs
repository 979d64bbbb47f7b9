use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ringspec::oracle::{chromatic_number, clique_number, max_independent_set, OracleOptions};
use ringspec::totalgraph::{closed_form_spectrum, regular_graph, total_graph};
use ringspec::{Budgets, Field, MatrixFq};

fn spectra(c: &mut Criterion) {
    let budgets = Budgets::default();
    c.bench_function("closed_form_spectrum T_5(7)", |b| {
        b.iter(|| closed_form_spectrum(black_box(5), black_box(7)).unwrap())
    });
    let t23 = total_graph(2, 3, &budgets).unwrap();
    let t24 = total_graph(2, 4, &budgets).unwrap();
    c.bench_function("character_spectrum T_2(4)", |b| {
        b.iter(|| t24.spectrum_via_characters(&budgets).unwrap())
    });
    c.bench_function("bruteforce_spectrum T_2(3)", |b| {
        b.iter(|| t23.spectrum_bruteforce(&budgets).unwrap())
    });
    c.bench_function("build T_2(4)", |b| b.iter(|| total_graph(2, 4, &budgets).unwrap()));
}

fn oracles(c: &mut Criterion) {
    let opts = OracleOptions::default();
    let g = regular_graph(2, 3, &Budgets::default()).unwrap().graph;
    c.bench_function("alpha Gamma_2(3)", |b| {
        b.iter(|| max_independent_set(&g, "Gamma_2(3)", &opts).unwrap())
    });
    c.bench_function("omega Gamma_2(3)", |b| {
        b.iter(|| clique_number(&g, "Gamma_2(3)", &opts).unwrap())
    });
    let mut group = c.benchmark_group("chromatic");
    group.sample_size(10);
    group.bench_function("chi Gamma_2(3)", |b| {
        b.iter(|| chromatic_number(&g, "Gamma_2(3)", &opts).unwrap())
    });
    group.finish();
}

fn determinant(c: &mut Criterion) {
    let f = Field::of_order(9).unwrap();
    let m = MatrixFq::from_index(&f, 6, 0x0123_4567_89ab_cdef);
    c.bench_function("det 6x6 over GF(9)", |b| b.iter(|| black_box(&m).det()));
    c.bench_function("rank 6x6 over GF(9)", |b| b.iter(|| black_box(&m).rank()));
}

criterion_group!(benches, spectra, oracles, determinant);
criterion_main!(benches);
