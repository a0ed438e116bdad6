use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use scrollex::corpus::{random_graph, rng};
use scrollex::fixtures::{glued, spiral_untwisted};
use scrollex::{
    betti_table, buchberger_is_groebner, chordless_cycles, exact_p2, generators, Analysis, CycleSearch, FieldSpec,
    DEFAULT_CYCLE_CAP,
};

fn betti_sweep(c: &mut Criterion) {
    let g = random_graph(&mut rng(1), 12, 0.4);
    c.bench_function("betti_sweep_12", |b| b.iter(|| betti_table(black_box(&g), FieldSpec::Rationals).unwrap()));
    c.bench_function("betti_sweep_12_gf2", |b| {
        b.iter(|| betti_table(black_box(&g), FieldSpec::prime(2).unwrap()).unwrap())
    });
}

fn cycles(c: &mut Criterion) {
    let g = random_graph(&mut rng(2), 16, 0.25);
    c.bench_function("chordless_cycles_16", |b| {
        b.iter(|| chordless_cycles(black_box(&g), CycleSearch::default()).unwrap())
    });
}

fn groebner(c: &mut Criterion) {
    let ext = spiral_untwisted();
    let gens = generators(&ext);
    let vo = Analysis::new(&ext, DEFAULT_CYCLE_CAP).unwrap().var_order().unwrap();
    c.bench_function("buchberger_spiral", |b| b.iter(|| buchberger_is_groebner(black_box(&gens), &vo).unwrap()));
}

fn p2(c: &mut Criterion) {
    let ext = glued();
    c.bench_function("exact_p2_glued", |b| b.iter(|| exact_p2(black_box(&ext)).unwrap()));
}

criterion_group!(kernels, betti_sweep, cycles, groebner, p2);
criterion_main!(kernels);
