use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use bombprize::classical::{adversarial_bomb_search, blahut_arimoto, enumerate_theorem2, BitChannel, ClassicalChannel};
use bombprize::game::{dense_coding_protocol, eval_quantum_protocol};
use bombprize::numkit::{hermitian_eigen, random};
use bombprize::qchannel::{ce_numerical, unot};
use bombprize::simkit::{theorem5_pairs, theorem5_triples};

fn linear_algebra(c: &mut Criterion) {
    let mut rng = random::stream(1, 0);
    let rho = random::random_density(4, &mut rng);
    c.bench_function("hermitian_eigen 4x4", |b| {
        b.iter(|| hermitian_eigen(black_box(&rho)).unwrap())
    });
    let spec = dense_coding_protocol(&unot());
    c.bench_function("dense coding evaluation", |b| {
        b.iter(|| eval_quantum_protocol(black_box(&spec)).unwrap())
    });
}

fn capacities(c: &mut Criterion) {
    let ch = unot();
    c.bench_function("ce_numerical unot", |b| b.iter(|| ce_numerical(black_box(&ch))));
    let t = 1.0 / 3.0;
    let not4 = ClassicalChannel::new(
        (0..4)
            .map(|y| (0..4).map(|x| if x == y { 0.0 } else { t }).collect())
            .collect(),
    )
    .unwrap();
    c.bench_function("blahut_arimoto classical NOT", |b| {
        b.iter(|| blahut_arimoto(black_box(&not4)).unwrap())
    });
}

fn searches(c: &mut Criterion) {
    let mut g = c.benchmark_group("searches");
    g.sample_size(10);
    let bsc = BitChannel::bsc(0.1).unwrap();
    g.bench_function("adversarial bomb search, 4 restarts", |b| {
        b.iter(|| adversarial_bomb_search(&bsc, 4, 1))
    });
    g.bench_function("theorem2 d=2", |b| b.iter(|| enumerate_theorem2(2, 100, 1).unwrap()));
    g.bench_function("theorem5 pairs", |b| b.iter(|| theorem5_pairs().unwrap()));
    g.bench_function("theorem5 triples", |b| b.iter(|| theorem5_triples().unwrap()));
    g.finish();
}

criterion_group!(benches, linear_algebra, capacities, searches);
criterion_main!(benches);
