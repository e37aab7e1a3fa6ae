// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use karno::minimize::{minimize_cover, prime_implicants};
use karno::{Form, Strategy, TruthTable, Value, VarOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_table(n: usize, seed: u64) -> TruthTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TruthTable::from_fn(VarOrder::letters(n).unwrap(), |_| match rng.gen_range(0..10) {
        0 => Value::DontCare,
        1..=4 => Value::One,
        _ => Value::Zero,
    })
    .unwrap()
}

fn primes(c: &mut Criterion) {
    let mut group = c.benchmark_group("prime_implicants");
    for n in [4, 6, 8, 10] {
        let t = random_table(n, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| prime_implicants(black_box(t)))
        });
    }
    group.finish();
}

fn covers(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize_sop");
    for n in [4, 6, 8] {
        let t = random_table(n, 100 + n as u64);
        for (name, strategy) in [("exact", Strategy::Exact), ("greedy", Strategy::Greedy)] {
            // exact cover at 8 variables takes about a second per run
            if strategy == Strategy::Exact && n > 6 {
                continue;
            }
            group.bench_with_input(BenchmarkId::new(name, n), &t, |b, t| {
                b.iter(|| minimize_cover(black_box(t), Form::Sop, strategy).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, primes, covers);
criterion_main!(benches);
