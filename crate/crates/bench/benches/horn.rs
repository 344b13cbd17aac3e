use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use holotube::hornsat::{minimal_model, HornFormula};

/// Chain formula x0 -> x1 -> ... -> x{n-1} with a fact at the root:
/// propagation must walk the full chain.
fn chain(n: usize) -> HornFormula {
    let mut f = HornFormula::new();
    let atoms: Vec<_> = (0..n).map(|i| f.atom(&format!("x{i}"))).collect();
    f.add_fact(atoms[0]);
    for w in atoms.windows(2) {
        f.add_rule(&[w[0]], w[1]);
    }
    f
}

/// Layered formula: each atom needs two atoms of the previous layer.
fn layered(layers: usize, width: usize) -> HornFormula {
    let mut f = HornFormula::new();
    let mut prev: Vec<_> = (0..width).map(|i| f.atom(&format!("l0_{i}"))).collect();
    for a in &prev {
        f.add_fact(*a);
    }
    for l in 1..layers {
        let next: Vec<_> = (0..width).map(|i| f.atom(&format!("l{l}_{i}"))).collect();
        for (i, head) in next.iter().enumerate() {
            let a = prev[i];
            let b = prev[(i + 1) % width];
            f.add_rule(&[a, b], *head);
        }
        prev = next;
    }
    f
}

fn bench_minimal_model(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimal_model");
    for n in [1_000usize, 10_000, 100_000] {
        let f = chain(n);
        group.bench_with_input(BenchmarkId::new("chain", n), &f, |b, f| {
            b.iter(|| std::hint::black_box(minimal_model(f).unwrap().len()))
        });
    }
    let f = layered(100, 100);
    group.bench_with_input(BenchmarkId::new("layered", "100x100"), &f, |b, f| {
        b.iter(|| std::hint::black_box(minimal_model(f).unwrap().len()))
    });
    group.finish();
}

criterion_group!(benches, bench_minimal_model);
criterion_main!(benches);
