use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use qdouble_bench::{element_from_word, words};
use qdouble_core::functionals::{self, named_generator, NamedGenerator};
use qdouble_core::qmatrix;
use qdouble_core::sigma::{self, Sign};
use qdouble_core::{braided, QzContext};

fn bench_normal_form(c: &mut Criterion) {
    let ctx = QzContext::new(3).unwrap();
    let ws = words(3, 5, 64);
    c.bench_function("normal form of degree-5 words, N=3", |b| {
        let mut i = 0;
        b.iter(|| {
            let w = &ws[i % ws.len()];
            i += 1;
            element_from_word(&ctx, w).unwrap()
        })
    });
}

fn bench_sigma(c: &mut Criterion) {
    let ctx = QzContext::new(3).unwrap();
    let left: Vec<_> = words(3, 2, 16)
        .iter()
        .map(|w| element_from_word(&ctx, w).unwrap())
        .collect();
    let right: Vec<_> = words(3, 3, 16)
        .iter()
        .map(|w| element_from_word(&ctx, w).unwrap())
        .collect();
    // warm the shared tables once so the benchmark measures steady state
    for a in &left {
        for b in &right {
            let _ = sigma::sigma_eval(&ctx, a, b, Sign::Plus).unwrap();
        }
    }
    c.bench_function("pairing of degree (2,3) elements, N=3", |b| {
        let mut i = 0;
        b.iter(|| {
            let a = &left[i % left.len()];
            let h = &right[(i / left.len()) % right.len()];
            i += 1;
            sigma::sigma_eval(&ctx, a, h, Sign::Plus).unwrap()
        })
    });
}

fn bench_functional_fold(c: &mut Criterion) {
    let ctx = QzContext::new(3).unwrap();
    let e1 = named_generator(&ctx, NamedGenerator::E(1)).unwrap();
    let f1 = named_generator(&ctx, NamedGenerator::F(1)).unwrap();
    let word = functionals::dual_mul(&e1, &f1).unwrap();
    let h = element_from_word(&ctx, &words(3, 4, 1)[0]).unwrap();
    // cold cache cost dominates the first call; measure the steady state
    let _ = functionals::eval(&ctx, &word, &h).unwrap();
    c.bench_function("functional word on a degree-4 element, N=3", |b| {
        b.iter(|| functionals::eval(&ctx, &word, &h).unwrap())
    });
}

fn bench_braided(c: &mut Criterion) {
    let ctx = QzContext::new(3).unwrap();
    let x = qdouble_core::qmatrix::QElement::generator(&ctx, 1, 2).unwrap();
    let y = qdouble_core::qmatrix::QElement::generator(&ctx, 2, 1).unwrap();
    let _ = braided::braided_mul(&ctx, &x, &y).unwrap();
    c.bench_function("braided product of generators, N=3", |b| {
        b.iter_batched(
            || (x.clone(), y.clone()),
            |(x, y)| braided::braided_mul(&ctx, &x, &y).unwrap(),
            BatchSize::SmallInput,
        )
    });
    let _ = braided::closed_comul(&ctx, &x).unwrap();
    c.bench_function("closed braided coproduct, N=3", |b| {
        b.iter(|| braided::closed_comul(&ctx, &x).unwrap())
    });
}

fn bench_detq(c: &mut Criterion) {
    c.bench_function("quantum determinant centrality, N=3", |b| {
        b.iter_batched(
            || QzContext::new(3).unwrap(),
            |ctx| {
                let d = qmatrix::detq(&ctx);
                let x = qdouble_core::qmatrix::QElement::generator(&ctx, 1, 3).unwrap();
                qmatrix::multiply(&ctx, &d, &x).unwrap()
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_normal_form,
    bench_sigma,
    bench_functional_fold,
    bench_braided,
    bench_detq
);
criterion_main!(benches);
