use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtau::classify::scan_sh;
use rtau::rtau::DEFAULT_MAX_STEPS;
use rtau::sample::{random_member, random_nonzero_member, SampleBounds};
use rtau::{RingContext, RingElement, TauSpec, ZPoly};

fn taus() -> Vec<(&'static str, TauSpec)> {
    vec![
        ("constant(0)", TauSpec::constant(0)),
        ("stream(42)", TauSpec::stream(42)),
        ("log_generic(7)", TauSpec::log_generic(7)),
    ]
}

fn pairs(ctx: &RingContext, n: usize) -> Vec<(RingElement, RingElement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let bounds = SampleBounds::default();
    (0..n)
        .map(|_| {
            (
                random_member(ctx, &mut rng, bounds),
                random_nonzero_member(ctx, &mut rng, bounds),
            )
        })
        .collect()
}

fn divmod(c: &mut Criterion) {
    let mut g = c.benchmark_group("divmod");
    for (name, tau) in taus() {
        let ctx = RingContext::new(tau);
        let ps = pairs(&ctx, 64);
        g.bench_function(name, |b| {
            b.iter(|| {
                for (q, r) in &ps {
                    black_box(ctx.divmod(q, r).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn qe_chain(c: &mut Criterion) {
    let mut g = c.benchmark_group("qe_chain");
    g.sample_size(20);
    for (name, tau) in taus() {
        let ctx = RingContext::new(tau);
        let ps = pairs(&ctx, 16);
        g.bench_function(name, |b| {
            b.iter(|| {
                for (q, r) in &ps {
                    black_box(ctx.qe_chain(q, r, DEFAULT_MAX_STEPS).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan");
    g.sample_size(20);
    let h = ZPoly::from_i64s(&[-2, 0, 1]);
    for (name, p_max) in [("hensel p<=50", 50), ("hensel p<=2000", 2000)] {
        // clones share the digit memo, so build a fresh spec per batch
        g.bench_function(name, |b| {
            b.iter_batched(
                || RingContext::new(TauSpec::hensel(h.clone(), TauSpec::constant(1))),
                |ctx| black_box(scan_sh(&ctx, &h, p_max, 8).unwrap()),
                BatchSize::SmallInput,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, divmod, qe_chain, scan);
criterion_main!(benches);
