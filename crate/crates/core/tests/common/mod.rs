#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtau::nt::fibonacci;
use rtau::sample::{random_member, random_nonzero_member, SampleBounds};
use rtau::{RingContext, RingElement, TauSpec, ZPoly};

/// The five reference choices of `tau`, with labels.
pub fn reference_taus() -> Vec<(&'static str, TauSpec)> {
    vec![
        ("constant(0)", TauSpec::constant(0)),
        ("constant(1)", TauSpec::constant(1)),
        ("constant(5)", TauSpec::constant(5)),
        ("stream(42)", TauSpec::stream(42)),
        ("log_generic(7)", TauSpec::log_generic(7)),
    ]
}

pub fn hensel_sqrt2() -> TauSpec {
    TauSpec::hensel(ZPoly::from_i64s(&[-2, 0, 1]), TauSpec::constant(1))
}

/// Degree at most 4, denominators at most 60.
pub const CORPUS_BOUNDS: SampleBounds = SampleBounds {
    max_degree: 4,
    max_den: 60,
    coeff: 20,
};

/// `count` member pairs `(q, r)` with `r != 0`, reproducible from `seed`.
pub fn member_pairs(ctx: &RingContext, seed: u64, count: usize) -> Vec<(RingElement, RingElement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = random_member(ctx, &mut rng, CORPUS_BOUNDS);
            let r = random_nonzero_member(ctx, &mut rng, CORPUS_BOUNDS);
            (q, r)
        })
        .collect()
}

/// A start near a pair of consecutive Fibonacci numbers, `a, b > 0`.
pub fn fibonacci_start<R: rand::Rng>(rng: &mut R) -> (i64, i64) {
    let m = rng.gen_range(3u32..25);
    let a = i64::try_from(fibonacci(m + 1)).unwrap() + rng.gen_range(0..50);
    let b = i64::try_from(fibonacci(m)).unwrap();
    (a, b)
}
