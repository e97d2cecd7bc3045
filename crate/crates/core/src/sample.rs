//! Random members of `R_tau`, for property tests, benchmarks and CLI demos.

use num_bigint::BigInt;
use rand::Rng;

use crate::nt::{factorize, pow};
use crate::padic::{crt_combine, poly_eval_mod};
use crate::polyring::{RingElement, ZPoly};
use crate::rtau::RingContext;

#[derive(Clone, Copy, Debug)]
pub struct SampleBounds {
    pub max_degree: usize,
    pub max_den: u64,
    pub coeff: i64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_degree: 4,
            max_den: 60,
            coeff: 20,
        }
    }
}

/// A random `(h - c)/n` where `c` is the integer making it a member: `c` is
/// congruent to `h(tau_p)` mod `p^{v_p(n)}` for every `p | n`.
pub fn random_member<R: Rng + ?Sized>(
    ctx: &RingContext,
    rng: &mut R,
    bounds: SampleBounds,
) -> RingElement {
    let deg = rng.gen_range(0..=bounds.max_degree);
    let coeffs: Vec<i64> = (0..=deg)
        .map(|_| rng.gen_range(-bounds.coeff..=bounds.coeff))
        .collect();
    let h = ZPoly::from_i64s(&coeffs);
    let n = rng.gen_range(1..=bounds.max_den);
    let parts: Vec<(BigInt, BigInt)> = factorize(&n.into())
        .into_iter()
        .map(|(p, v)| (pow(p, v), poly_eval_mod(&h, ctx.tau(), p, v).value))
        .collect();
    let (c, _) = crt_combine(&parts).expect("prime powers are coprime");
    RingElement::new(&h - &ZPoly::constant(c), n.into()).expect("positive denominator")
}

pub fn random_nonzero_member<R: Rng + ?Sized>(
    ctx: &RingContext,
    rng: &mut R,
    bounds: SampleBounds,
) -> RingElement {
    loop {
        let e = random_member(ctx, rng, bounds);
        if !e.is_zero() {
            return e;
        }
    }
}
