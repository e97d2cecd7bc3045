//! Bounded evidence about whether `R_tau` is a PID: scans of
//! `S_h = {(p, k) : pi_k(h(tau_p)) = 0}` over a box of primes and
//! precisions, and descending divisibility chains witnessing non-UFD rings.
//!
//! A scan can refute PID-ness but never confirm it.

use std::thread;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nt::primes_up_to;
use crate::padic::{poly_eval_mod, PrimeSet, TauSpec};
use crate::polyring::{RingElement, ZPoly};
use crate::rtau::RingContext;


/// Per-prime result of a scan: `pi_k(h(tau_p)) = 0` exactly for `k <= depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShHit {
    pub p: u64,
    pub depth: u32,
    /// `depth = k_max`; the true depth may be larger.
    pub saturated: bool,
    /// For saturated primes, whether `h(tau_p) = 0` is known exactly
    /// (`None` when the kind of `tau` cannot decide it).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_root: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShScan {
    #[serde(with = "crate::json::vec")]
    pub h: Vec<BigInt>,
    pub p_max: u64,
    pub k_max: u32,
    /// Primes with `depth >= 1`, ascending.
    pub hits: Vec<ShHit>,
}

impl ShScan {
    /// All `(p, k)` in the box lying in `S_h`.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.hits
            .iter()
            .flat_map(|h| (1..=h.depth).map(move |k| (h.p, k)))
    }

    pub fn saturated(&self) -> impl Iterator<Item = &ShHit> {
        self.hits.iter().filter(|h| h.saturated)
    }

    /// Saturated primes where `h(tau_p) = 0` holds exactly.
    pub fn exact_roots(&self) -> impl Iterator<Item = u64> + '_ {
        self.saturated()
            .filter(|h| h.exact_root == Some(true))
            .map(|h| h.p)
    }
}

fn scan_prime(h: &ZPoly, tau: &TauSpec, p: u64, k_max: u32) -> Option<ShHit> {
    let v = poly_eval_mod(h, tau, p, k_max);
    let depth = if v.is_zero() { k_max } else { v.valuation() };
    if depth == 0 {
        return None;
    }
    let saturated = depth == k_max;
    let exact_root = if saturated {
        tau.vanishes_exactly(h, p)
    } else {
        None
    };
    Some(ShHit {
        p,
        depth,
        saturated,
        exact_root,
    })
}

/// Enumerates `S_h` within primes `p <= p_max` and precisions `k <= k_max`.
/// Primes are split across threads; the result is the sequential one.
pub fn scan_sh(ctx: &RingContext, h: &ZPoly, p_max: u64, k_max: u32) -> Result<ShScan> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let primes = primes_up_to(p_max);
    let tau = ctx.tau();
    let hits = if k_max == 0 {
        Vec::new()
    } else {
        let workers = thread::available_parallelism()
            .map_or(1, |n| n.get())
            .min(8);
        let chunk = primes.len().div_ceil(workers).max(64);
        thread::scope(|s| {
            let handles: Vec<_> = primes
                .chunks(chunk)
                .map(|ps| {
                    s.spawn(move || {
                        ps.iter()
                            .filter_map(|&p| scan_prime(h, tau, p, k_max))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|t| t.join().expect("scan worker"))
                .collect()
        })
    };
    Ok(ShScan {
        h: h.coeffs().to_vec(),
        p_max,
        k_max,
        hits,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStrategy {
    /// A prime power chain when an exact root is available, else distinct
    /// primes.
    #[default]
    Auto,
    PrimePower,
    DistinctPrimes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "primes")]
pub enum WitnessPrimes {
    /// `h/p, h/p^2, ..., h/p^depth`.
    PrimePower(u64),
    /// `h/p_1, h/(p_1 p_2), ...`.
    DistinctPrimes(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonUfdWitness {
    #[serde(with = "crate::json::vec")]
    pub h: Vec<BigInt>,
    pub primes: WitnessPrimes,
    /// `h/n_1, h/n_2, ...`, each strictly dividing the previous (and the
    /// first strictly dividing `h`).
    pub chain: Vec<RingElement>,
}

/// Whether each element strictly divides the one before it, starting
/// from `h`, and all are members.
pub fn verify_descending(
    ctx: &RingContext,
    h: &RingElement,
    chain: &[RingElement],
) -> Result<bool> {
    let mut prev = h;
    for e in chain {
        if !ctx.is_member(e) || !ctx.divides(e, prev)? || ctx.divides(prev, e)? {
            return Ok(false);
        }
        prev = e;
    }
    Ok(true)
}

/// Bounds for the scan behind [`non_ufd_witness`].
#[derive(Clone, Copy, Debug)]
pub struct WitnessBox {
    pub p_max: u64,
    pub k_max: u32,
}

impl Default for WitnessBox {
    fn default() -> Self {
        WitnessBox {
            p_max: 50,
            k_max: 8,
        }
    }
}

/// A descending divisibility chain of length `depth` built from `h`, or
/// `None` when the box gives no usable evidence. Prime powers are used only
/// at primes where `h(tau_p) = 0` is certified, never on a deep but
/// possibly coincidental zero.
pub fn non_ufd_witness(
    ctx: &RingContext,
    h: &ZPoly,
    depth: usize,
    strategy: WitnessStrategy,
    bounds: WitnessBox,
) -> Result<Option<NonUfdWitness>> {
    if depth < 2 {
        return Err(Error::DepthTooSmall);
    }
    let scan = scan_sh(ctx, h, bounds.p_max, bounds.k_max)?;
    let exact = scan.exact_roots().next();
    let hit_primes: Vec<u64> = scan.hits.iter().map(|h| h.p).collect();
    let primes = match strategy {
        WitnessStrategy::PrimePower => exact.map(WitnessPrimes::PrimePower),
        WitnessStrategy::DistinctPrimes => distinct(&hit_primes, depth),
        WitnessStrategy::Auto => exact
            .map(WitnessPrimes::PrimePower)
            .or_else(|| distinct(&hit_primes, depth)),
    };
    let Some(primes) = primes else {
        return Ok(None);
    };
    let dens: Vec<BigInt> = match &primes {
        WitnessPrimes::PrimePower(p) => (1..=depth)
            .map(|j| num_traits::pow(BigInt::from(*p), j))
            .collect(),
        WitnessPrimes::DistinctPrimes(ps) => ps
            .iter()
            .scan(BigInt::from(1), |acc, &p| {
                *acc *= p;
                Some(acc.clone())
            })
            .collect(),
    };
    let base = RingElement::from_poly(h.clone());
    let chain = dens
        .iter()
        .map(|n| base.div_int(n))
        .collect::<Result<Vec<_>>>()?;
    assert!(
        verify_descending(ctx, &base, &chain)?,
        "witness chain for {base} does not descend"
    );
    Ok(Some(NonUfdWitness {
        h: h.coeffs().to_vec(),
        primes,
        chain,
    }))
}

fn distinct(hit_primes: &[u64], depth: usize) -> Option<WitnessPrimes> {
    (hit_primes.len() >= depth).then(|| WitnessPrimes::DistinctPrimes(hit_primes[..depth].to_vec()))
}

/// `tau_p` with digit 0 equal to `floor(ln p)` and later digits from a
/// seeded stream. Few `h` vanish at it, which makes PID-like rings.
pub fn make_log_generic(seed: u64) -> TauSpec {
    TauSpec::log_generic(seed)
}

/// `tau_p = 0` for `p` in `primes` and `base` elsewhere; every prime in the
/// set makes `x/p^k` a member for all `k`.
pub fn make_zero_on(primes: PrimeSet, base: TauSpec) -> TauSpec {
    TauSpec::zero_on(primes, base)
}

/// `pi_1(tau_p)`, the first digit.
pub fn first_digit(tau: &TauSpec, p: u64) -> u64 {
    u64::try_from(tau.query(p, 1).value).expect("digit below p")
}
