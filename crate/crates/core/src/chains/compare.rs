use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::rewrite::is_positive_after_first;
use super::DivisionChain;
use crate::error::{Error, Result};
use crate::nt::fibonacci;
use crate::polyring::RingElement;
use crate::rtau::{RingContext, DEFAULT_MAX_STEPS};

/// One inequality `|r_l| >= f_j` between a chain and the quasi-Euclidean
/// chain from the same start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRecord {
    pub l: usize,
    pub r_abs: RingElement,
    /// Index `j` of the quasi-Euclidean remainder compared against.
    pub f_index: usize,
    pub bound: RingElement,
    pub satisfied: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainComparison {
    pub chain: DivisionChain,
    pub qe: DivisionChain,
    /// `|r_k| >= f_{k+1}`, present when `q_i > 0` for `i > 1` and `m >= k`.
    pub last_bound: Option<BoundRecord>,
    /// `|r_l| >= f_{2l}` for `1 <= l <= min(k, n/2)`.
    pub records: Vec<BoundRecord>,
    pub verdict: bool,
}

/// `f_j`, with `f_0 = b` and `f_j = 0` past the end of the chain.
fn f(qe: &DivisionChain, j: usize) -> RingElement {
    if j <= qe.len() {
        qe.r(j).clone()
    } else {
        RingElement::zero()
    }
}

fn record(c: &DivisionChain, qe: &DivisionChain, l: usize, j: usize) -> BoundRecord {
    let r_abs = c.r(l).abs();
    let bound = f(qe, j);
    let satisfied = r_abs >= bound;
    BoundRecord {
        l,
        r_abs,
        f_index: j,
        bound,
        satisfied,
    }
}

/// Compares the remainders of `c` with those of the quasi-Euclidean chain
/// from the same start `a, b > 0`.
pub fn compare_to_qe(ctx: &RingContext, c: &DivisionChain) -> Result<ChainComparison> {
    if !c.a().is_positive() || !c.b().is_positive() {
        return Err(Error::NonPositiveStart);
    }
    let qe = ctx.qe_chain(c.a(), c.b(), DEFAULT_MAX_STEPS)?;
    let (k, n) = (c.len(), qe.len());
    let last_bound =
        (is_positive_after_first(c) && n >= k && k > 0).then(|| record(c, &qe, k, k + 1));
    let records: Vec<BoundRecord> = (1..=k.min(n / 2))
        .map(|l| record(c, &qe, l, 2 * l))
        .collect();
    let verdict = records.iter().chain(&last_bound).all(|r| r.satisfied);
    Ok(ChainComparison {
        chain: c.clone(),
        qe,
        last_bound,
        records,
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FibonacciWitness {
    pub k: usize,
    pub chain: DivisionChain,
    pub qe: DivisionChain,
}

/// Consecutive Fibonacci numbers `(F_{2k+3}, F_{2k+2})` with a `k`-stage
/// chain meeting `|r_l| = f_{2l}` for every `l <= k`.
pub fn fibonacci_witness(k: usize) -> Result<FibonacciWitness> {
    if k == 0 {
        return Err(Error::BadWitnessPair("k must be positive".into()));
    }
    let m = 2 * k as u32 + 2;
    fibonacci_witness_from(&fibonacci(m + 1), &fibonacci(m), k)
}

/// The nearest-integer chain of length `k` from `(a, b)`, checked to meet
/// the lower bound with equality. The integer quasi-Euclidean chain from
/// `(a, b)` must be longer than `2k`.
pub fn fibonacci_witness_from(a: &BigInt, b: &BigInt, k: usize) -> Result<FibonacciWitness> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::NonPositiveStart);
    }
    let ctx = RingContext::new(crate::padic::TauSpec::zero());
    let (ae, be) = (RingElement::from(a.clone()), RingElement::from(b.clone()));
    let qe = ctx.qe_chain(&ae, &be, DEFAULT_MAX_STEPS)?;
    if qe.len() <= 2 * k {
        return Err(Error::BadWitnessPair(format!(
            "quasi-Euclidean chain from ({a}, {b}) has length {}, need more than {}",
            qe.len(),
            2 * k
        )));
    }
    let mut quotients = Vec::with_capacity(k);
    let (mut prev, mut cur) = (a.clone(), b.clone());
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        let q = nearest_quotient(&prev, &cur);
        let next = &prev - &q * &cur;
        quotients.push(RingElement::from(q));
        prev = std::mem::replace(&mut cur, next);
    }
    let chain = DivisionChain::from_quotients(ae, be, quotients)?;
    let tight = chain.len() == k && (1..=k).all(|l| chain.r(l).abs() == *qe.r(2 * l));
    if !tight {
        return Err(Error::BadWitnessPair(format!(
            "nearest-integer chain from ({a}, {b}) does not meet the bound with equality"
        )));
    }
    Ok(FibonacciWitness { k, chain, qe })
}

/// `round(p / c)`, ties toward negative infinity.
fn nearest_quotient(p: &BigInt, c: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (num, den) = if c.is_negative() {
        (-p, -c)
    } else {
        (p.clone(), c.clone())
    };
    let twice: BigInt = &num * &two + &den - 1;
    twice.div_floor(&(&den * &two))
}
