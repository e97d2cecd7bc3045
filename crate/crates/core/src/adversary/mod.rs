//! Pairs `(a, b)` whose chains of length at most `k` cannot lower the degree
//! of `b`, built as `a = (c/d)(b - beta)` from a Fibonacci pair `(c, d)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chains::DivisionChain;
use crate::error::{Error, Result};
use crate::nt::{factorize_int, fibonacci, mod_inverse, modulo, pow, valuation};
use crate::padic::{crt_combine, poly_eval_mod};
use crate::polyring::RingElement;
use crate::rtau::{RingContext, DEFAULT_MAX_STEPS};

#[cfg(test)]
mod tests;

/// Length of the integer quasi-Euclidean chain from `(c, d)`.
fn euclid_len(c: &BigInt, d: &BigInt) -> usize {
    let (mut a, mut b) = (c.clone(), d.clone());
    let mut n = 0;
    while !b.is_zero() {
        let r = modulo(&a, &b);
        a = std::mem::replace(&mut b, r);
        n += 1;
    }
    n
}

/// Checks that no integer chain of length at most `k` from `(c, d)`
/// terminates, i.e. the quasi-Euclidean chain is longer than `2k`.
pub fn check_start_pair(c: &BigInt, d: &BigInt, k: usize) -> Result<()> {
    if !c.is_positive() || !d.is_positive() {
        return Err(Error::BadWitnessPair(format!("({c}, {d}) is not positive")));
    }
    let n = euclid_len(c, d);
    if n <= 2 * k {
        return Err(Error::BadWitnessPair(format!(
            "quasi-Euclidean chain from ({c}, {d}) has length {n}, need more than {}",
            2 * k
        )));
    }
    Ok(())
}

/// `(F_{m+1}, F_m)` for the least `m >= 2k + 2` passing [`check_start_pair`].
pub fn fib_pair_for(k: usize) -> (BigInt, BigInt) {
    assert!(k >= 1, "k must be positive");
    let mut m = 2 * k as u32 + 2;
    loop {
        let (c, d) = (fibonacci(m + 1), fibonacci(m));
        if check_start_pair(&c, &d, k).is_ok() {
            return (c, d);
        }
        m += 1;
    }
}

/// The unique `beta` in `[0, d)` with `(b - beta)/d` in `R_tau`.
pub fn integer_mod(ctx: &RingContext, b: &RingElement, d: &BigInt) -> Result<BigInt> {
    if !d.is_positive() {
        return Err(Error::NonPositiveModulus);
    }
    ctx.check_member(b)?;
    let n = b.den();
    let mut parts = Vec::new();
    for (p, e) in factorize_int(d) {
        let v = valuation(n, p);
        let pe = pow(p, e);
        let n_rest = n / pow(p, v);
        let t = poly_eval_mod(b.num(), ctx.tau(), p, v + e).value / pow(p, v);
        let inv = mod_inverse(&n_rest, &pe).expect("p does not divide n / p^v");
        parts.push((pe.clone(), modulo(&(t * inv), &pe)));
    }
    let (beta, _) = crt_combine(&parts)?;
    let shifted = (b - &RingElement::from(beta.clone())).div_int(d)?;
    assert!(ctx.is_member(&shifted), "(b - {beta})/{d} is not a member");
    Ok(beta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdversarialPair {
    pub k: usize,
    #[serde(with = "crate::json")]
    pub c: BigInt,
    #[serde(with = "crate::json")]
    pub d: BigInt,
    #[serde(with = "crate::json")]
    pub beta: BigInt,
    pub a: RingElement,
    pub b: RingElement,
}

/// `a = (c/d)(b - beta)` with `(c, d) = fib_pair_for(k)` and
/// `beta = integer_mod(b, d)`. For `b < 0` the pair is built for `-b` and
/// negated.
pub fn adversarial_pair(ctx: &RingContext, k: usize, b: &RingElement) -> Result<AdversarialPair> {
    if k == 0 {
        return Err(Error::BadWitnessPair("k must be positive".into()));
    }
    if b.degree() < 1 {
        return Err(Error::DegreeTooSmall);
    }
    ctx.check_member(b)?;
    let pos = b.abs();
    let (c, d) = fib_pair_for(k);
    let beta = integer_mod(ctx, &pos, &d)?;
    let scale = BigRational::new(c.clone(), d.clone());
    let mut a = (&pos - &RingElement::from(beta.clone())).scale(&scale);
    assert!(ctx.is_member(&a), "adversarial a = {a} is not a member");
    if b.is_negative() {
        a = -a;
    }
    Ok(AdversarialPair {
        k,
        c,
        d,
        beta,
        a,
        b: b.clone(),
    })
}

/// `lc(d r) / lc(b)`.
pub fn hat(d: &BigInt, b: &RingElement, r: &RingElement) -> Result<BigRational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(r.lc() * BigRational::from_integer(d.clone()) / b.lc())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdversaryReport {
    pub k: usize,
    pub b: RingElement,
    #[serde(with = "crate::json")]
    pub c: BigInt,
    #[serde(with = "crate::json")]
    pub d: BigInt,
    #[serde(with = "crate::json")]
    pub beta: BigInt,
    pub a: RingElement,
    /// `deg f_l` for `l = 1..=2k`, with `f_l = 0` past the end of the chain.
    pub degrees: Vec<isize>,
    /// `hat(f_l)` for `l = 0..=2k`, `f_0 = b`.
    #[serde(with = "crate::json::rational::vec")]
    pub hats: Vec<BigRational>,
    /// Whether the hats, with the chain's quotients, form a valid integer
    /// division chain from `(c, d)` over the degree-retaining prefix.
    pub hat_chain_valid: bool,
    pub verdict: bool,
}

/// Runs the quasi-Euclidean chain from `(a, b)` and checks
/// `deg f_l >= deg b` for `l <= 2k`, which bounds every chain of length
/// at most `k` from below.
pub fn degree_retention_check(
    ctx: &RingContext,
    pair: &AdversarialPair,
) -> Result<AdversaryReport> {
    let AdversarialPair {
        k,
        c,
        d,
        beta,
        a,
        b,
    } = pair.clone();
    let (a_pos, b_pos) = if b.is_negative() {
        (-&a, -&b)
    } else {
        (a.clone(), b.clone())
    };
    let qe = ctx.qe_chain(&a_pos, &b_pos, DEFAULT_MAX_STEPS)?;
    let f = |l: usize| {
        if l <= qe.len() {
            qe.r(l).clone()
        } else {
            RingElement::zero()
        }
    };
    let deg_b = b.degree();
    let degrees: Vec<isize> = (1..=2 * k).map(|l| f(l).degree()).collect();
    let verdict = degrees.iter().all(|&g| g >= deg_b);

    let hats = (0..=2 * k)
        .map(|l| hat(&d, &b_pos, &f(l)))
        .collect::<Result<Vec<_>>>()?;
    let hat_chain_valid = hat_projection_valid(&qe, &a_pos, &b_pos, &c, &d, k);
    Ok(AdversaryReport {
        k,
        b,
        c,
        d,
        beta,
        a,
        degrees,
        hats,
        hat_chain_valid,
        verdict,
    })
}

/// Over the prefix `l <= 2k` where `deg f_l = deg b`, the quotients are
/// integers and `hat(f_l)` are the remainders of the integer chain from
/// `(c, d)` with the same quotients.
fn hat_projection_valid(
    qe: &DivisionChain,
    a: &RingElement,
    b: &RingElement,
    c: &BigInt,
    d: &BigInt,
    k: usize,
) -> bool {
    let hat_int = |r: &RingElement| {
        hat(d, b, r)
            .ok()
            .filter(|h| h.is_integer())
            .map(|h| h.to_integer())
    };
    if hat_int(a).as_ref() != Some(c) || hat_int(b).as_ref() != Some(d) {
        return false;
    }
    let prefix = (1..=(2 * k).min(qe.len()))
        .take_while(|&l| qe.r(l).degree() == b.degree())
        .count();
    let mut quotients = Vec::with_capacity(prefix);
    let mut hats = Vec::with_capacity(prefix);
    for l in 1..=prefix {
        let (Some(q), Some(h)) = (qe.q(l).as_integer(), hat_int(qe.r(l))) else {
            return false;
        };
        quotients.push(RingElement::from(q));
        hats.push(RingElement::from(h));
    }
    match DivisionChain::from_quotients(c.clone().into(), d.clone().into(), quotients) {
        Ok(z) => z.remainders() == &hats[..],
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    pub j: usize,
    pub b: RingElement,
    pub a: RingElement,
    /// Index `l <= k` of the remainder taken as the next `b`.
    pub l: usize,
    pub next: RingElement,
    pub norm_b: Option<u64>,
    pub norm_next: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Descent {
    pub k: usize,
    pub steps: Vec<DescentStep>,
    /// First `j` at which the table fails to give `N(b_{j+1}) < N(b_j)`:
    /// either an element is missing or the norm does not drop.
    pub broken_at: Option<usize>,
}

/// The sequence `b_0 = x`, `b_{j+1} = r_l` with `l <= k` taken along the
/// quasi-Euclidean chain of the adversarial pair for `b_j`. With a norm
/// table, `r_l` is the remainder of least tabulated norm; otherwise `r_k`.
/// Degrees never drop, so any norm on a finite table eventually fails to
/// decrease along the sequence.
pub fn descent_demo(
    ctx: &RingContext,
    k: usize,
    steps: usize,
    norms: Option<&HashMap<RingElement, u64>>,
) -> Result<Descent> {
    let mut b = RingElement::x();
    let mut out = Vec::with_capacity(steps);
    let mut broken_at = None;
    let norm = |e: &RingElement| norms.and_then(|t| t.get(e).copied());
    for j in 0..steps {
        let pair = adversarial_pair(ctx, k, &b)?;
        let (a_pos, b_pos) = if b.is_negative() {
            (-&pair.a, -&b)
        } else {
            (pair.a.clone(), b.clone())
        };
        let qe = ctx.qe_chain(&a_pos, &b_pos, DEFAULT_MAX_STEPS)?;
        let upto = k.min(qe.len());
        let l = match norms {
            Some(_) => (1..=upto)
                .filter_map(|l| norm(qe.r(l)).map(|n| (n, l)))
                .min()
                .map_or(upto, |(_, l)| l),
            None => upto,
        };
        let mut next = qe.r(l).clone();
        if b.is_negative() {
            next = -next;
        }
        let (norm_b, norm_next) = (norm(&b), norm(&next));
        if norms.is_some() && broken_at.is_none() {
            let drops = matches!((norm_b, norm_next), (Some(x), Some(y)) if y < x);
            if !drops {
                broken_at = Some(j);
            }
        }
        out.push(DescentStep {
            j,
            b: b.clone(),
            a: pair.a,
            l,
            next: next.clone(),
            norm_b,
            norm_next,
        });
        if next.degree() < 1 {
            break;
        }
        b = next;
    }
    Ok(Descent {
        k,
        steps: out,
        broken_at,
    })
}
