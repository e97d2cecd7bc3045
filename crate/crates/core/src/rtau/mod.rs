//! The ring `R_tau`: membership, division with remainder under the discrete
//! order, the pair norm, quasi-Euclidean chains and Bezout coefficients.

mod norm;

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chains::DivisionChain;
use crate::error::{Error, Result};
use crate::nt::{factorize, pow};
use crate::padic::{crt_combine, poly_eval_mod, TauSpec};
use crate::polyring::{RingElement, ZPoly};

pub use norm::{phi, NormTuple};

/// Safety valve for [`RingContext::qe_chain`]. Chains always terminate, so
/// hitting it means a bug.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// A failed membership condition: `h(tau_p) = residue != 0 mod p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonMembership {
    pub p: u64,
    pub k: u32,
    #[serde(with = "crate::json")]
    pub residue: BigInt,
}

impl From<NonMembership> for Error {
    fn from(w: NonMembership) -> Self {
        Error::NotMember {
            p: w.p,
            k: w.k,
            residue: w.residue,
        }
    }
}

/// Which case of the division lemma produced the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivBranch {
    /// `k = 0` and `lc(s~) < 0`: `(p~ - 1, s~ + r)`.
    Borrow,
    /// `((p' - k)/m, s~ + (k/m) r)`.
    Shift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Division {
    pub quotient: RingElement,
    pub remainder: RingElement,
    pub branch: DivBranch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bezout {
    pub g: RingElement,
    pub u: RingElement,
    pub v: RingElement,
}

/// A quasi-Euclidean chain together with the norm of every consecutive pair
/// `(r_{i-1}, r_i)`, from `(a, b)` down to `(r_{n-1}, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainTrace {
    pub a: RingElement,
    pub b: RingElement,
    pub quotients: Vec<RingElement>,
    pub remainders: Vec<RingElement>,
    pub phi: Vec<NormTuple>,
}

/// The ring `R_tau` for a fixed `tau`, with memoized membership verdicts.
pub struct RingContext {
    tau: TauSpec,
    memo: Mutex<HashMap<RingElement, Option<NonMembership>>>,
}

impl RingContext {
    pub fn new(tau: TauSpec) -> Self {
        RingContext {
            tau,
            memo: Mutex::default(),
        }
    }

    pub fn tau(&self) -> &TauSpec {
        &self.tau
    }

    /// The first prime `p | n` (ascending) at which `h/n` fails the membership
    /// condition, or `None` if `h/n` is in `R_tau`.
    pub fn membership_witness(&self, e: &RingElement) -> Option<NonMembership> {
        if e.den().is_one() {
            return None;
        }
        if let Some(v) = self.memo.lock().unwrap_or_else(|e| e.into_inner()).get(e) {
            return v.clone();
        }
        let verdict = factorize(e.den().magnitude())
            .into_iter()
            .find_map(|(p, k)| {
                let r = poly_eval_mod(e.num(), &self.tau, p, k);
                (!r.is_zero()).then_some(NonMembership {
                    p,
                    k,
                    residue: r.value,
                })
            });
        self.memo
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(e.clone(), verdict.clone());
        verdict
    }

    pub fn is_member(&self, e: &RingElement) -> bool {
        self.membership_witness(e).is_none()
    }

    pub fn check_member(&self, e: &RingElement) -> Result<()> {
        match self.membership_witness(e) {
            None => Ok(()),
            Some(w) => Err(w.into()),
        }
    }

    /// Validated constructor for `h/n`.
    pub fn make_element(&self, h: ZPoly, n: BigInt) -> Result<RingElement> {
        let e = RingElement::new(h, n)?;
        self.check_member(&e)?;
        Ok(e)
    }

    /// `(q div r, q mod r)`: `q = p*r + s` with `0 <= s < |r|` and both `p`,
    /// `s` in `R_tau`.
    pub fn divmod(&self, q: &RingElement, r: &RingElement) -> Result<(RingElement, RingElement)> {
        let d = self.divmod_traced(q, r)?;
        Ok((d.quotient, d.remainder))
    }

    pub fn divmod_traced(&self, q: &RingElement, r: &RingElement) -> Result<Division> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.check_member(q)?;
        self.check_member(r)?;
        let r_abs = r.abs();
        let mut d = if q.is_negative() {
            // -q = p0 |r| + s0  =>  q = (-p0 - 1) |r| + (|r| - s0)
            let inner = self.divmod_nonneg(&-q, &r_abs);
            if inner.remainder.is_zero() {
                Division {
                    quotient: -inner.quotient,
                    ..inner
                }
            } else {
                Division {
                    quotient: -(inner.quotient + RingElement::one()),
                    remainder: &r_abs - &inner.remainder,
                    branch: inner.branch,
                }
            }
        } else {
            self.divmod_nonneg(q, &r_abs)
        };
        if r.is_negative() {
            d.quotient = -d.quotient;
        }
        debug_assert!(self.is_member(&d.quotient) && self.is_member(&d.remainder));
        Ok(d)
    }

    fn divmod_nonneg(&self, q: &RingElement, r: &RingElement) -> Division {
        let (p_rat, s_rat) = RingElement::qdiv(q, r).expect("r is nonzero");
        let m = p_rat.den().clone();
        // k = p'(tau_p) mod p^{v_p(m)} for every p | m, so (p' - k)/m is a member
        let parts: Vec<(BigInt, BigInt)> = factorize(m.magnitude())
            .into_iter()
            .map(|(p, v)| (pow(p, v), poly_eval_mod(p_rat.num(), &self.tau, p, v).value))
            .collect();
        let (k, _) = crt_combine(&parts).expect("prime powers are coprime");
        if k.is_zero() && s_rat.is_negative() {
            Division {
                quotient: p_rat - RingElement::one(),
                remainder: s_rat + r,
                branch: DivBranch::Borrow,
            }
        } else {
            let shift = BigRational::new(k.clone(), m.clone());
            let quotient = RingElement::new(p_rat.num() - &ZPoly::constant(k), m)
                .expect("positive denominator");
            Division {
                quotient,
                remainder: s_rat + r.scale(&shift),
                branch: DivBranch::Shift,
            }
        }
    }

    /// The quasi-Euclidean chain from `(a, b)`: iterate `divmod` until the
    /// remainder vanishes.
    pub fn qe_chain(
        &self,
        a: &RingElement,
        b: &RingElement,
        max_steps: usize,
    ) -> Result<DivisionChain> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut quotients = Vec::new();
        let mut remainders = Vec::new();
        let (mut prev, mut cur) = (a.clone(), b.clone());
        while !cur.is_zero() {
            if quotients.len() >= max_steps {
                return Err(Error::StepBudgetExceeded(max_steps));
            }
            let (q, s) = self.divmod(&prev, &cur)?;
            quotients.push(q);
            remainders.push(s.clone());
            prev = cur;
            cur = s;
        }
        Ok(DivisionChain::from_parts(
            a.clone(),
            b.clone(),
            quotients,
            remainders,
        ))
    }

    pub fn qe_trace(
        &self,
        a: &RingElement,
        b: &RingElement,
        max_steps: usize,
    ) -> Result<ChainTrace> {
        let chain = self.qe_chain(a, b, max_steps)?;
        let phi = (0..=chain.len())
            .map(|i| {
                let prev = if i == 0 { chain.a() } else { chain.r(i - 1) };
                phi(prev, chain.r(i))
            })
            .collect();
        Ok(ChainTrace {
            a: a.clone(),
            b: b.clone(),
            quotients: chain.quotients().to_vec(),
            remainders: chain.remainders().to_vec(),
            phi,
        })
    }

    /// `g = u a + v b` with `g > 0` a gcd of `a` and `b` in `R_tau`, obtained by
    /// composing the elementary steps of the quasi-Euclidean chain.
    pub fn gcd_bezout(&self, a: &RingElement, b: &RingElement) -> Result<Bezout> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let one = RingElement::one;
        let zero = RingElement::zero;
        let (g, u, v) = if b.is_zero() {
            self.check_member(a)?;
            (a.clone(), one(), zero())
        } else {
            let chain = self.qe_chain(a, b, DEFAULT_MAX_STEPS)?;
            // rows (u, v) with r_{i-1} = u a + v b and r_i likewise
            let mut prev = (one(), zero());
            let mut cur = (zero(), one());
            for q in chain.quotients() {
                let next = (&prev.0 - &(q * &cur.0), &prev.1 - &(q * &cur.1));
                prev = std::mem::replace(&mut cur, next);
            }
            let n = chain.len();
            (chain.r(n - 1).clone(), prev.0, prev.1)
        };
        Ok(if g.is_negative() {
            Bezout {
                g: -g,
                u: -u,
                v: -v,
            }
        } else {
            Bezout { g, u, v }
        })
    }

    /// Whether `a | b` in `R_tau`.
    pub fn divides(&self, a: &RingElement, b: &RingElement) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match RingElement::exact_div(b, a)? {
            Some(quo) => self.is_member(&quo),
            None => false,
        })
    }
}

#[cfg(test)]
mod tests;
