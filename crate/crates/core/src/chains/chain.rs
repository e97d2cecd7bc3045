use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::RingElement;
use crate::rtau::RingContext;

/// A k-stage division chain
///
/// ```text
/// a       = q_1 b       + r_1
/// b       = q_2 r_1     + r_2
/// ...
/// r_{k-2} = q_k r_{k-1} + r_k
/// ```
///
/// determined by its starting pair and quotients. Remainders are derived,
/// with `r_0 = b` (and `r_{-1} = a`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionChain {
    a: RingElement,
    b: RingElement,
    quotients: Vec<RingElement>,
    remainders: Vec<RingElement>,
}

impl DivisionChain {
    /// Builds a chain whose quotients are checked to be members of the ring.
    pub fn new(
        ctx: &RingContext,
        a: RingElement,
        b: RingElement,
        quotients: Vec<RingElement>,
    ) -> Result<Self> {
        for q in [&a, &b].into_iter().chain(&quotients) {
            ctx.check_member(q)?;
        }
        Self::from_quotients(a, b, quotients)
    }

    /// Builds a chain without membership checks.
    pub fn from_quotients(
        a: RingElement,
        b: RingElement,
        quotients: Vec<RingElement>,
    ) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let remainders = derive_remainders(&a, &b, &quotients);
        Ok(DivisionChain {
            a,
            b,
            quotients,
            remainders,
        })
    }

    pub fn from_integers(a: i64, b: i64, quotients: &[i64]) -> Result<Self> {
        Self::from_quotients(
            a.into(),
            b.into(),
            quotients.iter().map(|&q| q.into()).collect(),
        )
    }

    pub(crate) fn from_parts(
        a: RingElement,
        b: RingElement,
        quotients: Vec<RingElement>,
        remainders: Vec<RingElement>,
    ) -> Self {
        debug_assert_eq!(derive_remainders(&a, &b, &quotients), remainders);
        DivisionChain {
            a,
            b,
            quotients,
            remainders,
        }
    }

    pub fn a(&self) -> &RingElement {
        &self.a
    }

    pub fn b(&self) -> &RingElement {
        &self.b
    }

    pub fn quotients(&self) -> &[RingElement] {
        &self.quotients
    }

    pub fn remainders(&self) -> &[RingElement] {
        &self.remainders
    }

    /// Number of stages `k`.
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// `q_i` for `1 <= i <= k`.
    pub fn q(&self, i: usize) -> &RingElement {
        &self.quotients[i - 1]
    }

    /// `r_i` for `0 <= i <= k`.
    pub fn r(&self, i: usize) -> &RingElement {
        if i == 0 {
            &self.b
        } else {
            &self.remainders[i - 1]
        }
    }

    /// `r_k`, which is `b` for the empty chain.
    pub fn last_remainder(&self) -> &RingElement {
        self.r(self.len())
    }

    pub fn is_terminating(&self) -> bool {
        self.last_remainder().is_zero()
    }

    /// Recomputes the remainders from the start and quotients.
    pub fn is_consistent(&self) -> bool {
        !self.b.is_zero() && derive_remainders(&self.a, &self.b, &self.quotients) == self.remainders
    }
}

fn derive_remainders(
    a: &RingElement,
    b: &RingElement,
    quotients: &[RingElement],
) -> Vec<RingElement> {
    let mut prev = a.clone();
    let mut cur = b.clone();
    let mut out = Vec::with_capacity(quotients.len());
    for q in quotients {
        let next = &prev - &(q * &cur);
        out.push(next.clone());
        prev = cur;
        cur = next;
    }
    out
}

#[derive(Deserialize)]
struct ChainRepr {
    a: RingElement,
    b: RingElement,
    quotients: Vec<RingElement>,
}

impl<'de> Deserialize<'de> for DivisionChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ChainRepr::deserialize(d)?;
        DivisionChain::from_quotients(repr.a, repr.b, repr.quotients)
            .map_err(serde::de::Error::custom)
    }
}
