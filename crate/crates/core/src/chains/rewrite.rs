use serde::Serialize;

use super::DivisionChain;
use crate::error::{Error, Result};
use crate::polyring::RingElement;

/// The induction measure `(n_Q, k_Q)`, compared lexicographically, where
/// `n_Q = max{k - i + 1 : i > 1, q_i < 0}` (zero if no such `i`) and `k_Q = k`.
pub fn measure(c: &DivisionChain) -> (usize, usize) {
    let k = c.len();
    let n = (2..=k)
        .filter(|&i| c.q(i).is_negative())
        .map(|i| k - i + 1)
        .max()
        .unwrap_or(0);
    (n, k)
}

/// First `i >= 1` with `q_{i+1}` satisfying `pred`.
fn first_index(c: &DivisionChain, pred: impl Fn(&RingElement) -> bool) -> Option<usize> {
    (1..c.len()).find(|&i| pred(c.q(i + 1)))
}

/// T1: at the first `i` with `q_{i+1} < 0`, replace the tail by
/// `q_i - 1, 1, -(q_{i+1} + 1), -q_{i+2}, ..., -q_k`. Identity if no such `i`.
pub fn t1(c: &DivisionChain) -> DivisionChain {
    match first_index(c, RingElement::is_negative) {
        Some(i) => apply_t1(c, i),
        None => c.clone(),
    }
}

fn apply_t1(c: &DivisionChain, i: usize) -> DivisionChain {
    let one = RingElement::one();
    let k = c.len();
    let mut qs: Vec<RingElement> = c.quotients()[..i - 1].to_vec();
    qs.push(c.q(i) - &one);
    qs.push(one.clone());
    qs.push(-(c.q(i + 1) + &one));
    qs.extend((i + 2..=k).map(|j| -c.q(j)));
    let out =
        DivisionChain::from_quotients(c.a().clone(), c.b().clone(), qs).expect("same nonzero b");

    // the displayed remainders
    let mut expected: Vec<RingElement> = c.remainders()[..i - 1].to_vec();
    expected.push(c.r(i) + c.r(i - 1));
    expected.push(-c.r(i));
    let mut sign = true;
    for j in i + 1..=k {
        expected.push(if sign { c.r(j).clone() } else { -c.r(j) });
        sign = !sign;
    }
    debug_assert_eq!(out.remainders(), &expected[..]);
    out
}

/// T2: at the first `i` with `q_{i+1} = 0`, merge `q_i + q_{i+2}` and drop two
/// stages; a final zero quotient truncates the chain to length `i - 1`.
/// Identity if no such `i`.
pub fn t2(c: &DivisionChain) -> DivisionChain {
    match first_index(c, RingElement::is_zero) {
        Some(i) => apply_t2(c, i),
        None => c.clone(),
    }
}

fn apply_t2(c: &DivisionChain, i: usize) -> DivisionChain {
    let k = c.len();
    let qs = if i + 1 == k {
        c.quotients()[..i - 1].to_vec()
    } else {
        let mut qs = c.quotients()[..i - 1].to_vec();
        qs.push(c.q(i) + c.q(i + 2));
        qs.extend_from_slice(&c.quotients()[i + 2..]);
        qs
    };
    let out =
        DivisionChain::from_quotients(c.a().clone(), c.b().clone(), qs).expect("same nonzero b");
    debug_assert_eq!(out.last_remainder().abs(), c.last_remainder().abs());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", content = "index", rename_all = "lowercase")]
pub enum Rewrite {
    T1(usize),
    T2(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizeStep {
    #[serde(flatten)]
    pub rewrite: Rewrite,
    pub chain: DivisionChain,
    pub measure: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Normalization {
    pub input: DivisionChain,
    pub output: DivisionChain,
    pub steps: Vec<NormalizeStep>,
    /// `n_Q` of the input; the output length is at most `k + n_Q`.
    pub n_q: usize,
}

impl Normalization {
    /// Both length bounds: `l <= 2k - 1` and `l <= k + n_Q`.
    pub fn within_bounds(&self) -> bool {
        let (k, l) = (self.input.len(), self.output.len());
        l < 2 * k && l <= k + self.n_q
    }
}

/// Whether every quotient after the first is positive.
pub fn is_positive_after_first(c: &DivisionChain) -> bool {
    c.quotients().iter().skip(1).all(RingElement::is_positive)
}

/// Rewrites a chain from `a, b > 0` into one with `q_i > 0` for `i > 1` and
/// the same `|r_k|`, applying T2 whenever a zero quotient is present and T1
/// otherwise. `q_1` is never rewritten.
pub fn normalize_positive(c: &DivisionChain) -> Result<Normalization> {
    if !c.a().is_positive() || !c.b().is_positive() || c.is_empty() {
        return Err(Error::NonPositiveStart);
    }
    let target = c.last_remainder().abs();
    let start = measure(c);
    let mut cur = c.clone();
    let mut m = start;
    let mut steps = Vec::new();
    loop {
        let (rewrite, next) = if let Some(i) = first_index(&cur, RingElement::is_zero) {
            (Rewrite::T2(i), apply_t2(&cur, i))
        } else if let Some(i) = first_index(&cur, RingElement::is_negative) {
            (Rewrite::T1(i), apply_t1(&cur, i))
        } else {
            break;
        };
        let next_m = measure(&next);
        assert!(next_m < m, "measure did not decrease: {m:?} -> {next_m:?}");
        m = next_m;
        steps.push(NormalizeStep {
            rewrite,
            chain: next.clone(),
            measure: next_m,
        });
        cur = next;
    }
    assert_eq!(cur.last_remainder().abs(), target);
    Ok(Normalization {
        input: c.clone(),
        output: cur,
        steps,
        n_q: start.0,
    })
}
