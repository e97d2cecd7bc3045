use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Signed;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::json::Int;
use crate::polyring::RingElement;

/// Value of the pair norm in `2 x N^4`, compared lexicographically in field
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormTuple {
    /// 1 iff `|q| <= |r|`.
    pub delta: u8,
    /// `deg q + 1`.
    pub deg_q: u64,
    pub deg_r: u64,
    /// Least common denominator of `q` and `r`.
    pub lcd: BigUint,
    /// `lcd * |lc(q)|`, always an integer.
    pub scaled_lc: BigUint,
}

impl NormTuple {
    pub fn is_zero(&self) -> bool {
        *self == NormTuple::default()
    }

    pub fn to_vec(&self) -> Vec<BigInt> {
        vec![
            self.delta.into(),
            self.deg_q.into(),
            self.deg_r.into(),
            self.lcd.clone().into(),
            self.scaled_lc.clone().into(),
        ]
    }
}

impl Serialize for NormTuple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(5))?;
        for c in self.to_vec() {
            seq.serialize_element(&Int(c))?;
        }
        seq.end()
    }
}

/// The pair norm `phi(q, r)`; all zeros when `r = 0`.
pub fn phi(q: &RingElement, r: &RingElement) -> NormTuple {
    if r.is_zero() {
        return NormTuple::default();
    }
    let (q, r) = (q.abs(), r.abs());
    let lcd = q.den().lcm(r.den());
    let scaled = &lcd / q.den() * q.num().lc().abs();
    NormTuple {
        delta: u8::from(q <= r),
        deg_q: (q.degree() + 1) as u64,
        deg_r: r.degree() as u64,
        lcd: lcd.magnitude().clone(),
        scaled_lc: scaled.magnitude().clone(),
    }
}
