use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt::{modulo, pow};
use crate::polyring::ZPoly;

/// An element of `Z/p^kZ`, the image of a p-adic integer under the
/// projection to precision `k`. Precision 0 is the trivial ring `{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueClass {
    pub prime: u64,
    pub precision: u32,
    #[serde(with = "crate::json")]
    pub value: BigInt,
}

impl ResidueClass {
    /// Reduces `value` into `[0, p^k)`.
    pub fn new(prime: u64, precision: u32, value: &BigInt) -> Self {
        let value = if precision == 0 {
            BigInt::zero()
        } else {
            modulo(value, &pow(prime, precision))
        };
        ResidueClass {
            prime,
            precision,
            value,
        }
    }

    pub fn modulus(&self) -> BigInt {
        pow(self.prime, self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The bonding map `Z/p^kZ -> Z/p^jZ` for `j <= k`.
    pub fn reduce(&self, j: u32) -> Result<Self> {
        if j > self.precision {
            return Err(Error::PrecisionTooHigh {
                from: self.precision,
                to: j,
            });
        }
        Ok(Self::new(self.prime, j, &self.value))
    }

    /// Base-`p` digits, least significant first, `precision` of them.
    pub fn digits(&self) -> Vec<u64> {
        let p = BigInt::from(self.prime);
        let mut v = self.value.clone();
        (0..self.precision)
            .map(|_| {
                let (q, r) = v.div_rem(&p);
                v = q;
                u64::try_from(r).expect("digit below p")
            })
            .collect()
    }

    /// Largest `j <= precision` with `p^j | value`.
    pub fn valuation(&self) -> u32 {
        if self.value.is_zero() {
            return self.precision;
        }
        let p = BigInt::from(self.prime);
        let mut v = self.value.clone();
        let mut j = 0;
        while (&v % &p).is_zero() {
            v /= &p;
            j += 1;
        }
        j
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.prime, self.precision)
    }
}

/// Lifts a simple root `root1` of `f` mod `p` to the unique root mod `p^k`
/// congruent to it.
pub fn hensel_lift(f: &ZPoly, p: u64, root1: &BigInt, k: u32) -> Result<ResidueClass> {
    let pb = BigInt::from(p);
    let r = modulo(root1, &pb);
    if !f.eval_mod(&r, &pb).is_zero() || f.derivative().eval_mod(&r, &pb).is_zero() {
        return Err(Error::NotSimpleRoot {
            p,
            root: root1.clone(),
        });
    }
    if k == 0 {
        return Ok(ResidueClass::new(p, 0, &r));
    }
    let df = f.derivative();
    let mut v = r;
    let mut prec = 1u32;
    // Newton steps double the precision
    while prec < k {
        prec = (prec * 2).min(k);
        let m = pow(p, prec);
        let inv = crate::nt::mod_inverse(&df.eval_mod(&v, &m), &m)
            .expect("derivative is a unit at a simple root");
        v = modulo(&(&v - f.eval_mod(&v, &m) * inv), &m);
    }
    Ok(ResidueClass::new(p, k, &v))
}

/// Chinese remainder combination of `(modulus, residue)` parts with pairwise
/// coprime moduli. Returns `(residue, product)` with residue in `[0, product)`.
pub fn crt_combine(parts: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut acc = BigInt::zero();
    let mut modulus = BigInt::one();
    for (m, r) in parts {
        if !m.is_positive() {
            return Err(Error::NonPositiveModulus);
        }
        let g = modulus.extended_gcd(m);
        if !g.gcd.is_one() {
            return Err(Error::NonCoprimeModuli(modulus.clone(), m.clone()));
        }
        // acc + modulus * t == r (mod m), with t = (r - acc) * modulus^-1
        let t = modulo(&((r - &acc) * g.x), m);
        acc += &modulus * t;
        modulus *= m;
        acc = modulo(&acc, &modulus);
    }
    Ok((acc, modulus))
}
