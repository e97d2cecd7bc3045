use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::nt::modulo;

/// Polynomial with integer coefficients, stored little-endian (constant term
/// first) with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `c * x^e`.
    pub fn monomial(c: impl Into<BigInt>, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.push(c.into());
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `deg 0 = -1`.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Non-negative gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact(&self, c: &BigInt) -> Self {
        debug_assert!(self.coeffs.iter().all(|a| (a % c).is_zero()));
        Self::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Horner evaluation reduced mod `m` at every step; result in `[0, m)`.
    pub fn eval_mod(&self, t: &BigInt, m: &BigInt) -> BigInt {
        if m.is_one() {
            return BigInt::zero();
        }
        let t = modulo(t, m);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| modulo(&(acc * &t + c), m))
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Writes terms from highest degree down, e.g. `3*x^2 - x + 5`.
pub(crate) fn write_terms<C, F>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, C)>,
    abs_is_one: impl Fn(&C) -> bool,
    is_negative: impl Fn(&C) -> bool,
    write_abs: F,
) -> fmt::Result
where
    F: Fn(&mut fmt::Formatter<'_>, &C) -> fmt::Result,
{
    let mut first = true;
    for (e, c) in terms {
        let neg = is_negative(&c);
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let unit = abs_is_one(&c);
        match (e, unit) {
            (0, _) => write_abs(f, &c)?,
            (_, true) => {}
            (_, false) => {
                write_abs(f, &c)?;
                write!(f, "*")?;
            }
        }
        match e {
            0 => {}
            1 => write!(f, "x")?,
            _ => write!(f, "x^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero());
        write_terms(
            f,
            terms,
            |c| c.abs().is_one(),
            |c| c.is_negative(),
            |f, c| write!(f, "{}", c.abs()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_degrees() {
        let p = ZPoly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(ZPoly::zero().degree(), -1);
        assert_eq!(ZPoly::zero().lc(), BigInt::zero());
    }

    #[test]
    fn display() {
        assert_eq!(ZPoly::from_i64s(&[5, -1, 3]).to_string(), "3*x^2 - x + 5");
        assert_eq!(ZPoly::from_i64s(&[0, -1]).to_string(), "-x");
        assert_eq!(ZPoly::zero().to_string(), "0");
        assert_eq!(ZPoly::from_i64s(&[-7]).to_string(), "-7");
    }

    #[test]
    fn content_and_arith() {
        let p = ZPoly::from_i64s(&[4, -6, 8]);
        assert_eq!(p.content(), BigInt::from(2));
        let q = ZPoly::from_i64s(&[1, 1]);
        let r = ZPoly::from_i64s(&[-1, 1]);
        assert_eq!(&q * &r, ZPoly::from_i64s(&[-1, 0, 1]));
        assert_eq!(&(&q + &r) - &q, r);
        assert_eq!(
            ZPoly::from_i64s(&[0, 0, 3]).derivative(),
            ZPoly::from_i64s(&[0, 6])
        );
    }

    #[test]
    fn eval_mod_is_reduced() {
        let p = ZPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(
            p.eval_mod(&BigInt::from(10), &BigInt::from(49)),
            BigInt::zero()
        );
        assert_eq!(
            p.eval_mod(&BigInt::from(0), &BigInt::from(49)),
            BigInt::from(47)
        );
        assert_eq!(p.eval_mod(&BigInt::from(3), &BigInt::one()), BigInt::zero());
    }
}
