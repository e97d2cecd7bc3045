//! Exact arithmetic on `Q[x]` in the normalized form `h/n`, with the discrete
//! ordering `f > 0 iff lc(f) > 0`.

mod parse;
mod zpoly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use zpoly::ZPoly;

/// An element `h/n` of `Q[x]` with `h` in `Z[x]`, `n > 0` and
/// `gcd(content(h), n) = 1`. Zero is `0/1`.
///
/// Equality is equality of normal forms. Ordering is the discrete order in
/// which `x` exceeds every integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    num: ZPoly,
    den: BigInt,
}

impl RingElement {
    pub fn new(num: ZPoly, den: BigInt) -> Result<Self> {
        match den.sign() {
            Sign::NoSign => Err(Error::ZeroDenominator),
            Sign::Minus => Ok(Self::normalized(-&num, -den)),
            Sign::Plus => Ok(Self::normalized(num, den)),
        }
    }

    fn normalized(num: ZPoly, den: BigInt) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.content().gcd(&den);
        if g.is_one() {
            RingElement { num, den }
        } else {
            RingElement {
                num: num.div_exact(&g),
                den: den / g,
            }
        }
    }

    pub fn zero() -> Self {
        RingElement {
            num: ZPoly::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn x() -> Self {
        Self::from_poly(ZPoly::x())
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(ZPoly::constant(c))
    }

    pub fn from_poly(num: ZPoly) -> Self {
        RingElement {
            num,
            den: BigInt::one(),
        }
    }

    /// `num / den` with small coefficients; panics on `den == 0`.
    pub fn from_i64s(num: &[i64], den: i64) -> Self {
        Self::new(ZPoly::from_i64s(num), den.into()).expect("nonzero denominator")
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Degree with `deg 0 = -1`.
    pub fn degree(&self) -> isize {
        self.num.degree()
    }

    /// Rational leading coefficient; `lc(0) = 0`.
    pub fn lc(&self) -> BigRational {
        BigRational::new(self.num.lc(), self.den.clone())
    }

    /// Sign in the discrete order.
    pub fn signum(&self) -> Ordering {
        self.num.lc().sign().cmp(&Sign::NoSign)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// The integer value, if this element is an integer constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.degree() <= 0 && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn rational_coeffs(&self) -> Vec<BigRational> {
        self.num
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::normalized(ZPoly::new(num), den)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalized(self.num.scale(c.numer()), &self.den * c.denom())
    }

    pub fn div_int(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.clone(), &self.den * d)
    }

    /// Division with remainder in `Q[x]`: `q = quotient*r + remainder` and
    /// `deg remainder < deg r`.
    pub fn qdiv(q: &Self, r: &Self) -> Result<(Self, Self)> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (quo, rem) = rational_divrem(&q.rational_coeffs(), &r.rational_coeffs());
        Ok((
            Self::from_rational_coeffs(&quo),
            Self::from_rational_coeffs(&rem),
        ))
    }

    /// `b / a` if it is a polynomial (remainder zero in `Q[x]`).
    pub fn exact_div(b: &Self, a: &Self) -> Result<Option<Self>> {
        let (quo, rem) = Self::qdiv(b, a)?;
        Ok(rem.is_zero().then_some(quo))
    }

    /// Monic gcd in `Q[x]`, returned as a primitive integer polynomial with
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn poly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
        let mut x = Self::from_poly(a.clone());
        let mut y = Self::from_poly(b.clone());
        while !y.is_zero() {
            let (_, rem) = Self::qdiv(&x, &y).expect("nonzero divisor");
            x = y;
            y = rem;
        }
        if x.is_zero() {
            return ZPoly::zero();
        }
        let content = x.num.content();
        let prim = x.num.div_exact(&content);
        if prim.lc().is_negative() {
            -&prim
        } else {
            prim
        }
    }
}

fn rational_divrem(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem: Vec<BigRational> = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = &rem[i + dd] / lead;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
        }
        quo[i] = c;
    }
    rem.truncate(dd);
    (quo, rem)
}

impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        if self.den == rhs.den {
            return RingElement::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &self.num.scale(&rhs.den) + &rhs.num.scale(&self.den);
        RingElement::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        RingElement::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RingElement {
            type Output = RingElement;
            fn $m(self, rhs: RingElement) -> RingElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RingElement> for RingElement {
            type Output = RingElement;
            fn $m(self, rhs: &RingElement) -> RingElement {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl From<i64> for RingElement {
    fn from(c: i64) -> Self {
        RingElement::from_int(c)
    }
}

impl From<BigInt> for RingElement {
    fn from(c: BigInt) -> Self {
        RingElement::from_int(c)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if terms == 1 {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    #[serde(with = "crate::json::vec")]
    num: Vec<BigInt>,
    #[serde(with = "crate::json")]
    den: BigInt,
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            num: self.num.coeffs().to_vec(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        RingElement::new(ZPoly::new(repr.num), repr.den).map_err(serde::de::Error::custom)
    }
}
