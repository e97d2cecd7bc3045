use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::residue::{hensel_lift, ResidueClass};
use super::roots::least_simple_root;
use crate::error::{Error, Result};
use crate::nt::is_prime;
use crate::polyring::{RingElement, ZPoly};

/// A set of primes used by [`TauSpec::zero_on`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeSet {
    All,
    Only(BTreeSet<u64>),
    AllExcept(BTreeSet<u64>),
}

impl PrimeSet {
    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Only(s) => s.contains(&p),
            PrimeSet::AllExcept(s) => !s.contains(&p),
        }
    }
}

/// How the p-adic component `tau_p` is produced for each prime.
#[derive(Clone, Debug, PartialEq)]
pub enum TauKind {
    /// The canonical image of an integer: `tau_p = z` for every `p`.
    Constant(BigInt),
    Zero,
    /// Digits drawn from a ChaCha stream keyed by `(seed, p)`.
    Stream {
        seed: u64,
    },
    /// The Hensel lift of the least simple root of `poly` mod `p`; primes
    /// without a simple root use `fallback`.
    Hensel {
        poly: ZPoly,
        fallback: TauSpec,
    },
    /// Digit 0 is `floor(ln p)`; the rest come from the seeded stream.
    LogGeneric {
        seed: u64,
    },
    Piecewise {
        overrides: BTreeMap<u64, TauSpec>,
        default: TauSpec,
    },
    /// `tau_p = 0` for `p` in the set, `base` elsewhere.
    ZeroOn {
        primes: PrimeSet,
        base: TauSpec,
    },
}

struct Inner {
    kind: TauKind,
    // highest-precision residue computed so far, per prime
    cache: Mutex<HashMap<u64, ResidueClass>>,
}

/// An effective element of the product of the p-adic integers over all
/// primes, queryable to any finite precision.
///
/// Queries are memoized and coherent: `query(p, k+1)` reduces to
/// `query(p, k)`. Clones share the memo table, and the table is safe to
/// use from several threads.
#[derive(Clone)]
pub struct TauSpec {
    inner: Arc<Inner>,
}

impl PartialEq for TauSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.kind == other.inner.kind
    }
}

impl fmt::Debug for TauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.kind.fmt(f)
    }
}

impl TauSpec {
    pub fn from_kind(kind: TauKind) -> Result<Self> {
        if let TauKind::Piecewise { overrides, .. } = &kind {
            if let Some(&p) = overrides.keys().find(|&&p| !is_prime(p)) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(TauSpec {
            inner: Arc::new(Inner {
                kind,
                cache: Mutex::default(),
            }),
        })
    }

    fn build(kind: TauKind) -> Self {
        TauSpec {
            inner: Arc::new(Inner {
                kind,
                cache: Mutex::default(),
            }),
        }
    }

    pub fn constant(z: impl Into<BigInt>) -> Self {
        Self::build(TauKind::Constant(z.into()))
    }

    pub fn zero() -> Self {
        Self::build(TauKind::Zero)
    }

    pub fn stream(seed: u64) -> Self {
        Self::build(TauKind::Stream { seed })
    }

    pub fn hensel(poly: ZPoly, fallback: TauSpec) -> Self {
        Self::build(TauKind::Hensel { poly, fallback })
    }

    pub fn log_generic(seed: u64) -> Self {
        Self::build(TauKind::LogGeneric { seed })
    }

    pub fn piecewise(overrides: BTreeMap<u64, TauSpec>, default: TauSpec) -> Result<Self> {
        Self::from_kind(TauKind::Piecewise { overrides, default })
    }

    pub fn zero_on(primes: PrimeSet, base: TauSpec) -> Self {
        Self::build(TauKind::ZeroOn { primes, base })
    }

    pub fn kind(&self) -> &TauKind {
        &self.inner.kind
    }

    /// `pi_k(tau_p)`.
    pub fn query(&self, p: u64, k: u32) -> ResidueClass {
        debug_assert!(is_prime(p), "{p} is not prime");
        if k == 0 {
            return ResidueClass::new(p, 0, &BigInt::zero());
        }
        {
            let cache = self.inner.cache.lock().unwrap_or_else(|e| e.into_inner());
            if let Some(hit) = cache.get(&p) {
                if hit.precision >= k {
                    return hit.reduce(k).expect("cached precision suffices");
                }
            }
        }
        let computed = self.compute(p, k);
        let mut cache = self.inner.cache.lock().unwrap_or_else(|e| e.into_inner());
        let entry = cache.entry(p).or_insert_with(|| computed.clone());
        if entry.precision < k {
            *entry = computed.clone();
        }
        computed
    }

    fn compute(&self, p: u64, k: u32) -> ResidueClass {
        match &self.inner.kind {
            TauKind::Constant(z) => ResidueClass::new(p, k, z),
            TauKind::Zero => ResidueClass::new(p, k, &BigInt::zero()),
            TauKind::Stream { seed } => stream_digits(*seed, p, k, None),
            TauKind::LogGeneric { seed } => stream_digits(*seed, p, k, Some(log_digit(p))),
            TauKind::Hensel { poly, fallback } => match least_simple_root(poly, p) {
                Some(root) => hensel_lift(poly, p, &BigInt::from(root), k)
                    .expect("root was checked to be simple"),
                None => fallback.query(p, k),
            },
            TauKind::Piecewise { overrides, default } => {
                overrides.get(&p).unwrap_or(default).query(p, k)
            }
            TauKind::ZeroOn { primes, base } => {
                if primes.contains(p) {
                    ResidueClass::new(p, k, &BigInt::zero())
                } else {
                    base.query(p, k)
                }
            }
        }
    }

    /// Whether `h(tau_p) = 0` holds exactly in the p-adic integers, when the
    /// kind makes this decidable. Stream-backed kinds return `None`.
    pub fn vanishes_exactly(&self, h: &ZPoly, p: u64) -> Option<bool> {
        match &self.inner.kind {
            TauKind::Constant(z) => Some(h.eval(z).is_zero()),
            TauKind::Zero => Some(h.coeff(0).is_zero()),
            TauKind::Stream { .. } | TauKind::LogGeneric { .. } => None,
            TauKind::Hensel { poly, fallback } => match least_simple_root(poly, p) {
                Some(root) => {
                    // tau_p is the unique root of poly above `root`, so it is a
                    // root of h iff it is a root of gcd(h, poly), iff that gcd
                    // vanishes at `root` mod p.
                    let g = RingElement::poly_gcd(h, poly);
                    Some(g.eval_mod(&BigInt::from(root), &BigInt::from(p)).is_zero())
                }
                None => fallback.vanishes_exactly(h, p),
            },
            TauKind::Piecewise { overrides, default } => {
                overrides.get(&p).unwrap_or(default).vanishes_exactly(h, p)
            }
            TauKind::ZeroOn { primes, base } => {
                if primes.contains(p) {
                    Some(h.coeff(0).is_zero())
                } else {
                    base.vanishes_exactly(h, p)
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tau spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidTau(e.to_string()))
    }
}

/// `floor(ln p)`.
pub fn log_digit(p: u64) -> u64 {
    (p as f64).ln().floor() as u64
}

fn stream_digits(seed: u64, p: u64, k: u32, first: Option<u64>) -> ResidueClass {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(p);
    let pb = BigInt::from(p);
    let mut value = BigInt::zero();
    let mut scale = BigInt::from(1);
    for i in 0..k {
        let d: u64 = rng.gen_range(0..p);
        let d = if i == 0 {
            first.map_or(d, |f| f % p)
        } else {
            d
        };
        value += &scale * d;
        scale *= &pb;
    }
    ResidueClass::new(p, k, &value)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum TauRepr {
    Constant {
        #[serde(with = "crate::json")]
        value: BigInt,
    },
    Zero,
    Stream {
        seed: u64,
    },
    Hensel {
        #[serde(with = "crate::json::vec")]
        poly: Vec<BigInt>,
        #[serde(default = "zero_repr")]
        fallback: Box<TauRepr>,
    },
    LogGeneric {
        seed: u64,
    },
    Piecewise {
        overrides: BTreeMap<String, TauRepr>,
        default: Box<TauRepr>,
    },
    ZeroOn {
        primes: PrimeSet,
        base: Box<TauRepr>,
    },
}

fn zero_repr() -> Box<TauRepr> {
    Box::new(TauRepr::Zero)
}

impl From<&TauSpec> for TauRepr {
    fn from(t: &TauSpec) -> Self {
        match t.kind() {
            TauKind::Constant(z) => TauRepr::Constant { value: z.clone() },
            TauKind::Zero => TauRepr::Zero,
            TauKind::Stream { seed } => TauRepr::Stream { seed: *seed },
            TauKind::Hensel { poly, fallback } => TauRepr::Hensel {
                poly: poly.coeffs().to_vec(),
                fallback: Box::new(fallback.into()),
            },
            TauKind::LogGeneric { seed } => TauRepr::LogGeneric { seed: *seed },
            TauKind::Piecewise { overrides, default } => TauRepr::Piecewise {
                overrides: overrides
                    .iter()
                    .map(|(p, t)| (p.to_string(), t.into()))
                    .collect(),
                default: Box::new(default.into()),
            },
            TauKind::ZeroOn { primes, base } => TauRepr::ZeroOn {
                primes: primes.clone(),
                base: Box::new(base.into()),
            },
        }
    }
}

impl TryFrom<TauRepr> for TauSpec {
    type Error = Error;

    fn try_from(r: TauRepr) -> Result<Self> {
        Ok(match r {
            TauRepr::Constant { value } => TauSpec::constant(value),
            TauRepr::Zero => TauSpec::zero(),
            TauRepr::Stream { seed } => TauSpec::stream(seed),
            TauRepr::Hensel { poly, fallback } => {
                TauSpec::hensel(ZPoly::new(poly), (*fallback).try_into()?)
            }
            TauRepr::LogGeneric { seed } => TauSpec::log_generic(seed),
            TauRepr::Piecewise { overrides, default } => TauSpec::piecewise(
                overrides
                    .into_iter()
                    .map(|(p, t)| {
                        let p = p
                            .parse::<u64>()
                            .map_err(|_| Error::InvalidTau(format!("bad prime key {p:?}")))?;
                        Ok((p, t.try_into()?))
                    })
                    .collect::<Result<_>>()?,
                (*default).try_into()?,
            )?,
            TauRepr::ZeroOn { primes, base } => TauSpec::zero_on(primes, (*base).try_into()?),
        })
    }
}

impl Serialize for TauSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TauRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TauSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TauRepr::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}
