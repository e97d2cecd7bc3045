use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator must be positive")]
    ZeroDenominator,

    #[error("element is not a member of R_tau: h(tau_{p}) = {residue} mod {p}^{k}")]
    NotMember { p: u64, k: u32, residue: BigInt },

    #[error("cannot reduce precision {from} residue to precision {to}")]
    PrecisionTooHigh { from: u32, to: u32 },

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(BigInt, BigInt),

    #[error("modulus must be positive")]
    NonPositiveModulus,

    #[error("{root} is not a simple root of the polynomial mod {p}")]
    NotSimpleRoot { p: u64, root: BigInt },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("quasi-Euclidean chain exceeded {0} steps")]
    StepBudgetExceeded(usize),

    #[error("chain must start from a positive pair with at least one step")]
    NonPositiveStart,

    #[error("expected an element of degree at least 1")]
    DegreeTooSmall,

    #[error("expected a nonzero polynomial")]
    ZeroPolynomial,

    #[error("gcd(0, 0) is undefined")]
    BothZero,

    #[error("invalid start pair: {0}")]
    BadWitnessPair(String),

    #[error("witness depth must be at least 2")]
    DepthTooSmall,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid tau spec: {0}")]
    InvalidTau(String),
}
