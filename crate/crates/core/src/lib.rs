//! Exact arithmetic in the subrings `R_tau` of `Q[x]`, where `h/n` belongs
//! to `R_tau` when `h(tau_p) = 0 mod p^{v_p(n)}` for every prime `p`.
//!
//! `tau` is a family of p-adic integers given by a [`TauSpec`]; a
//! [`RingContext`] fixes one and provides membership, division with
//! remainder, quasi-Euclidean chains and Bezout coefficients.

pub mod adversary;
pub mod chains;
pub mod classify;
pub mod error;
pub mod json;
pub mod nt;
pub mod padic;
pub mod polyring;
pub mod rtau;
pub mod sample;

pub use adversary::{AdversarialPair, AdversaryReport};
pub use chains::{ChainComparison, DivisionChain, Normalization};
pub use classify::{NonUfdWitness, ShScan, WitnessStrategy};
pub use error::{Error, Result};
pub use padic::{PrimeSet, ResidueClass, TauKind, TauSpec};
pub use polyring::{RingElement, ZPoly};
pub use rtau::{Bezout, ChainTrace, DivBranch, Division, NormTuple, RingContext};
