//! General k-stage division chains: construction, the T1/T2 rewrites towards
//! positive quotients, and comparison with the quasi-Euclidean chain.

mod chain;
mod compare;
mod rewrite;

pub use chain::DivisionChain;
pub use compare::{
    compare_to_qe, fibonacci_witness, fibonacci_witness_from, BoundRecord, ChainComparison,
    FibonacciWitness,
};
pub use rewrite::{
    is_positive_after_first, measure, normalize_positive, t1, t2, Normalization, NormalizeStep,
    Rewrite,
};
