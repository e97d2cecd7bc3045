//! Truncated p-adic arithmetic: residue towers for `tau_p`, evaluation of
//! integer polynomials mod `p^k`, Hensel lifting and CRT.

mod residue;
mod roots;
mod tau;

pub use residue::{crt_combine, hensel_lift, ResidueClass};
pub use tau::{log_digit, PrimeSet, TauKind, TauSpec};

use crate::nt::pow;
use crate::polyring::ZPoly;

/// `pi_k(h(tau_p))`, by Horner's rule in `Z/p^kZ`.
pub fn poly_eval_mod(h: &ZPoly, tau: &TauSpec, p: u64, k: u32) -> ResidueClass {
    if k == 0 {
        return ResidueClass::new(p, 0, &Default::default());
    }
    let t = tau.query(p, k);
    ResidueClass::new(p, k, &h.eval_mod(&t.value, &pow(p, k)))
}
