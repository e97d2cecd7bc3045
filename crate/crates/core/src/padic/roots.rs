//! Roots of integer polynomials over `F_p`: `gcd(f, x^p - x)` followed by
//! Cantor-Zassenhaus splitting.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::nt::modulo;
use crate::polyring::ZPoly;

const BRUTE_FORCE_LIMIT: u64 = 512;

type Fp = Vec<u64>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn reduce(f: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| modulo(c, &pb).to_u64().expect("reduced below p"))
            .collect(),
    )
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Fp {
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    let lc_inv = inv(m[dm], p);
    while a.len() > dm {
        let da = a.len() - 1;
        let c = mul_mod(a[da], lc_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            let j = da - dm + i;
            a[j] = (a[j] + p - mul_mod(c, mi, p)) % p;
        }
        a = trim(a);
    }
    a
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn monic(a: Fp, p: u64) -> Fp {
    let c = inv(*a.last().expect("nonzero"), p);
    a.into_iter().map(|x| mul_mod(x, c, p)).collect()
}

fn gcd(mut a: Fp, mut b: Fp, p: u64) -> Fp {
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    if a.is_empty() {
        a
    } else {
        monic(a, p)
    }
}

/// `base^e mod m`.
fn pow_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Fp {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

/// Splits a monic product of distinct linear factors into its roots.
fn split(g: Fp, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push((p - g[0]) % p),
        _ => loop {
            let a = rng.gen_range(0..p);
            let t = pow_poly(&[a, 1], (p - 1) / 2, &g, p);
            let d = gcd(g.clone(), sub(&t, &[1], p), p);
            if d.len() > 1 && d.len() < g.len() {
                let (q, _) = div(&g, &d, p);
                split(d, p, rng, out);
                split(q, p, rng, out);
                return;
            }
        },
    }
}

fn div(a: &[u64], m: &[u64], p: u64) -> (Fp, Fp) {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lc_inv = inv(m[dm], p);
    let mut q = vec![0u64; a.len().saturating_sub(dm)];
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = mul_mod(r[dr], lc_inv, p);
        q[dr - dm] = c;
        for (i, &mi) in m.iter().enumerate() {
            let j = dr - dm + i;
            r[j] = (r[j] + p - mul_mod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// The distinct roots of `f` mod `p`, ascending. Empty when `f` vanishes
/// identically mod `p`.
pub(crate) fn roots_mod_p(f: &ZPoly, p: u64) -> Vec<u64> {
    let fp = reduce(f, p);
    if fp.len() <= 1 {
        return Vec::new();
    }
    if p <= BRUTE_FORCE_LIMIT {
        let pb = BigInt::from(p);
        return (0..p)
            .filter(|&r| f.eval_mod(&BigInt::from(r), &pb).eq(&BigInt::default()))
            .collect();
    }
    let fp = monic(fp, p);
    let xp = pow_poly(&[0, 1], p, &fp, p);
    let g = gcd(fp.clone(), sub(&xp, &[0, 1], p), p);
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    split(g, p, &mut rng, &mut out);
    out.sort_unstable();
    out
}

/// The least root `r` of `f` mod `p` with `f'(r) != 0 mod p`.
pub(crate) fn least_simple_root(f: &ZPoly, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let df = f.derivative();
    roots_mod_p(f, p)
        .into_iter()
        .find(|&r| df.eval_mod(&BigInt::from(r), &pb) != BigInt::default())
}
