//! Small number-theory helpers: prime lists, primality, and factoring of
//! denominators.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

/// All primes `p <= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    // num_prime's bound is exclusive
    num_prime::nt_funcs::primes(limit.saturating_add(1))
        .into_iter()
        .filter(|&p| p <= limit)
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Prime factorization of a positive integer as `(p, e)` pairs with ascending `p`.
///
/// Panics if `n` has a prime factor that does not fit in 64 bits; residue
/// towers are indexed by `u64` primes.
pub fn factorize(n: &BigUint) -> Vec<(u64, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    if n.is_one() {
        return Vec::new();
    }
    let map: Vec<(BigUint, usize)> = match n.to_u128() {
        Some(small) => num_prime::nt_funcs::factorize128(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect(),
        None => num_prime::nt_funcs::factorize(n.clone())
            .into_iter()
            .collect(),
    };
    map.into_iter()
        .map(|(p, e)| {
            let p = p
                .to_u64()
                .unwrap_or_else(|| panic!("prime factor {p} exceeds 64 bits"));
            (p, e as u32)
        })
        .collect()
}

/// Factorization of the absolute value of a nonzero integer.
pub fn factorize_int(n: &BigInt) -> Vec<(u64, u32)> {
    factorize(n.magnitude())
}

/// `v_p(n)` for nonzero `n`.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Inverse of `a` modulo `m` (`m > 1`), if it exists, in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.modpow(&BigInt::one(), m);
    a.modinv(m)
}

/// Non-negative representative of `a mod m` for `m > 0`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a % m;
    if r.sign() == Sign::Minus {
        r + m
    } else {
        r
    }
}

pub fn pow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// `F_n` with `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_values() {
        let f: Vec<BigInt> = (0..10).map(fibonacci).collect();
        let want: Vec<BigInt> = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34].map(BigInt::from).to_vec();
        assert_eq!(f, want);
        assert_eq!(fibonacci(90).to_string(), "2880067194370816120");
    }

    #[test]
    fn prime_list_is_inclusive() {
        assert_eq!(primes_up_to(13), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(50).len(), 15);
    }

    #[test]
    fn factorization_matches_trial_division() {
        for n in 1u64..2000 {
            let f = factorize(&BigUint::from(n));
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn factors_beyond_u128() {
        let n = BigUint::from(3u32).pow(90) * BigUint::from(1_000_003u64);
        assert_eq!(factorize(&n), vec![(3, 90), (1_000_003, 1)]);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(48), 2), 4);
        assert_eq!(valuation(&BigInt::from(-18), 3), 2);
        assert_eq!(valuation(&BigInt::from(7), 5), 0);
    }

    #[test]
    fn inverse_and_modulo() {
        assert_eq!(
            mod_inverse(&BigInt::from(3), &BigInt::from(7)),
            Some(BigInt::from(5))
        );
        assert_eq!(
            mod_inverse(&BigInt::from(-3), &BigInt::from(7)),
            Some(BigInt::from(2))
        );
        assert_eq!(mod_inverse(&BigInt::from(2), &BigInt::from(4)), None);
        assert_eq!(modulo(&BigInt::from(-1), &BigInt::from(9)), BigInt::from(8));
    }
}
