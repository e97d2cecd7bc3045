use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::padic::TauSpec;
use crate::polyring::ZPoly;
use crate::sample::{random_member, SampleBounds};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn el(num: &[i64], den: i64) -> RingElement {
    RingElement::from_i64s(num, den)
}

fn taus() -> Vec<TauSpec> {
    vec![
        TauSpec::constant(0),
        TauSpec::constant(1),
        TauSpec::stream(42),
        TauSpec::log_generic(7),
    ]
}

/// Every `beta` in `[0, d)` with `(b - beta)/d` a member, by trying them all.
fn brute_beta(ctx: &RingContext, b: &RingElement, d: i64) -> Vec<i64> {
    (0..d)
        .filter(|&t| ctx.is_member(&(b - &RingElement::from(t)).div_int(&big(d)).unwrap()))
        .collect()
}

#[test]
fn fib_pair_examples() {
    assert_eq!(fib_pair_for(1), (big(5), big(3)));
    // (13, 8): 13 = 8 + 5, 8 = 5 + 3, 5 = 3 + 2, 3 = 2 + 1, 2 = 2*1, five steps
    assert_eq!(fib_pair_for(2), (big(13), big(8)));
    assert_eq!(fib_pair_for(3), (big(34), big(21)));
    assert!(matches!(
        check_start_pair(&big(2), &big(1), 1),
        Err(Error::BadWitnessPair(_))
    ));
    assert!(check_start_pair(&big(13), &big(8), 2).is_ok());
}

#[test]
fn fib_pair_lengths_exceed_2k() {
    for k in 1..=30 {
        let (c, d) = fib_pair_for(k);
        assert!(euclid_len(&c, &d) > 2 * k);
        assert_eq!(&c - &d, fibonacci(2 * k as u32 + 1));
    }
}

#[test]
fn integer_mod_examples() {
    let x = RingElement::x();
    assert_eq!(
        integer_mod(&RingContext::new(TauSpec::constant(0)), &x, &big(3)),
        Ok(big(0))
    );
    assert_eq!(
        integer_mod(&RingContext::new(TauSpec::constant(1)), &x, &big(3)),
        Ok(big(1))
    );
    let ctx = RingContext::new(TauSpec::zero());
    assert_eq!(integer_mod(&ctx, &7.into(), &big(4)), Ok(big(3)));
    assert_eq!(
        integer_mod(&ctx, &7.into(), &big(0)),
        Err(Error::NonPositiveModulus)
    );
    assert!(matches!(
        integer_mod(
            &RingContext::new(TauSpec::constant(1)),
            &el(&[0, 1], 2),
            &big(3)
        ),
        Err(Error::NotMember { .. })
    ));
}

#[test]
fn integer_mod_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bounds = SampleBounds {
        max_degree: 3,
        max_den: 40,
        coeff: 15,
    };
    for tau in taus() {
        let ctx = RingContext::new(tau);
        for d in 1..=36 {
            let b = random_member(&ctx, &mut rng, bounds);
            let beta = integer_mod(&ctx, &b, &big(d)).unwrap();
            assert_eq!(
                vec![i64::try_from(&beta).unwrap()],
                brute_beta(&ctx, &b, d),
                "b={b} d={d}"
            );
        }
    }
}

#[test]
fn adversarial_pair_examples() {
    let x = RingElement::x();
    let p = adversarial_pair(&RingContext::new(TauSpec::constant(0)), 1, &x).unwrap();
    assert_eq!(
        (p.c.clone(), p.d.clone(), p.beta.clone()),
        (big(5), big(3), big(0))
    );
    assert_eq!(p.a, el(&[0, 5], 3));

    let p = adversarial_pair(&RingContext::new(TauSpec::constant(1)), 1, &x).unwrap();
    assert_eq!(p.beta, big(1));
    assert_eq!(p.a, el(&[-5, 5], 3));

    let ctx = RingContext::new(TauSpec::zero());
    assert_eq!(
        adversarial_pair(&ctx, 1, &5.into()),
        Err(Error::DegreeTooSmall)
    );
    let neg = adversarial_pair(&ctx, 1, &(-&x)).unwrap();
    assert_eq!(neg.a, -el(&[0, 5], 3));
}

#[test]
fn hat_examples() {
    let x = RingElement::x();
    let d = big(3);
    assert_eq!(
        hat(&d, &x, &el(&[0, 5], 3)),
        Ok(BigRational::from_integer(big(5)))
    );
    assert_eq!(
        hat(&d, &x, &RingElement::zero()),
        Ok(BigRational::from_integer(big(0)))
    );
    assert_eq!(
        hat(&d, &x, &el(&[0, 2], 3)),
        Ok(BigRational::from_integer(big(2)))
    );
    assert_eq!(
        hat(&d, &RingElement::zero(), &x),
        Err(Error::DivisionByZero)
    );
}

#[test]
fn degree_retention_examples() {
    let ctx = RingContext::new(TauSpec::constant(0));
    let pair = adversarial_pair(&ctx, 1, &RingElement::x()).unwrap();
    let rep = degree_retention_check(&ctx, &pair).unwrap();
    assert_eq!(rep.degrees, vec![1, 1]);
    assert!(rep.verdict && rep.hat_chain_valid);
    // 5x/3 = 1*x + 2x/3
    let qe = ctx.qe_chain(&pair.a, &pair.b, DEFAULT_MAX_STEPS).unwrap();
    assert_eq!((qe.q(1), qe.r(1)), (&RingElement::one(), &el(&[0, 2], 3)));
    let json = serde_json::to_value(&rep).unwrap();
    for key in ["k", "b", "c", "d", "beta", "a", "degrees", "verdict"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["c"], 5);
    assert_eq!(json["hats"][0], 3);

    let ctx = RingContext::new(TauSpec::stream(42));
    let b = RingElement::from_poly(ZPoly::from_i64s(&[1, 0, 1]));
    let rep = degree_retention_check(&ctx, &adversarial_pair(&ctx, 2, &b).unwrap()).unwrap();
    assert_eq!(rep.degrees.len(), 4);
    assert!(rep.degrees.iter().all(|&g| g >= 2));
    assert!(rep.verdict && rep.hat_chain_valid);
}

#[test]
fn divisible_pair_fails_retention() {
    // b | a ends the chain at once, which is what the construction avoids
    let ctx = RingContext::new(TauSpec::zero());
    let x = RingElement::x();
    let pair = AdversarialPair {
        k: 1,
        c: big(5),
        d: big(3),
        beta: big(0),
        a: &x * &RingElement::from(2),
        b: x,
    };
    let rep = degree_retention_check(&ctx, &pair).unwrap();
    assert_eq!(rep.degrees, vec![-1, -1]);
    assert!(!rep.verdict);
}

#[test]
fn retention_grid() {
    let bs = [
        el(&[0, 1], 1),
        el(&[2, 1], 1),
        el(&[0, 1, 1], 2),
        el(&[1, 0, 1], 1),
    ];
    for tau in taus() {
        let ctx = RingContext::new(tau.clone());
        for b in bs.iter().filter(|b| ctx.is_member(b)) {
            for k in 1..=3 {
                let pair = adversarial_pair(&ctx, k, b).unwrap();
                let rep = degree_retention_check(&ctx, &pair).unwrap();
                assert!(rep.verdict, "{tau:?} k={k} b={b} {:?}", rep.degrees);
                assert!(rep.hat_chain_valid, "{tau:?} k={k} b={b}");
                assert!(ctx.is_member(&rep.a));
            }
        }
    }
}

#[test]
fn descent_keeps_degree() {
    let ctx = RingContext::new(TauSpec::constant(1));
    let d = descent_demo(&ctx, 2, 3, None).unwrap();
    assert_eq!(d.steps.len(), 3);
    assert!(d.steps.iter().all(|s| s.next.degree() >= 1));
    assert_eq!(d.steps[0].b, RingElement::x());
    for w in d.steps.windows(2) {
        assert_eq!(w[1].b, w[0].next);
    }

    let mut table = std::collections::HashMap::new();
    table.insert(RingElement::x(), 10u64);
    let d = descent_demo(&ctx, 2, 2, Some(&table)).unwrap();
    assert_eq!(d.broken_at, Some(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_b_retains_degree(tau in 0usize..4, seed in any::<u64>(), k in 1usize..=3) {
        let ctx = RingContext::new(taus().swap_remove(tau));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bounds = SampleBounds { max_degree: 3, max_den: 30, coeff: 12 };
        let b = random_member(&ctx, &mut rng, bounds);
        prop_assume!(b.degree() >= 1);
        let pair = adversarial_pair(&ctx, k, &b).unwrap();
        prop_assert!(pair.beta >= big(0) && pair.beta < pair.d);
        prop_assert!(ctx.is_member(&pair.a));
        let rep = degree_retention_check(&ctx, &pair).unwrap();
        prop_assert!(rep.verdict, "{:?}", rep.degrees);
        prop_assert!(rep.hat_chain_valid);
    }
}
