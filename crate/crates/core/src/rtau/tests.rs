use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::sample::{random_member, random_nonzero_member, SampleBounds};

fn el(num: &[i64], den: i64) -> RingElement {
    RingElement::from_i64s(num, den)
}

fn ctx_const(z: i64) -> RingContext {
    RingContext::new(TauSpec::constant(z))
}

fn int(v: i64) -> RingElement {
    RingElement::from_int(v)
}

fn all_taus() -> Vec<TauSpec> {
    vec![
        TauSpec::constant(0),
        TauSpec::constant(1),
        TauSpec::constant(5),
        TauSpec::stream(42),
        TauSpec::log_generic(7),
        TauSpec::hensel(ZPoly::from_i64s(&[-2, 0, 1]), TauSpec::constant(1)),
    ]
}

#[test]
fn membership_examples() {
    for tau in all_taus() {
        let ctx = RingContext::new(tau);
        assert!(ctx.is_member(&el(&[0, 1, 1], 2)));
        for n in 2..40 {
            assert!(!ctx.is_member(&el(&[1], n)));
        }
        assert!(ctx.is_member(&int(-17)));
    }
    assert!(ctx_const(0).is_member(&el(&[0, 1], 2)));
    assert!(!ctx_const(1).is_member(&el(&[0, 1], 2)));
}

#[test]
fn make_element_examples() {
    assert!(ctx_const(0).make_element(ZPoly::x(), 2.into()).is_ok());
    assert_eq!(
        ctx_const(1).make_element(ZPoly::x(), 3.into()),
        Err(Error::NotMember {
            p: 3,
            k: 1,
            residue: 1.into()
        })
    );
    for tau in all_taus() {
        assert_eq!(
            RingContext::new(tau).make_element(ZPoly::constant(5), 1.into()),
            Ok(int(5))
        );
    }
    assert_eq!(
        ctx_const(0).make_element(ZPoly::x(), 0.into()),
        Err(Error::ZeroDenominator)
    );
}

#[test]
fn divmod_examples() {
    let ctx = ctx_const(0);
    assert_eq!(ctx.divmod(&int(7), &int(3)).unwrap(), (int(2), int(1)));
    assert_eq!(ctx.divmod(&int(-7), &int(3)).unwrap(), (int(-3), int(2)));
    assert_eq!(ctx.divmod(&int(7), &int(-3)).unwrap(), (int(-2), int(1)));
    assert_eq!(ctx.divmod(&int(-7), &int(-3)).unwrap(), (int(3), int(2)));
    assert_eq!(ctx.divmod(&int(-6), &int(3)).unwrap(), (int(-2), int(0)));

    let x = RingElement::x();
    let d = ctx_const(1).divmod_traced(&x, &int(2)).unwrap();
    assert_eq!(
        (d.quotient.clone(), d.remainder.clone()),
        (el(&[-1, 1], 2), int(1))
    );
    assert_eq!(d.branch, DivBranch::Shift);
    assert_eq!(&(&d.quotient * &int(2)) + &d.remainder, x);
    assert!(ctx_const(1).is_member(&d.quotient));

    let d = ctx.divmod_traced(&x, &int(2)).unwrap();
    assert_eq!(
        (d.quotient, d.remainder),
        (el(&[0, 1], 2), RingElement::zero())
    );

    // x = 0*(x+1) + x: qdiv gives (1, -1), k = 0 and lc(-1) < 0
    let d = ctx.divmod_traced(&x, &el(&[1, 1], 1)).unwrap();
    assert_eq!(
        (d.quotient, d.remainder, d.branch),
        (int(0), x.clone(), DivBranch::Borrow)
    );

    assert_eq!(
        ctx.divmod(&x, &RingElement::zero()),
        Err(Error::DivisionByZero)
    );
    assert!(matches!(
        ctx_const(1).divmod(&el(&[0, 1], 2), &int(3)),
        Err(Error::NotMember { p: 2, .. })
    ));
}

#[test]
fn qe_chain_examples() {
    let ctx = ctx_const(0);
    let c = ctx.qe_chain(&int(8), &int(5), DEFAULT_MAX_STEPS).unwrap();
    assert_eq!(c.quotients(), &[int(1), int(1), int(1), int(2)]);
    assert_eq!(c.remainders(), &[int(3), int(2), int(1), int(0)]);

    let a = el(&[0, 5], 3);
    let c = ctx
        .qe_chain(&a, &RingElement::x(), DEFAULT_MAX_STEPS)
        .unwrap();
    assert_eq!(c.quotients(), &[int(1), int(1), int(2)]);
    assert_eq!(
        c.remainders(),
        &[el(&[0, 2], 3), el(&[0, 1], 3), RingElement::zero()]
    );
    assert!(c.remainders().iter().all(|r| ctx.is_member(r)));

    let c = ctx.qe_chain(&a, &a, DEFAULT_MAX_STEPS).unwrap();
    assert_eq!(
        (c.quotients(), c.remainders()),
        (&[int(1)][..], &[int(0)][..])
    );

    assert_eq!(
        ctx.qe_chain(&int(89), &int(55), 3),
        Err(Error::StepBudgetExceeded(3))
    );
}

#[test]
fn qe_trace_carries_descending_norms() {
    let t = ctx_const(0)
        .qe_trace(&int(8), &int(5), DEFAULT_MAX_STEPS)
        .unwrap();
    assert_eq!(t.phi.len(), 5);
    assert!(t.phi.windows(2).all(|w| w[1] < w[0]));
    assert!(t.phi.last().unwrap().is_zero());
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(json["phi"][0], serde_json::json!([0, 1, 0, 1, 8]));
    assert_eq!(
        json["quotients"][3],
        serde_json::json!({"num": [2], "den": 1})
    );
}

#[test]
fn gcd_examples() {
    let ctx = ctx_const(0);
    let g = ctx.gcd_bezout(&int(8), &int(5)).unwrap();
    assert_eq!((g.g, g.u, g.v), (int(1), int(2), int(-3)));

    let x = RingElement::x();
    let g = ctx.gcd_bezout(&x, &int(2)).unwrap();
    assert_eq!((g.g, g.u, g.v), (int(2), int(0), int(1)));

    let g = ctx.gcd_bezout(&int(12), &RingElement::zero()).unwrap();
    assert_eq!((g.g, g.u, g.v), (int(12), int(1), int(0)));
    let g = ctx.gcd_bezout(&int(-12), &RingElement::zero()).unwrap();
    assert_eq!((g.g, g.u, g.v), (int(12), int(-1), int(0)));
    let g = ctx.gcd_bezout(&RingElement::zero(), &int(-4)).unwrap();
    assert_eq!(g.g, int(4));
    assert_eq!(
        ctx.gcd_bezout(&RingElement::zero(), &RingElement::zero()),
        Err(Error::BothZero)
    );

    // with tau = 1, x/2 is not a member and x, 2 are coprime
    let g = ctx_const(1).gcd_bezout(&x, &int(2)).unwrap();
    assert_eq!(g.g, int(1));
    assert_eq!(&(&g.u * &x) + &(&g.v * &int(2)), int(1));
}

#[test]
fn divides_examples() {
    let x = RingElement::x();
    assert_eq!(ctx_const(0).divides(&int(2), &x), Ok(true));
    assert_eq!(ctx_const(0).divides(&x, &el(&[1, 0, 1], 1)), Ok(false));
    assert_eq!(ctx_const(1).divides(&int(3), &x), Ok(false));
    assert_eq!(
        ctx_const(1).divides(&RingElement::zero(), &x),
        Err(Error::DivisionByZero)
    );
}

#[test]
fn membership_matches_integer_oracle_for_constants() {
    // for tau = z the condition at every p | n combines to n | h(z)
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for z in [-4i64, 0, 1, 5, 12] {
        let ctx = ctx_const(z);
        for _ in 0..300 {
            let coeffs: Vec<i64> = (0..4).map(|_| rng.gen_range(-30..=30)).collect();
            let n = rng.gen_range(1..=60i64);
            let h = ZPoly::from_i64s(&coeffs);
            let oracle = h.eval(&BigInt::from(z)).is_multiple_of(&BigInt::from(n));
            let e = RingElement::new(h, n.into()).unwrap();
            assert_eq!(ctx.is_member(&e), oracle, "z={z} e={e}");
        }
    }
}

fn arb_ctx_index() -> impl Strategy<Value = usize> {
    0..all_taus().len()
}

fn sample_pair(tau: usize, seed: u64) -> (RingContext, RingElement, RingElement) {
    let ctx = RingContext::new(all_taus().swap_remove(tau));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = SampleBounds::default();
    let q = random_member(&ctx, &mut rng, bounds);
    let r = random_nonzero_member(&ctx, &mut rng, bounds);
    (ctx, q, r)
}

use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_identity_range_and_membership(tau in arb_ctx_index(), seed in any::<u64>()) {
        let (ctx, q, r) = sample_pair(tau, seed);
        prop_assert!(ctx.is_member(&q) && ctx.is_member(&r));
        let (p, s) = ctx.divmod(&q, &r).unwrap();
        prop_assert_eq!(&(&p * &r) + &s, q.clone());
        prop_assert!(!s.is_negative());
        prop_assert!(s < r.abs());
        prop_assert!(ctx.is_member(&p) && ctx.is_member(&s));
        // neighbouring quotients leave the range
        let one = RingElement::one();
        for alt in [&p + &one, &p - &one] {
            let alt_s = &q - &(&alt * &r);
            prop_assert!(alt_s.is_negative() || alt_s >= r.abs());
        }
    }

    #[test]
    fn norm_descends(tau in arb_ctx_index(), seed in any::<u64>()) {
        let (ctx, q, r) = sample_pair(tau, seed);
        // a negative dividend can stall the norm, see norm_stalls_on_negative_dividend
        let q = q.abs();
        let (_, s) = ctx.divmod(&q, &r).unwrap();
        prop_assert!(phi(&r, &s) < phi(&q, &r));
    }

    #[test]
    fn closure(tau in arb_ctx_index(), seed in any::<u64>()) {
        let (ctx, a, b) = sample_pair(tau, seed);
        prop_assert!(ctx.is_member(&(&a + &b)));
        prop_assert!(ctx.is_member(&(&a - &b)));
        prop_assert!(ctx.is_member(&(&a * &b)));
    }

    #[test]
    fn gcd_contract(tau in arb_ctx_index(), seed in any::<u64>()) {
        let (ctx, a, b) = sample_pair(tau, seed);
        let g = ctx.gcd_bezout(&a, &b).unwrap();
        prop_assert!(g.g.is_positive());
        prop_assert_eq!(&(&g.u * &a) + &(&g.v * &b), g.g.clone());
        prop_assert!(ctx.divides(&g.g, &a).unwrap());
        prop_assert!(ctx.divides(&g.g, &b).unwrap());
    }

    #[test]
    fn gcd_on_integers_matches_euclid(a in -100_000i64..100_000, b in -100_000i64..100_000) {
        prop_assume!(a != 0 || b != 0);
        let g = ctx_const(0).gcd_bezout(&int(a), &int(b)).unwrap();
        prop_assert_eq!(g.g, int(a.gcd(&b)));
    }

    #[test]
    fn qe_chain_consistency(tau in arb_ctx_index(), seed in any::<u64>()) {
        let (ctx, a, b) = sample_pair(tau, seed);
        let c = ctx.qe_chain(&a, &b, DEFAULT_MAX_STEPS).unwrap();
        prop_assert!(c.is_consistent());
        prop_assert!(c.is_terminating());
        let rs = c.remainders();
        let nonzero = &rs[..rs.len() - 1];
        prop_assert!(nonzero.iter().all(|r| r.is_positive()));
        prop_assert!(nonzero.windows(2).all(|w| w[1] < w[0]));
    }
}

#[test]
fn norm_stalls_on_negative_dividend() {
    // -(x+1) = -2*x + (x-1): the remainder keeps lc(r), so phi ties
    let ctx = RingContext::new(TauSpec::zero());
    let (q, r) = (el(&[-1, -1], 1), RingElement::x());
    let (p, s) = ctx.divmod(&q, &r).unwrap();
    assert_eq!((p, s.clone()), (int(-2), el(&[-1, 1], 1)));
    assert_eq!(phi(&r, &s), phi(&q, &r));
    // the same step from |q| drops the degree
    let (_, s) = ctx.divmod(&q.abs(), &r).unwrap();
    assert!(phi(&r, &s) < phi(&q, &r));
}

#[test]
fn divmod_zero_dividend() {
    let ctx = ctx_const(3);
    let d = ctx.divmod(&RingElement::zero(), &el(&[1, 1], 1)).unwrap();
    assert!(d.0.is_zero() && d.1.is_zero());
    assert!(BigInt::zero().is_zero());
}
