mod common;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use hyperpic_core::poly::parse_poly;
use hyperpic_core::{Exponent, LaurentPoly, Rational};

const NVARS: usize = 3;

fn config(seed: u64) -> ProptestConfig {
    ProptestConfig {
        cases: 160,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| common::q(a, b))
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop::collection::vec(-3i32..=3, NVARS).prop_map(Exponent::new)
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((exponent(), rational()), 0..6)
        .prop_map(|terms| LaurentPoly::from_terms(NVARS, terms))
}

proptest! {
    #![proptest_config(config(0x5eed_0001))]

    #[test]
    fn addition_is_an_abelian_group(p in laurent(), q in laurent(), r in laurent()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p + &LaurentPoly::zero(NVARS), p.clone());
        prop_assert!((&p + &(-&p)).is_zero());
        prop_assert_eq!(&p - &q, &p + &(-&q));
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(
        p in laurent(), q in laurent(), r in laurent()
    ) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &LaurentPoly::one(NVARS), p.clone());
        prop_assert!((&p * &LaurentPoly::zero(NVARS)).is_zero());
        prop_assert_eq!(p.pow(2), &p * &p);
    }

    #[test]
    fn shift_and_scale_match_multiplication(p in laurent(), e in exponent(), c in rational()) {
        let mono = LaurentPoly::monomial(e.clone(), Rational::from_integer(1.into()));
        prop_assert_eq!(p.shift(&e), &p * &mono);
        prop_assert_eq!(p.scale(&c), &p * &LaurentPoly::constant(NVARS, c));
    }

    #[test]
    fn partial_derivative_obeys_leibniz(p in laurent(), q in laurent(), i in 0..NVARS) {
        let lhs = (&p * &q).partial_derivative(i);
        let rhs = &(&p.partial_derivative(i) * &q) + &(&p * &q.partial_derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn printing_then_parsing_is_the_identity(p in laurent()) {
        let text = p.to_string();
        let back = parse_poly(&text, NVARS - 1).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn homogeneous_terms_have_additive_degree(
        a in prop::collection::vec(0i32..=3, NVARS),
        b in prop::collection::vec(0i32..=3, NVARS),
        c in rational()
    ) {
        let (a, b) = (Exponent::new(a), Exponent::new(b));
        let p = LaurentPoly::monomial(a.clone(), c.clone());
        let q = LaurentPoly::monomial(b.clone(), Rational::from_integer(2.into()));
        let prod = &p * &q;
        prop_assert!(c == Rational::from_integer(0.into()) || prod.check_homogeneous(a.degree() + b.degree()));
    }

    #[test]
    fn euler_identity_holds(seed in any::<u64>()) {
        common::check_euler_identity(&mut common::rng(seed)).map_err(TestCaseError::fail)?;
    }
}
