use std::collections::BTreeMap;

use floerkit::scalar::{q, qf};
use floerkit::{Novikov, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

type N = Novikov<Rational>;

/// Gapped element: energies in (1/6)Z >= 0, even Maslov exponents, small coefficients.
fn gapped() -> impl Strategy<Value = N> {
    prop::collection::vec((-4i64..=4, 1i64..=3, 0i64..=12, -2i64..=2), 0..6).prop_map(|ts| {
        N::from_terms(ts.into_iter().map(|(n, d, e6, half)| (qf(n, d), qf(e6, 6), 2 * half)))
    })
}

/// Dense map model used as an independent oracle.
fn model(x: &N) -> BTreeMap<(Rational, i64), Rational> {
    x.terms().iter().map(|(e, m, c)| ((e.clone(), *m), c.clone())).collect()
}

fn model_mul(a: &N, b: &N) -> BTreeMap<(Rational, i64), Rational> {
    let mut out: BTreeMap<(Rational, i64), Rational> = BTreeMap::new();
    for ((e1, m1), c1) in model(a) {
        for ((e2, m2), c2) in model(b) {
            *out.entry((&e1 + &e2, m1 + m2)).or_insert_with(Rational::zero) += &c1 * &c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn model_add(a: &N, b: &N) -> BTreeMap<(Rational, i64), Rational> {
    let mut out = model(a);
    for (k, c) in model(b) {
        *out.entry(k).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn addition_matches_the_model(a in gapped(), b in gapped()) {
        prop_assert_eq!(model(&(a.clone() + b.clone())), model_add(&a, &b));
    }

    #[test]
    fn multiplication_matches_the_model(a in gapped(), b in gapped()) {
        prop_assert_eq!(model(&(a.clone() * b.clone())), model_mul(&a, &b));
    }

    #[test]
    fn additive_group(a in gapped(), b in gapped(), c in gapped()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b + c));
        prop_assert_eq!(a.clone() + N::zero(), a.clone());
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn multiplicative_monoid(a in gapped(), b in gapped(), c in gapped()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b * c));
        prop_assert_eq!(a.clone() * N::one(), a);
    }

    #[test]
    fn distributive(a in gapped(), b in gapped(), c in gapped()) {
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b + a * c);
    }

    #[test]
    fn valuation_of_sum(a in gapped(), b in gapped()) {
        let s = a.clone() + b.clone();
        match (a.valuation(), b.valuation(), s.valuation()) {
            (Some(x), Some(y), Some(z)) => prop_assert!(z >= x.min(y)),
            (_, _, None) => {}
            (None, Some(y), Some(z)) => prop_assert_eq!(z, y),
            (Some(x), None, Some(z)) => prop_assert_eq!(z, x),
            (None, None, Some(_)) => prop_assert!(false),
        }
    }

    #[test]
    fn valuation_is_additive(a in gapped(), b in gapped()) {
        let p = a.clone() * b.clone();
        match (a.valuation(), b.valuation()) {
            (Some(x), Some(y)) => prop_assert_eq!(p.valuation(), Some(x + y)),
            _ => prop_assert!(p.is_zero()),
        }
    }

    #[test]
    fn truncation_is_a_ring_map(a in gapped(), b in gapped(), e6 in 0i64..=18) {
        let e = qf(e6, 6);
        let t = |x: N| x.truncate(&e).unwrap();
        prop_assert_eq!(t(a.clone() + b.clone()), t(t(a.clone()) + t(b.clone())));
        prop_assert_eq!(t(a.clone() * b.clone()), t(t(a.clone()) * t(b.clone())));
        prop_assert!(t(a).terms().iter().all(|(en, _, _)| en < &e));
    }

    #[test]
    fn unit_inverse(a in gapped(), c in 1i64..=5, mu in -2i64..=2, e6 in 0i64..=18) {
        let unit = N::monomial(q(c), q(0), 2 * mu)
            + a.terms().iter().filter(|t| t.0 > q(0)).fold(N::zero(), |s, (en, m, x)| {
                s + N::monomial(x.clone(), en.clone(), *m)
            });
        let e = qf(e6, 6);
        let inv = unit.inverse_mod(&e).unwrap();
        prop_assert_eq!((unit * inv).truncate(&e).unwrap(), N::one().truncate(&e).unwrap());
    }
}
