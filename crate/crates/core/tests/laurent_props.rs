use std::collections::BTreeMap;

use proptest::prelude::*;
use tripletorb_core::arith::{binom, binom_t};
use tripletorb_core::laurent::{Base, Exponent, ExtractOptions, Integrand, Target, Window};
use tripletorb_core::{int, rat, MultiSeries, TPoly};

const VARS: [&str; 2] = ["x", "y"];

fn windows() -> Vec<Window> {
    vec![Window::new(-6, 6), Window::new(-6, 6)]
}

fn coeff() -> impl Strategy<Value = TPoly> {
    prop::collection::vec((-9i64..9, 1i64..5).prop_map(|(n, d)| rat(n, d)), 1..3)
        .prop_map(TPoly::from_coeffs)
}

fn series() -> impl Strategy<Value = MultiSeries> {
    prop::collection::vec(((-3i32..=3, -3i32..=3), coeff()), 0..10).prop_map(|terms| {
        MultiSeries::from_terms(
            &VARS,
            &windows(),
            false,
            terms.into_iter().map(|((a, b), c)| (vec![a, b], c)),
        )
        .unwrap()
    })
}

fn naive_product(a: &MultiSeries, b: &MultiSeries) -> BTreeMap<Vec<i32>, TPoly> {
    let mut out: BTreeMap<Vec<i32>, TPoly> = BTreeMap::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(TPoly::zero);
            *slot += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(1+z)^{a0 + a1 t} (1 - w/z)^{-b} z^{-c} w^{-d}`, coefficient of `w^ew z^ez`.
fn integrand(a0: i64, a1: i64, b: i64, c: i64, d: i64, ew: i32, ez: i32) -> Integrand {
    let mut ig = Integrand::new(&["w", "z"]);
    ig.push(
        Base::Binomial {
            sign: 1,
            num: Some(1),
            den: None,
        },
        Exponent::with_t(a0, a1),
    );
    ig.push(
        Base::Binomial {
            sign: -1,
            num: Some(0),
            den: Some(1),
        },
        Exponent::int(-b),
    );
    ig.push(Base::Monomial(1), Exponent::int(-c));
    ig.push(Base::Monomial(0), Exponent::int(-d));
    ig.set_target(0, Target::Coefficient(ew));
    ig.set_target(1, Target::Coefficient(ez));
    ig
}

fn closed_form(a0: i64, a1: i64, b: i64, c: i64, d: i64, ew: i32, ez: i32) -> TPoly {
    let n2 = i64::from(ew) + d;
    if n2 < 0 {
        return TPoly::zero();
    }
    let n1 = i64::from(ez) + c + n2;
    if n1 < 0 {
        return TPoly::zero();
    }
    let outer = binom(b + n2 - 1, n2);
    let inner = if a1 == 0 {
        TPoly::constant(binom(a0, n1))
    } else {
        binom_t(a0, n1)
    };
    inner.scale(&outer)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiply_matches_naive(a in series(), b in series()) {
        let prod = a.multiply(&b).unwrap();
        let got: BTreeMap<Vec<i32>, TPoly> = prod.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        prop_assert_eq!(got, naive_product(&a, &b));
    }

    #[test]
    fn multiplication_commutes(a in series(), b in series()) {
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
    }

    #[test]
    fn residue_is_linear(a in series(), b in series(), s in coeff(), u in coeff()) {
        let combo = a.scale(&s).add(&b.scale(&u)).unwrap();
        let lhs = combo.residue("x").unwrap();
        let rhs = a.residue("x").unwrap().scale(&s).add(&b.residue("x").unwrap().scale(&u)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn residue_of_derivative_vanishes(a in series()) {
        for v in VARS {
            let r = a.derivative(v).unwrap().residue(v).unwrap();
            prop_assert!(r.is_empty());
        }
    }

    #[test]
    fn constant_term_commutes_with_order(a in series()) {
        let xy = a.constant_term("x").unwrap().constant_term("y").unwrap();
        let yx = a.constant_term("y").unwrap().constant_term("x").unwrap();
        prop_assert_eq!(xy.constant_value().unwrap(), yx.constant_value().unwrap());
        prop_assert_eq!(xy.constant_value().unwrap(), a.coeff(&[0, 0]));
    }

    #[test]
    fn extraction_matches_closed_form(
        a0 in -6i64..8, a1 in 0i64..2, b in 1i64..5, c in 0i64..5, d in 0i64..4,
        ew in -3i32..3, ez in -3i32..3,
    ) {
        let ig = integrand(a0, a1, b, c, d, ew, ez);
        let got = ig.extract(&ExtractOptions::default()).unwrap().scalar().unwrap();
        prop_assert_eq!(got, closed_form(a0, a1, b, c, d, ew, ez));
    }

    #[test]
    fn window_margin_does_not_change_result(
        a0 in -6i64..8, a1 in 0i64..2, b in 1i64..5, c in 0i64..5, d in 0i64..4,
        ew in -3i32..3, ez in -3i32..3, margin in 1i64..12,
    ) {
        let ig = integrand(a0, a1, b, c, d, ew, ez);
        let tight = ig.extract(&ExtractOptions::default()).unwrap();
        let wide = ig.extract(&ExtractOptions { margin, ..Default::default() }).unwrap();
        prop_assert_eq!(tight.scalar().unwrap(), wide.scalar().unwrap());
    }

    #[test]
    fn evaluation_at_t_commutes_with_extraction(a0 in -4i64..6, b in 1i64..4, c in 0i64..4, t in -5i64..6) {
        let ig = integrand(a0, 1, b, c, 0, 0, -1);
        let poly = ig.extract(&ExtractOptions::default()).unwrap().scalar().unwrap();
        let at_t = integrand(a0 + t, 0, b, c, 0, 0, -1)
            .extract(&ExtractOptions::default())
            .unwrap()
            .scalar()
            .unwrap();
        prop_assert_eq!(TPoly::constant(poly.eval(&int(t))), at_t);
    }
}

#[test]
fn overflow_is_reported_when_uncertified() {
    let w = [Window::new(-1, 1)];
    let a = MultiSeries::from_terms(&["x"], &w, false, [(vec![1], TPoly::one())]).unwrap();
    assert!(a.multiply(&a).is_err());
    let c = MultiSeries::from_terms(&["x"], &w, true, [(vec![1], TPoly::one())]).unwrap();
    assert!(c.multiply(&c).unwrap().is_empty());
}
