use proptest::prelude::*;
use tripletorb_core::arith::{binom, factorial, falling, poly_gcd, BinomialArg};
use tripletorb_core::{binom_general, int, pochhammer, rat, ratpoly_gcd, BigRat, RatPoly, TPoly};

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn ratpoly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(RatPoly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pascal_rule(x in small_rat(), n in 1u32..12) {
        let lhs = binom_general(&x.offset(1), n);
        let rhs = binom_general(&x, n) + binom_general(&x, n - 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rising_is_shifted_falling(x in small_rat(), a in 0u32..12) {
        prop_assert_eq!(pochhammer(&x, a), falling(&x.offset(i64::from(a) - 1), a));
    }

    #[test]
    fn falling_over_factorial(x in small_rat(), n in 0u32..12) {
        let f = BigRat::from_integer(factorial(u64::from(n)));
        prop_assert_eq!(binom_general(&x, n) * f, falling(&x, n));
    }

    #[test]
    fn negation_rule(n in 0i64..30, k in 0i64..15) {
        // binom(-n, k) = (-1)^k binom(n + k - 1, k)
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(binom(-n, k), sign * binom(n + k - 1, k));
    }

    #[test]
    fn vandermonde_convolution(x in small_rat(), y in small_rat(), n in 0u32..9) {
        let lhs = binom_general(&(&x + &y), n);
        let rhs = (0..=n).fold(int(0), |acc, j| {
            acc + binom_general(&x, j) * binom_general(&y, n - j)
        });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_binomial_evaluates_pointwise(shift in -10i64..10, k in 0u32..8, t in -20i64..20) {
        let p = binom_general(&TPoly::linear(1, shift), k);
        prop_assert_eq!(p.eval(&int(t)), binom_general(&int(t + shift), k));
    }

    #[test]
    fn ring_axioms(a in ratpoly(4), b in ratpoly(4), c in ratpoly(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatPoly::zero());
        prop_assert_eq!(&a * &RatPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratpoly(4), b in ratpoly(4), x in small_rat()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn division_reconstructs(a in ratpoly(6), b in ratpoly(3)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in ratpoly(4), b in ratpoly(4), c in ratpoly(2)) {
        let f = &a * &c;
        let g = &b * &c;
        prop_assume!(!f.is_zero() || !g.is_zero());
        let d = ratpoly_gcd(&f, &g).unwrap();
        prop_assert!(f.div_rem(&d).unwrap().1.is_zero());
        prop_assert!(g.div_rem(&d).unwrap().1.is_zero());
        if !c.is_zero() {
            prop_assert!(d.div_rem(&c.monic()).unwrap().1.is_zero());
        }
        prop_assert_eq!(d.leading().cloned(), Some(int(1)));
    }

    #[test]
    fn gcd_is_scale_invariant(a in ratpoly(4), b in ratpoly(4), s in small_rat()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && s != int(0));
        prop_assert_eq!(poly_gcd(&a.scale(&s), &b).unwrap(), poly_gcd(&a, &b).unwrap());
    }
}
