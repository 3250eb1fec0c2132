use cobord::chern::{chern_numbers, s_number};
use cobord::expr::{parse_class, Env};
use cobord::fgl::fgl_coefficients;
use cobord::numth::{binomial_row, d_of};
use cobord::poly::{monomials_of_weight, Monomial};
use cobord::scalar::rat;
use cobord::{Poly, Rational, Series};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    let term = (proptest::collection::vec(0u32..=2, 4), small_rational());
    proptest::collection::vec(term, 0..5)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c))))
}

fn homogeneous(weight: u32) -> impl Strategy<Value = Poly> {
    let monos = monomials_of_weight(weight);
    proptest::collection::vec(small_rational(), monos.len())
        .prop_map(move |cs| Poly::from_terms(monos.clone().into_iter().zip(cs)).with_dimension(2 * weight).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * Poly::one(), a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn json_round_trip(a in poly()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Poly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let t = fgl_coefficients(4).unwrap();
        let env = Env::new(&t);
        prop_assert_eq!(parse_class(&a.to_string(), &env).unwrap(), a);
    }

    #[test]
    fn reversion_is_a_two_sided_inverse(cs in proptest::collection::vec(small_rational(), 1..8)) {
        let n = cs.len() + 1;
        let coeffs = [Poly::zero(), Poly::one()].into_iter().chain(cs.into_iter().map(Poly::constant));
        let f = Series::from_coeffs(n, coeffs);
        let g = f.revert().unwrap();
        prop_assert_eq!(f.compose(&g).unwrap(), Series::x(n));
        prop_assert_eq!(g.compose(&f).unwrap(), Series::x(n));
    }

    #[test]
    fn chern_numbers_are_linear(a in homogeneous(4), b in homogeneous(4), t in small_rational()) {
        let sum = a.clone() + b.scale(&t);
        let want = chern_numbers(&a).unwrap().add(&chern_numbers(&b).unwrap().scale(&t)).unwrap();
        prop_assert_eq!(chern_numbers(&sum).unwrap(), want);
    }

    #[test]
    fn s_number_kills_decomposables(a in homogeneous(2), b in homogeneous(3)) {
        prop_assert!(s_number(&(a * b)).unwrap().is_zero());
    }

    #[test]
    fn d_divides_its_binomials(m in 2usize..300) {
        let d = d_of(m).unwrap();
        let row = binomial_row(m + 1);
        for b in &row[1..m] {
            prop_assert!((b % &d).is_zero());
        }
    }
}
