use cobord::fgl::{fgl_coefficients, FglTable};
use cobord::generators::{GeneratorEntry, GeneratorSet, Provenance};
use cobord::poly::monomials_of_weight;
use cobord::regseq::{
    expected_quotient_ranks, ideal_membership, is_regular_up_to, CoeffField, Coordinates, QuotientContext,
};
use cobord::scalar::rat;
use cobord::{Poly, Rational};
use proptest::prelude::*;

const N: u32 = 16;

fn table() -> FglTable {
    fgl_coefficients(N).unwrap()
}

fn fields() -> Vec<CoeffField> {
    CoeffField::parse_list("q,3,5").unwrap()
}

#[test]
fn gamma_permutations_and_subsequences_stay_regular() {
    let t = table();
    let gamma = GeneratorSet::gamma(&t, 8).unwrap();
    let n = gamma.len();
    assert!(is_regular_up_to(&gamma, N, &fields(), &t).unwrap().verdict);
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub = gamma.select(&idx);
        assert!(is_regular_up_to(&sub, N, &[CoeffField::Rationals], &t).unwrap().verdict, "{:?}", sub.names());
    }
    let reversed: Vec<usize> = (0..n).rev().collect();
    assert!(is_regular_up_to(&gamma.select(&reversed), N, &fields(), &t).unwrap().verdict);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn shuffled_gamma_is_regular(order in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
        let t = table();
        let gamma = GeneratorSet::gamma(&t, 8).unwrap().select(&order);
        prop_assert!(is_regular_up_to(&gamma, N, &fields(), &t).unwrap().verdict);
    }
}

#[test]
fn square_of_a_generator_is_not_regular() {
    let t = table();
    let x2 = GeneratorSet::x_family(&t).unwrap().select(&[0]);
    let sq = GeneratorEntry::new("x2^2", x2.classes()[0].pow(2), Provenance::Given { source: "x2^2".into() }).unwrap();
    let mut bad = x2.clone();
    bad.push(sq);
    let rep = is_regular_up_to(&bad, N, &fields(), &t).unwrap();
    assert!(!rep.verdict);
    assert!(rep.field_disagreements.is_empty());
    assert!(rep.profiles.iter().all(|p| p.first_failure() == Some(8)));
}

#[test]
fn product_formula_matches_a_hand_count() {
    // quotient by generators of weight 2 and 3: p(k) - p(k-2) - p(k-3) + p(k-5)
    let ranks = expected_quotient_ranks(&[2, 3], 6);
    assert_eq!(ranks, vec![1, 1, 1, 1, 2, 3, 4]);
}

fn y_context(t: &FglTable) -> QuotientContext<Rational> {
    QuotientContext::new(&GeneratorSet::y_family(t, 8).unwrap(), N, Coordinates::Projective).unwrap()
}

fn combination(weight: u32, coeffs: &[Rational]) -> Poly {
    Poly::from_terms(monomials_of_weight(weight).into_iter().zip(coeffs.iter().cloned())).with_dimension(2 * weight).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_idempotent_and_linear(
        a in proptest::collection::vec((-5i64..=5, 1i64..=3), 11),
        b in proptest::collection::vec((-5i64..=5, 1i64..=3), 11),
        s in -4i64..=4,
    ) {
        let t = table();
        let ctx = y_context(&t);
        let x = combination(6, &a.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>());
        let y = combination(6, &b.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>());
        let nx = ctx.normal_form(&x).unwrap();
        prop_assert_eq!(ctx.normal_form(&nx).unwrap(), nx.clone());
        let ny = ctx.normal_form(&y).unwrap();
        let s = Rational::from_integer(s.into());
        let combo = x.clone() + y.scale(&s);
        prop_assert_eq!(ctx.normal_form(&combo).unwrap(), nx.clone() + ny.scale(&s));
        // x - nf(x) lies in the ideal
        let diff = x - nx;
        let m = ideal_membership(&diff, ctx.sequence(), CoeffField::Rationals, &t, false).unwrap();
        prop_assert!(m.member);
    }
}

#[test]
fn membership_certificates_over_prime_fields() {
    let t = table();
    let y = GeneratorSet::y_family(&t, 8).unwrap();
    let x4 = GeneratorSet::x_family(&t).unwrap().classes()[2].clone();
    for f in CoeffField::parse_list("q,3,5,7").unwrap() {
        let m = ideal_membership(&x4, &y, f, &t, true).unwrap();
        assert!(m.member, "{f}");
        assert!(!m.certificate.unwrap().is_empty());
    }
    assert!(!ideal_membership(&Poly::cp(2), &y, CoeffField::Rationals, &t, false).unwrap().member);
}
