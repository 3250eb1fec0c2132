//! Derived values checked against independent computations.

use std::collections::BTreeMap;

use cobord::chern::{chern_numbers, s_number};
use cobord::fgl::{fgl_coefficients, fgl_series, g_series, inverse_series};
use cobord::generators::{build_e, build_y, GeneratorSet};
use cobord::numth::{binomial, d2_of, d_of};
use cobord::partition::partitions;
use cobord::poly::{monomials_of_weight, MvSeries};
use cobord::scalar::rat;
use cobord::{Poly, Rational, Series};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

type RootPoly = BTreeMap<Vec<u32>, BigInt>;

fn root_mul(a: &RootPoly, b: &RootPoly, caps: &[u32]) -> RootPoly {
    let mut out = RootPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().zip(caps).any(|(x, c)| x > c) {
                continue;
            }
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `c_w[CP_{n_1} x ... x CP_{n_k}]` straight from the Chern roots:
/// `c(T) = prod (1 + x_j)^{n_j + 1}` modulo `x_j^{n_j + 1}`.
fn chern_root_number(ns: &[usize], w: &[usize]) -> BigInt {
    let k = ns.len();
    let caps: Vec<u32> = ns.iter().map(|&n| n as u32).collect();
    let mut total: RootPoly = [(vec![0; k], BigInt::one())].into();
    for (j, &n) in ns.iter().enumerate() {
        let mut factor = RootPoly::new();
        factor.insert(vec![0; k], BigInt::one());
        let mut e = vec![0; k];
        e[j] = 1;
        factor.insert(e, BigInt::one());
        for _ in 0..=n {
            total = root_mul(&total, &factor, &caps);
        }
    }
    let component = |i: usize| -> RootPoly {
        total.iter().filter(|(e, _)| e.iter().sum::<u32>() as usize == i).map(|(e, c)| (e.clone(), c.clone())).collect()
    };
    let mut prod: RootPoly = [(vec![0; k], BigInt::one())].into();
    for &part in w {
        prod = root_mul(&prod, &component(part), &caps);
    }
    prod.get(&caps).cloned().unwrap_or_default()
}

#[test]
fn chern_numbers_match_chern_roots() {
    for n in 1..=6 {
        for m in monomials_of_weight(n) {
            let ns = m.to_parts();
            let v = chern_numbers(&Poly::monomial(m.clone(), Rational::one())).unwrap();
            for w in partitions(n as usize) {
                let want = Rational::from_integer(chern_root_number(&ns, w.parts()));
                assert_eq!(v.get(&w), &want, "c_{w} of {m}");
            }
        }
    }
}

#[test]
fn s_number_of_projective_spaces() {
    // s_n[CP_n] = n + 1, and s vanishes on decomposables
    for n in 1..=8 {
        assert_eq!(s_number(&Poly::cp(n)).unwrap(), Rational::from_integer((n as i64 + 1).into()));
    }
    assert!(s_number(&(Poly::cp(2) * Poly::cp(3))).unwrap().is_zero());
}

fn poly_series_mul(a: &[Poly], b: &[Poly], n: usize) -> Vec<Poly> {
    (0..=n)
        .map(|k| {
            let mut acc = Poly::zero();
            for i in 0..=k {
                acc.add_assign_ref(&a[i].mul_ref(&b[k - i]));
            }
            acc
        })
        .collect()
}

#[test]
fn exponential_matches_lagrange_inversion() {
    // [x^n] exp = (1/n) [w^{n-1}] (w / log w)^n
    let table = fgl_coefficients(20).unwrap();
    let order = table.order();
    let h: Vec<Poly> = (0..=order)
        .map(|i| if i == 0 { Poly::one() } else { Poly::cp(i).scale(&rat(1, i as i64 + 1)) })
        .collect();
    let mut q = vec![Poly::one()];
    for k in 1..=order {
        let mut acc = Poly::zero();
        for i in 1..=k {
            acc.add_assign_ref(&h[i].mul_ref(&q[k - i]));
        }
        q.push(-acc);
    }
    let mut power = q.clone();
    for n in 1..=order {
        if n > 1 {
            power = poly_series_mul(&power, &q, order);
        }
        let want = power[n - 1].scale(&rat(1, n as i64));
        assert_eq!(table.exp().coeff(n), &want, "x^{n}");
    }
}

#[test]
fn reversion_of_x_minus_x_squared_gives_catalan_numbers() {
    let n = 12;
    let f = Series::from_coeffs(n, [Poly::zero(), Poly::one(), -Poly::one()]);
    let g = f.revert().unwrap();
    for k in 1..=n {
        let catalan = binomial(2 * (k - 1), k - 1) / BigInt::from(k);
        assert_eq!(g.coeff(k), &Poly::constant(Rational::from_integer(catalan)), "x^{k}");
    }
    assert_eq!(f.compose(&g).unwrap(), Series::x(n));
}

#[test]
fn law_is_linearized_by_the_logarithm() {
    let table = fgl_coefficients(16).unwrap();
    let f = fgl_series(&table, 2).unwrap();
    let x = MvSeries::var(2, table.order(), 0);
    let y = MvSeries::var(2, table.order(), 1);
    let lhs = f.substitute_into(table.log()).unwrap();
    let rhs = x.substitute_into(table.log()).unwrap().add(&y.substitute_into(table.log()).unwrap()).unwrap();
    assert!(lhs.sub(&rhs).unwrap().is_zero());
}

#[test]
fn low_alphas_by_hand() {
    // exp(log x + log y) to third order with log x = x + CP1 x^2/2 + CP2 x^3/3
    let t = fgl_coefficients(6).unwrap();
    assert_eq!(t.alpha(1, 1).unwrap(), &-Poly::cp(1));
    let a12 = Poly::cp(1).pow(2) - Poly::cp(2);
    assert_eq!(t.alpha(1, 2).unwrap(), &a12);
    assert_eq!(t.alpha(2, 1).unwrap(), &a12);
}

#[test]
fn inverse_series_order_three() {
    // F(x, i(x)) = 0 gives i(x) = -x + alpha11 x^2 + ..., so a_1 = CP1
    let t = fgl_coefficients(12).unwrap();
    let inv = inverse_series(&t).unwrap();
    assert_eq!(inv.coeff(1), &-Poly::one());
    assert_eq!(inv.coeff(2), t.alpha(1, 1).unwrap());
    let g = g_series(&t).unwrap();
    assert_eq!(g.a[&1], Poly::cp(1));
}

#[test]
fn generator_s_values_agree_with_binomial_gcds() {
    let t = fgl_coefficients(22).unwrap();
    for m in 1..=11 {
        let s = s_number(&build_e(m, &t).unwrap()).unwrap();
        assert_eq!(s.abs(), Rational::from_integer(d_of(m).unwrap()), "e{m}");
    }
    for k in 3..=11 {
        let s = s_number(&build_y(k, &t).unwrap()).unwrap();
        assert_eq!(s.abs(), Rational::from_integer(d2_of(k).unwrap().value), "y{k}");
    }
}

#[test]
fn gamma_s_values_are_novikov_minimal() {
    let t = fgl_coefficients(24).unwrap();
    let gamma = GeneratorSet::gamma(&t, 12).unwrap();
    let odd: Vec<String> = gamma.entries().iter().map(|e| e.s_value().to_string()).collect();
    assert_eq!(&odd[3..], ["5", "7", "7", "3", "3", "11", "11", "13"]);
    for e in &gamma.entries()[3..] {
        assert!(e.su() && e.novikov(), "{}", e.name());
    }
}
