//! Greatest common divisors of ranges of binomial coefficients, with Bezout
//! certificates.
//!
//! `d(m) = gcd{ C(m+1, i) : 1 <= i <= m-1 }` and
//! `d2(m) = gcd{ C(m+1, i) : 2 <= i <= m-2 }`. Two boundary conventions keep
//! the identity `d2(m) = d(m) d(m-1)` meaningful at small `m`: the range for
//! `d` never drops below `{C(m+1, 1)}` (so `d(1) = 2`), and the range for `d2`
//! never drops below `{C(m+1, 2)}` (so `d2(3) = C(4, 2) = 6`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Row `n` of Pascal's triangle, built by the additive recurrence.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut rows = PascalRows::new();
    let mut row = rows.next().unwrap();
    for _ in 0..n {
        row = rows.next().unwrap();
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial_row(n).swap_remove(k)
}

/// Successive rows of Pascal's triangle starting at row 0.
#[derive(Default)]
pub struct PascalRows {
    current: Vec<BigInt>,
}

impl PascalRows {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for PascalRows {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let next = if self.current.is_empty() {
            vec![BigInt::one()]
        } else {
            let mut row = Vec::with_capacity(self.current.len() + 1);
            row.push(BigInt::one());
            for w in self.current.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigInt::one());
            row
        };
        self.current = next.clone();
        Some(next)
    }
}

/// `(g, a, b)` with `a x + b y = g = gcd(x, y)`, from the classical
/// remainder sequence.
fn ext_gcd(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (x.clone(), y.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    (old_r, old_s, old_t)
}

/// Bezout coefficients for a list of positive integers, by a left fold of
/// pairwise extended Euclid: returns `(lambda, g)` with
/// `sum lambda_i m_i = g = gcd(m_1, ..., m_k)`.
pub fn extended_euclid(values: &[BigInt]) -> Result<(Vec<BigInt>, BigInt)> {
    let (first, rest) = values
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("extended_euclid needs a nonempty list".into()))?;
    if let Some(bad) = values.iter().find(|v| !v.is_positive()) {
        return Err(Error::InvalidArgument(format!("entries must be positive, got {bad}")));
    }
    let mut lambda = vec![BigInt::one()];
    let mut g = first.clone();
    for m in rest {
        let (next, a, b) = ext_gcd(&g, m);
        for l in lambda.iter_mut() {
            *l *= &a;
        }
        lambda.push(b);
        g = next;
    }
    Ok((lambda, g))
}

/// Which range of `C(m+1, i)` a certificate covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `1 <= i <= max(1, m-1)`.
    Full,
    /// `2 <= i <= max(2, m-2)`.
    Inner,
}

impl Family {
    pub fn range(self, m: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            Family::Full => 1..=(m.saturating_sub(1)).max(1),
            Family::Inner => 2..=(m.saturating_sub(2)).max(2),
        }
    }
}

/// A gcd of binomial coefficients together with a Bezout vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdCertificate {
    pub m: usize,
    pub family: Family,
    /// Lower index of the family; `lambda[k]` multiplies `C(m+1, first + k)`.
    pub first: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub lambda: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
    /// Set when a boundary convention was needed to define the range.
    pub convention: Option<&'static str>,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl GcdCertificate {
    /// Re-checks `sum lambda_i C(m+1, i) = value` and that `value` divides
    /// every member of the family.
    pub fn verify(&self) -> bool {
        let row = binomial_row(self.m + 1);
        let members: Vec<&BigInt> = self.family.range(self.m).map(|i| &row[i]).collect();
        let combo: BigInt = self.lambda.iter().zip(&members).map(|(l, b)| l * *b).sum();
        combo == self.value && members.iter().all(|b| b.is_multiple_of(&self.value))
    }
}

fn certificate_from_row(m: usize, family: Family, row: &[BigInt]) -> Result<GcdCertificate> {
    let range = family.range(m);
    let first = *range.start();
    let members: Vec<BigInt> = range.map(|i| row[i].clone()).collect();
    let (lambda, value) = extended_euclid(&members)?;
    let convention = match (family, m) {
        (Family::Full, 1) => Some("d(1) read as C(2,1) = 2"),
        (Family::Inner, 3) => Some("d2(3) read as the single middle binomial C(4,2)"),
        _ => None,
    };
    Ok(GcdCertificate { m, family, first, lambda, value, convention })
}

/// Certificate for `d(m)`, `m >= 1`.
pub fn d_certificate(m: usize) -> Result<GcdCertificate> {
    if m < 1 {
        return Err(Error::InvalidArgument("d(m) needs m >= 1".into()));
    }
    certificate_from_row(m, Family::Full, &binomial_row(m + 1))
}

pub fn d_of(m: usize) -> Result<BigInt> {
    Ok(d_certificate(m)?.value)
}

/// Certificate for `d2(m)`, `m >= 3`.
pub fn d2_of(m: usize) -> Result<GcdCertificate> {
    if m < 3 {
        return Err(Error::InvalidArgument("d2(m) needs m >= 3".into()));
    }
    certificate_from_row(m, Family::Inner, &binomial_row(m + 1))
}

/// `Some(p)` when `n = p^l` for a prime `p` and `l >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > n {
        return Some(n);
    }
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    (rest == 1).then_some(p)
}

/// `Some(p)` when `n = p^l` for an odd prime `p`.
pub fn odd_prime_power_base(n: u64) -> Option<u64> {
    prime_power_base(n).filter(|&p| p != 2)
}

/// Closed form of `d(m)`: `p` when `m + 1` is a power of the prime `p`, else 1.
pub fn d_formula(m: u64) -> u64 {
    prime_power_base(m + 1).unwrap_or(1)
}

/// One line of the `d` / `d2` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub m: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub d: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub d2: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub d_times_prev: BigInt,
    pub formula_ok: bool,
    pub ok: bool,
}

/// Rows `3 <= m <= max_m` comparing `d2(m)` with `d(m) d(m-1)` and `d(m)`
/// with its closed form. Walks Pascal's triangle once.
pub fn identity_table(max_m: usize) -> Result<Vec<IdentityRow>> {
    if max_m < 3 {
        return Err(Error::InvalidArgument("identity table needs M >= 3".into()));
    }
    let mut out = Vec::new();
    let mut prev_d = BigInt::from(3); // d(2)
    for (n, row) in PascalRows::new().enumerate().skip(4).take(max_m - 2) {
        let m = n - 1;
        let d = certificate_from_row(m, Family::Full, &row)?.value;
        let d2 = certificate_from_row(m, Family::Inner, &row)?.value;
        let d_times_prev = &d * &prev_d;
        let formula_ok = d == BigInt::from(d_formula(m as u64));
        out.push(IdentityRow { m, ok: d2 == d_times_prev, formula_ok, d_times_prev, d2, d: d.clone() });
        prev_d = d;
    }
    Ok(out)
}

/// True when `d(m)` matches its closed form for all `3 <= m <= max_m`.
pub fn d_formula_check(max_m: usize) -> Result<bool> {
    Ok(identity_table(max_m)?.iter().all(|r| r.formula_ok))
}

/// True when `d2(m) = d(m) d(m-1)` for all `3 <= m <= max_m`.
pub fn verify_d2_identity(max_m: usize) -> Result<bool> {
    Ok(identity_table(max_m)?.iter().all(|r| r.ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(extended_euclid(&big(&[4, 6])).unwrap(), (big(&[-1, 1]), BigInt::from(2)));
        let (l, g) = extended_euclid(&big(&[5, 10, 10])).unwrap();
        assert_eq!(g, BigInt::from(5));
        let combo: BigInt = l.iter().zip(big(&[5, 10, 10])).map(|(a, b)| a * b).sum();
        assert_eq!(combo, g);
        assert_eq!(extended_euclid(&big(&[7])).unwrap(), (big(&[1]), BigInt::from(7)));
        assert!(extended_euclid(&[]).is_err());
        assert!(extended_euclid(&big(&[3, 0])).is_err());
        assert!(extended_euclid(&big(&[-3])).is_err());
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_of(1).unwrap(), BigInt::from(2));
        assert_eq!(d_of(2).unwrap(), BigInt::from(3));
        assert_eq!(d_of(3).unwrap(), BigInt::from(2));
        assert_eq!(d_of(4).unwrap(), BigInt::from(5));
        assert_eq!(d_of(5).unwrap(), BigInt::from(1));
        assert_eq!(d_of(8).unwrap(), BigInt::from(3));
        assert_eq!(d_of(11).unwrap(), BigInt::from(1));
        assert!(d_of(0).is_err());
        assert_eq!(d_formula(8), 3);
        assert_eq!(d_formula(11), 1);
    }

    #[test]
    fn d2_examples() {
        assert_eq!(d2_of(3).unwrap().value, BigInt::from(6));
        assert!(d2_of(3).unwrap().convention.is_some());
        assert_eq!(d2_of(4).unwrap().value, BigInt::from(10));
        assert_eq!(d2_of(6).unwrap().value, BigInt::from(7));
        assert_eq!(d2_of(7).unwrap().value, BigInt::from(14));
        assert_eq!(d2_of(10).unwrap().value, BigInt::from(11));
        assert!(d2_of(2).is_err());
        for m in 3..40 {
            assert!(d2_of(m).unwrap().verify(), "m = {m}");
            assert!(d_certificate(m).unwrap().verify(), "m = {m}");
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(13), Some(13));
        assert_eq!(prime_power_base(1), None);
        assert_eq!(odd_prime_power_base(4), None);
        assert_eq!(odd_prime_power_base(25), Some(5));
    }

    #[test]
    fn identity_small_range() {
        let rows = identity_table(12).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0].m, 3);
        assert!(rows.iter().all(|r| r.ok && r.formula_ok));
        assert_eq!(binomial(7, 3), BigInt::from(35));
    }
}
