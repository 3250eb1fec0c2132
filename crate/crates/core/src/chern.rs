//! Tangent characteristic numbers of classes given in the `CP_i` basis.
//!
//! The tangent bundle of `CP_n` has total Chern class `(1 + x)^{n+1}` with
//! `x^{n+1} = 0`, so a product `CP_{n_1} x ... x CP_{n_k}` has Chern roots
//! `x_j` repeated `n_j + 1` times and fundamental class dual to
//! `prod x_j^{n_j}`. Numbers are first evaluated on power sums of the roots,
//! where a product splits over the factors, and then converted to the
//! elementary basis with a Newton-identity table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numth::odd_prime_power_base;
use crate::partition::{partitions, Partition};
use crate::poly::Monomial;
use crate::scalar::{in_z_half, odd_part, Rational};
use crate::Poly;

/// All Chern numbers `c_w[X]` of a class of dimension `2n`, one per
/// partition `w` of `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChernVector {
    n: usize,
    values: BTreeMap<Partition, Rational>,
}

impl ChernVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, w: &Partition) -> &Rational {
        &self.values[w]
    }

    /// Entries in canonical partition order, from `(n)` down to `(1, ..., 1)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.values.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    pub fn all_integral(&self) -> bool {
        self.values.values().all(|v| v.is_integer())
    }

    /// Every number lies in `Z[1/2]`.
    pub fn all_in_z_half(&self) -> bool {
        self.values.values().all(in_z_half)
    }

    /// Numbers indexed by partitions with a part equal to 1.
    pub fn c1_entries(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.iter().filter(|(w, _)| w.contains_part(1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ChernVector {
            n: self.n,
            values: self.values.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: 2 * self.n as u32,
                right: 2 * other.n as u32,
            });
        }
        Ok(ChernVector {
            n: self.n,
            values: self.values.iter().map(|(w, v)| (w.clone(), v + &other.values[w])).collect(),
        })
    }
}

impl Serialize for ChernVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (w, v) in self.iter() {
            map.serialize_entry(&w.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (w, v)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "c{w}: {v}")?;
        }
        Ok(())
    }
}

/// Expansion of a symmetric function in the power-sum basis.
type PowerSumExpansion = BTreeMap<Partition, Rational>;

fn union_product(a: &PowerSumExpansion, b: &PowerSumExpansion) -> PowerSumExpansion {
    let mut out = PowerSumExpansion::new();
    for (p, x) in a {
        for (q, y) in b {
            let entry = out.entry(p.union(q)).or_insert_with(Rational::zero);
            *entry += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Per-weight conversion tables between the elementary and power-sum bases.
struct NewtonTable {
    /// `e_w` in the power-sum basis, for every partition `w` of `n`.
    elementary: BTreeMap<Partition, PowerSumExpansion>,
    /// `p_n` in the elementary basis.
    top_power_sum: BTreeMap<Partition, Rational>,
}

/// `e_0, ..., e_n` in the power-sum basis via `k e_k = sum (-1)^{i-1} e_{k-i} p_i`.
fn elementary_in_power_sums(n: usize) -> Vec<PowerSumExpansion> {
    let mut e: Vec<PowerSumExpansion> = Vec::with_capacity(n + 1);
    e.push(PowerSumExpansion::from([(Partition::empty(), Rational::one())]));
    for k in 1..=n {
        let mut ek = PowerSumExpansion::new();
        for i in 1..=k {
            let sign = if i % 2 == 1 { Rational::one() } else { -Rational::one() };
            let pi = Partition::new(vec![i]).unwrap();
            for (lam, c) in &e[k - i] {
                let entry = ek.entry(lam.union(&pi)).or_insert_with(Rational::zero);
                *entry += c * &sign;
            }
        }
        let inv_k = Rational::new(BigInt::one(), BigInt::from(k));
        ek.values_mut().for_each(|v| *v *= &inv_k);
        ek.retain(|_, v| !v.is_zero());
        e.push(ek);
    }
    e
}

/// `p_1, ..., p_n` in the elementary basis via
/// `p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k`.
fn power_sums_in_elementary(n: usize) -> Vec<BTreeMap<Partition, Rational>> {
    let mut p: Vec<BTreeMap<Partition, Rational>> = vec![BTreeMap::new()];
    for k in 1..=n {
        let mut pk = BTreeMap::new();
        for i in 1..k {
            let sign = if i % 2 == 1 { Rational::one() } else { -Rational::one() };
            let ei = Partition::new(vec![i]).unwrap();
            for (w, c) in &p[k - i] {
                let entry = pk.entry(w.union(&ei)).or_insert_with(Rational::zero);
                *entry += c * &sign;
            }
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let entry = pk.entry(Partition::new(vec![k]).unwrap()).or_insert_with(Rational::zero);
        *entry += Rational::from_integer(BigInt::from(sign * k as i64));
        pk.retain(|_, v: &mut Rational| !v.is_zero());
        p.push(pk);
    }
    p
}

impl NewtonTable {
    fn build(n: usize) -> Self {
        let singles = elementary_in_power_sums(n);
        let mut elementary = BTreeMap::new();
        for w in partitions(n) {
            let mut acc = PowerSumExpansion::from([(Partition::empty(), Rational::one())]);
            for &part in w.parts() {
                acc = union_product(&acc, &singles[part]);
            }
            elementary.insert(w, acc);
        }
        let top_power_sum = if n == 0 {
            BTreeMap::new()
        } else {
            power_sums_in_elementary(n).pop().unwrap()
        };
        NewtonTable { elementary, top_power_sum }
    }
}

#[derive(Default)]
struct Caches {
    tables: HashMap<usize, Arc<NewtonTable>>,
    power_sum_numbers: HashMap<Monomial, Arc<BTreeMap<Partition, BigInt>>>,
}

fn caches() -> &'static RwLock<Caches> {
    static CACHE: OnceLock<RwLock<Caches>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn newton_table(n: usize) -> Arc<NewtonTable> {
    if let Some(t) = caches().read().unwrap().tables.get(&n) {
        return t.clone();
    }
    let t = Arc::new(NewtonTable::build(n));
    caches().write().unwrap().tables.entry(n).or_insert(t).clone()
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `p_lambda[M]` for a product of projective spaces `M`.
///
/// The power sum of the roots of `CP_{n_1} x ... x CP_{n_k}` is
/// `p_j = sum_t (n_t + 1) x_t^j`, so `p_lambda` pairs to a sum over ways of
/// distributing the parts of `lambda` among the factors, the parts given to
/// factor `t` summing to `n_t`. Parts of equal size are interchangeable,
/// which the binomial weights account for.
fn power_sum_number_uncached(m: &Monomial, lambda: &Partition) -> BigInt {
    let mult = lambda.multiplicities();
    let mut states: HashMap<Vec<usize>, BigInt> = HashMap::from([(mult.clone(), BigInt::one())]);
    for factor in m.to_parts() {
        let root_mult = BigInt::from(factor + 1);
        let mut next: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for (rem, w) in &states {
            let mut chosen = vec![0usize; rem.len()];
            distribute(rem, factor, rem.len().saturating_sub(1), &mut chosen, &mut |chosen| {
                let mut weight = w.clone();
                let mut parts = 0u32;
                let mut left = rem.clone();
                for (size, &c) in chosen.iter().enumerate() {
                    if c > 0 {
                        weight *= binomial(rem[size], c);
                        parts += c as u32;
                        left[size] -= c;
                    }
                }
                weight *= num_traits::pow(root_mult.clone(), parts as usize);
                *next.entry(left).or_insert_with(BigInt::zero) += weight;
            });
        }
        states = next;
    }
    let empty = vec![0usize; mult.len()];
    states.remove(&empty).unwrap_or_else(BigInt::zero)
}

/// Enumerates sub-multisets of `avail` (given as multiplicities by part
/// size) of total weight `target`, using part sizes `<= max_size`.
fn distribute(
    avail: &[usize],
    target: usize,
    max_size: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if target == 0 {
        visit(chosen);
        return;
    }
    if max_size == 0 {
        return;
    }
    let mut c = 0;
    while c <= avail[max_size] && c * max_size <= target {
        chosen[max_size] = c;
        distribute(avail, target - c * max_size, max_size - 1, chosen, visit);
        c += 1;
    }
    chosen[max_size] = 0;
}

fn power_sum_numbers(m: &Monomial) -> Arc<BTreeMap<Partition, BigInt>> {
    if let Some(v) = caches().read().unwrap().power_sum_numbers.get(m) {
        return v.clone();
    }
    let n = m.weight() as usize;
    let v: BTreeMap<_, _> =
        partitions(n).into_iter().map(|l| (l.clone(), power_sum_number_uncached(m, &l))).collect();
    let v = Arc::new(v);
    caches().write().unwrap().power_sum_numbers.entry(m.clone()).or_insert(v).clone()
}

/// `p_lambda[X]` for every partition `lambda` of `n`, extended linearly.
pub fn power_sum_numbers_of(x: &Poly) -> Result<BTreeMap<Partition, Rational>> {
    let n = half_dim(x)?;
    let mut out: BTreeMap<Partition, Rational> =
        partitions(n).into_iter().map(|l| (l, Rational::zero())).collect();
    for (m, c) in x.terms() {
        for (l, v) in power_sum_numbers(m).iter() {
            if !v.is_zero() {
                *out.get_mut(l).unwrap() += c * Rational::from_integer(v.clone());
            }
        }
    }
    Ok(out)
}

fn half_dim(x: &Poly) -> Result<usize> {
    Ok(x.homogeneous_dim()? as usize / 2)
}

/// Every tangent Chern number of a homogeneous class.
pub fn chern_numbers(x: &Poly) -> Result<ChernVector> {
    let n = half_dim(x)?;
    let p = power_sum_numbers_of(x)?;
    let table = newton_table(n);
    let values = table
        .elementary
        .iter()
        .map(|(w, expansion)| {
            let mut v = Rational::zero();
            for (lam, c) in expansion {
                let pl = &p[lam];
                if !pl.is_zero() {
                    v += c * pl;
                }
            }
            (w.clone(), v)
        })
        .collect();
    Ok(ChernVector { n, values })
}

/// The characteristic number `s_n = p_n` of a class of dimension `2n`.
///
/// On `CP_{n_1} x ... x CP_{n_k}` the power sum `p_n = sum_t (n_t+1) x_t^n`
/// reaches the fundamental class only when there is a single factor, so
/// `s_n[CP_n] = n + 1` and `s_n` vanishes on decomposables.
pub fn s_number(x: &Poly) -> Result<Rational> {
    let n = half_dim(x)?;
    let top = Monomial::generator(n.max(1));
    if n == 0 {
        return Ok(Rational::zero());
    }
    Ok(x.coefficient(&top) * Rational::from_integer(BigInt::from(n + 1)))
}

/// `s_n` recovered from the Chern vector through `p_n` written in the
/// elementary basis. Agrees with [`s_number`] on every class.
pub fn s_number_from_chern(v: &ChernVector) -> Rational {
    let table = newton_table(v.n);
    table.top_power_sum.iter().map(|(w, c)| c * v.get(w)).fold(Rational::zero(), |a, b| a + b)
}

/// True when every Chern number with a factor `c_1` vanishes.
pub fn is_su(x: &Poly) -> Result<bool> {
    Ok(chern_numbers(x)?.c1_entries().all(|(_, v)| v.is_zero()))
}

/// True when all Chern numbers of `x` lie in `Z[1/2]`.
pub fn has_z_half_chern_numbers(x: &Poly) -> Result<bool> {
    Ok(chern_numbers(x)?.all_in_z_half())
}

/// The odd number a polynomial generator of dimension `2n` must carry as
/// the odd part of its `s`-number: `p` when `n` or `n + 1` is a power of the
/// odd prime `p`, and `1` otherwise.
pub fn novikov_expected_odd_part(n: u64) -> u64 {
    odd_prime_power_base(n).or_else(|| odd_prime_power_base(n + 1)).unwrap_or(1)
}

/// Novikov's divisibility criterion for generators of the `SU` bordism
/// ring away from 2: `s` must be `2^k p` when `n = p^l` or `n + 1 = p^l` for
/// an odd prime `p`, and `2^k` otherwise (up to sign).
pub fn novikov_check(n: u64, s: &Rational) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("novikov criterion needs n >= 2, got {n}")));
    }
    let odd = odd_part(s)
        .ok_or_else(|| Error::InvalidArgument("s-number must be nonzero".to_string()))?;
    if !odd.denom().is_one() {
        return Err(Error::InvalidArgument(format!("s-number {s} is not in Z[1/2]")));
    }
    Ok(odd.numer().abs() == BigInt::from(novikov_expected_odd_part(n)))
}
