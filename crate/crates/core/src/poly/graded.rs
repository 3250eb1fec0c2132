use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};
use crate::scalar::{FromRational, Rational, Scalar};

/// Sparse polynomial in the weighted generators `CP_1, CP_2, ...`.
///
/// Zero coefficients are never stored. `asserted_dim`, when present, is a
/// promise that every monomial has that (real) dimension; it is checked on
/// construction and propagated through addition and multiplication.
#[derive(Clone)]
pub struct GradedPoly<S> {
    terms: BTreeMap<Monomial, S>,
    asserted_dim: Option<u32>,
}

impl<S: Scalar> GradedPoly<S> {
    pub fn zero() -> Self {
        GradedPoly { terms: BTreeMap::new(), asserted_dim: None }
    }

    /// The zero class, recorded as living in dimension `dim`.
    pub fn zero_of_dim(dim: u32) -> Self {
        GradedPoly { terms: BTreeMap::new(), asserted_dim: Some(dim) }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GradedPoly { terms, asserted_dim: None }
    }

    /// The generator `CP_i`.
    pub fn cp(i: usize) -> Self {
        Self::monomial(Monomial::generator(i), S::one())
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in pairs {
            p.add_term(m, &c);
        }
        p
    }

    /// Attaches a dimension promise, failing if some monomial disagrees.
    pub fn with_dimension(mut self, dim: u32) -> Result<Self> {
        if let Some(m) = self.terms.keys().find(|m| m.dimension() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: m.dimension() });
        }
        self.asserted_dim = Some(dim);
        Ok(self)
    }

    pub fn asserted_dim(&self) -> Option<u32> {
        self.asserted_dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// The dimension shared by all monomials, if the polynomial is
    /// homogeneous. The zero polynomial reports its asserted dimension.
    pub fn dimension(&self) -> Option<u32> {
        let mut dims = self.terms.keys().map(Monomial::dimension);
        match dims.next() {
            None => self.asserted_dim,
            Some(d) => dims.all(|e| e == d).then_some(d),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.dimension().is_some()
    }

    /// Dimension of a homogeneous polynomial; zero counts as dimension
    /// `asserted_dim` or `0`.
    pub fn homogeneous_dim(&self) -> Result<u32> {
        if self.is_zero() {
            return Ok(self.asserted_dim.unwrap_or(0));
        }
        self.dimension().ok_or(Error::NotHomogeneous)
    }

    /// Part of the polynomial in dimension `dim`.
    pub fn component(&self, dim: u32) -> Self {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.dimension() == dim)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            asserted_dim: Some(dim),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn merge_dim(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>> {
        match (a, b) {
            (Some(x), Some(y)) if x != y => Err(Error::DimensionMismatch { left: x, right: y }),
            (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
            (None, None) => Ok(None),
        }
    }

    /// Termwise sum. Fails when both operands promise different dimensions.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let dim = Self::merge_dim(self.asserted_dim, other.asserted_dim)?;
        if let Some(d) = dim {
            if let Some(m) = self.terms.keys().chain(other.terms.keys()).find(|m| m.dimension() != d) {
                return Err(Error::DimensionMismatch { left: d, right: m.dimension() });
            }
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out.asserted_dim = dim;
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
        self.asserted_dim = Self::merge_dim(self.asserted_dim, other.asserted_dim)
            .expect("adding polynomials of different asserted dimensions");
    }

    /// `self += c * m * other`.
    pub fn add_scaled_shifted(&mut self, c: &S, m: &Monomial, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (n, d) in &other.terms {
            let mut coeff = d.clone();
            coeff *= c;
            self.add_term(m.mul(n), &coeff);
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Monomial, S> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let mut coeff = c.clone();
                coeff *= d;
                let key = m.mul(n);
                match terms.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(coeff);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += &coeff;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let asserted_dim = match (self.asserted_dim, other.asserted_dim) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        GradedPoly { terms, asserted_dim }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return GradedPoly { terms: BTreeMap::new(), asserted_dim: self.asserted_dim };
        }
        GradedPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, d)| {
                    let mut v = d.clone();
                    v *= c;
                    (m.clone(), v)
                })
                .collect(),
            asserted_dim: self.asserted_dim,
        }
    }

    pub fn neg_ref(&self) -> Self {
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
            asserted_dim: self.asserted_dim,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping the ones that become zero.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedPoly<T> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        GradedPoly { terms, asserted_dim: self.asserted_dim }
    }

    /// Substitutes a polynomial for each generator: `CP_i -> images[i - 1]`.
    pub fn substitute(&self, images: &[GradedPoly<S>]) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, e) in m.factors() {
                let image = images.get(i - 1).ok_or_else(|| {
                    Error::InvalidArgument(format!("no image supplied for generator {i}"))
                })?;
                term = term.mul_ref(&image.pow(e));
            }
            out.add_assign_ref(&term);
        }
        Ok(out)
    }

    /// Largest generator index that occurs.
    pub fn max_generator(&self) -> usize {
        self.terms.keys().map(|m| m.exponents().len()).max().unwrap_or(0)
    }
}

impl GradedPoly<Rational> {
    /// Reduces the coefficients into another scalar ring.
    pub fn reduce<T: Scalar + FromRational>(&self) -> Result<GradedPoly<T>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = T::from_rational(c)?;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Ok(GradedPoly { terms, asserted_dim: self.asserted_dim })
    }
}

impl<S: PartialEq> PartialEq for GradedPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<S: Eq> Eq for GradedPoly<S> {}

impl<S: Scalar> Default for GradedPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Add for GradedPoly<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<'a, S: Scalar> Add<&'a GradedPoly<S>> for &'a GradedPoly<S> {
    type Output = GradedPoly<S>;
    fn add(self, rhs: &'a GradedPoly<S>) -> GradedPoly<S> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<S: Scalar> Sub for GradedPoly<S> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs.neg_ref());
        self
    }
}

impl<'a, S: Scalar> Sub<&'a GradedPoly<S>> for &'a GradedPoly<S> {
    type Output = GradedPoly<S>;
    fn sub(self, rhs: &'a GradedPoly<S>) -> GradedPoly<S> {
        let mut out = self.clone();
        out.add_assign_ref(&rhs.neg_ref());
        out
    }
}

impl<S: Scalar> Mul for GradedPoly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, S: Scalar> Mul<&'a GradedPoly<S>> for &'a GradedPoly<S> {
    type Output = GradedPoly<S>;
    fn mul(self, rhs: &'a GradedPoly<S>) -> GradedPoly<S> {
        self.mul_ref(rhs)
    }
}

impl<S: Scalar> Neg for GradedPoly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<S: Scalar> GradedPoly<S> {
    /// Text form with generators named `{var}1, {var}2, ...`; terms in
    /// ascending monomial order.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.render(var));
            } else {
                out.push_str(&format!("{abs}*{}", m.render(var)));
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for GradedPoly<S> {
    /// Canonical text form, e.g. `CP2 - 9/8*CP1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("CP"))
    }
}

impl<S: Scalar> fmt::Debug for GradedPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    /// `(generator, exponent)` pairs.
    monomial: Vec<(usize, u32)>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: Option<u32>,
    terms: Vec<TermRepr>,
}

impl<S: Scalar> Serialize for GradedPoly<S> {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr { monomial: m.factors().collect(), coeff: c.to_string() })
            .collect();
        let dim = self.asserted_dim.or_else(|| self.dimension());
        PolyRepr { dim, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedPoly<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c: Rational = t.coeff.parse().map_err(|_| D::Error::custom(format!("bad coefficient '{}'", t.coeff)))?;
            if t.monomial.iter().any(|&(i, _)| i == 0) {
                return Err(D::Error::custom("generator indices start at 1"));
            }
            terms.push((Monomial::from_pairs(&t.monomial), c));
        }
        let p = GradedPoly::from_terms(terms);
        match repr.dim {
            Some(dim) => p.with_dimension(dim).map_err(D::Error::custom),
            None => Ok(p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type P = GradedPoly<Rational>;

    fn cp(i: usize) -> P {
        P::cp(i)
    }

    #[test]
    fn addition_examples() {
        assert!((cp(1) + (-cp(1))).is_zero());
        let s = cp(2) + cp(1).pow(2);
        assert_eq!(s.len(), 2);
        assert_eq!(s.dimension(), Some(4));
        let half = cp(1).scale(&rat(1, 2));
        assert_eq!(&half + &half, cp(1));
    }

    #[test]
    fn multiplication_examples() {
        let sq = cp(1) * cp(1);
        assert_eq!(sq, P::monomial(Monomial::from_pairs(&[(1, 2)]), int(1)));
        assert_eq!(sq.dimension(), Some(4));
        assert!((P::zero() * cp(2)).is_zero());
        let lhs = (cp(1) + cp(2)) * cp(1);
        assert_eq!(lhs, cp(1).pow(2) + cp(1) * cp(2));
    }

    #[test]
    fn asserted_dimension_conflicts() {
        let a = cp(1).with_dimension(2).unwrap();
        let b = cp(2).with_dimension(4).unwrap();
        assert_eq!(a.try_add(&b), Err(Error::DimensionMismatch { left: 2, right: 4 }));
        assert!(cp(1).with_dimension(4).is_err());
        assert_eq!(a.mul_ref(&b).asserted_dim(), Some(6));
    }

    #[test]
    fn text_form() {
        let x2 = cp(2) - cp(1).pow(2).scale(&rat(9, 8));
        assert_eq!(x2.to_string(), "CP2 - 9/8*CP1^2");
        assert_eq!((-cp(1)).to_string(), "-CP1");
        assert_eq!(P::constant(rat(-3, 2)).to_string(), "-3/2");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = (cp(2) - cp(1).pow(2).scale(&rat(9, 8))).with_dimension(4).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"dim":4,"terms":[{"monomial":[[2,1]],"coeff":"1"},{"monomial":[[1,2]],"coeff":"-9/8"}]}"#);
        let back: P = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.asserted_dim(), Some(4));
        assert!(serde_json::from_str::<P>(r#"{"dim":2,"terms":[{"monomial":[[2,1]],"coeff":"1"}]}"#).is_err());
    }
}
