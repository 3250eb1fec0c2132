use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::GradedPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Univariate power series `sum c_k x^k` truncated after `x^order`, with
/// polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries<S> {
    coeffs: Vec<GradedPoly<S>>,
}

impl<S: Scalar> TruncSeries<S> {
    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![GradedPoly::zero(); order + 1] }
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = GradedPoly::one();
        }
        s
    }

    /// Builds a series from the given coefficients; missing ones are zero and
    /// extra ones are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = GradedPoly<S>>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &GradedPoly<S> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[GradedPoly<S>] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: GradedPoly<S>) {
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GradedPoly::is_zero)
    }

    /// Same series viewed at a lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i + 1) {
                if !b.is_zero() {
                    out.coeffs[i + j].add_assign_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GradedPoly<S>) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    /// `f(g(x))` truncated at the common order, by Horner's rule.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check_order(g)?;
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g)?;
            acc.coeffs[0].add_assign_ref(c);
        }
        Ok(acc)
    }

    /// The compositional inverse of `f = x + ...`.
    ///
    /// Coefficients are fixed one order at a time: with `g` correct below
    /// `x^k`, the `x^k` coefficient of `f(g)` is `g_k` plus terms in lower
    /// coefficients of `g`, so subtracting it makes `f(g) = x` through `x^k`.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[1] != GradedPoly::one() {
            return Err(Error::NotUnitLeading(self.coeffs[1].to_string()));
        }
        let mut g = Self::x(n);
        for k in 2..=n {
            let head = self.truncate(k).compose(&g.truncate(k))?;
            let fix = head.coeffs[k].clone();
            g.coeffs[k] = &g.coeffs[k] - &fix;
        }
        Ok(g)
    }

    pub fn to_mv(&self, nvars: usize, var: usize) -> MvSeries<S> {
        let mut out = MvSeries::zero(nvars, self.order());
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            out.add_term(e, c);
        }
        out
    }
}

/// Multivariate power series in `nvars` variables truncated at total degree
/// `order`, with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MvSeries<S> {
    nvars: usize,
    order: usize,
    terms: BTreeMap<Vec<u32>, GradedPoly<S>>,
}

impl<S: Scalar> MvSeries<S> {
    pub fn zero(nvars: usize, order: usize) -> Self {
        MvSeries { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: usize, c: GradedPoly<S>) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(vec![0; nvars], &c);
        s
    }

    pub fn var(nvars: usize, order: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut s = Self::zero(nvars, order);
        s.add_term(e, &GradedPoly::one());
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GradedPoly<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> GradedPoly<S> {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &GradedPoly<S>) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() || exps.iter().sum::<u32>() as usize > self.order {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.nvars != other.nvars {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &c.neg_ref());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut acc: BTreeMap<Vec<u32>, GradedPoly<S>> = BTreeMap::new();
        for (e, a) in &self.terms {
            let da: u32 = e.iter().sum();
            for (f, b) in &other.terms {
                let db: u32 = f.iter().sum();
                if (da + db) as usize > self.order {
                    continue;
                }
                let key: Vec<u32> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                acc.entry(key).or_default().add_assign_ref(&a.mul_ref(b));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MvSeries { nvars: self.nvars, order: self.order, terms: acc })
    }

    pub fn scale(&self, c: &GradedPoly<S>) -> Self {
        let mut terms = BTreeMap::new();
        for (e, a) in &self.terms {
            let v = a.mul_ref(c);
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        MvSeries { nvars: self.nvars, order: self.order, terms }
    }

    /// `self^0, self^1, ..., self^k`.
    pub fn powers(&self, k: usize) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(Self::constant(self.nvars, self.order, GradedPoly::one()));
        for i in 1..=k {
            let next = out[i - 1].mul(self)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Substitutes `self` into a univariate series: `f(self)`.
    pub fn substitute_into(&self, f: &TruncSeries<S>) -> Result<Self> {
        if !self.coeff(&vec![0; self.nvars]).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = f.order().min(self.order);
        let powers = self.powers(n)?;
        let mut out = Self::zero(self.nvars, self.order);
        for (k, c) in f.coeffs().iter().enumerate().take(n + 1) {
            if c.is_zero() {
                continue;
            }
            out = out.add(&powers[k].scale(c))?;
        }
        Ok(out)
    }

    /// Substitutes variables: `var_i -> images[i]`.
    pub fn substitute_vars(&self, images: &[MvSeries<S>]) -> Result<Self> {
        let target = images.first().ok_or_else(|| {
            Error::InvalidArgument("substitution needs at least one image".to_string())
        })?;
        let (nvars, order) = (target.nvars, target.order);
        let max_exp = self.order;
        let mut pows = Vec::new();
        for img in images {
            pows.push(img.powers(max_exp)?);
        }
        let mut out = Self::zero(nvars, order);
        for (e, c) in &self.terms {
            let mut term = Self::constant(nvars, order, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&pows[i][k as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum::<u32>() as usize).min()
    }

    /// Reads a one-variable series back as a [`TruncSeries`].
    pub fn to_univariate(&self) -> Result<TruncSeries<S>> {
        if self.nvars != 1 {
            return Err(Error::InvalidArgument("series has more than one variable".to_string()));
        }
        let mut s = TruncSeries::zero(self.order);
        for (e, c) in &self.terms {
            s.set_coeff(e[0] as usize, c.clone());
        }
        Ok(s)
    }
}

impl<S: Scalar> std::fmt::Debug for TruncSeries<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut l = f.debug_map();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                l.entry(&format_args!("x^{k}"), c);
            }
        }
        l.finish()
    }
}

impl<S: Scalar> std::fmt::Debug for MvSeries<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    type S = TruncSeries<Rational>;

    fn num(v: i64) -> GradedPoly<Rational> {
        GradedPoly::constant(int(v))
    }

    fn series(order: usize, cs: &[i64]) -> S {
        S::from_coeffs(order, cs.iter().map(|&c| num(c)))
    }

    #[test]
    fn compose_examples() {
        let g = series(3, &[0, 1, 1]);
        assert_eq!(S::x(3).compose(&g).unwrap(), g);
        let f = series(3, &[0, 0, 1]);
        assert_eq!(f.compose(&g).unwrap(), series(3, &[0, 0, 1, 2]));
        assert_eq!(f.compose(&series(3, &[1, 1])), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn revert_examples() {
        assert_eq!(S::x(5).revert().unwrap(), S::x(5));
        let f = series(4, &[0, 1, 1]);
        let g = f.revert().unwrap();
        assert_eq!(g, series(4, &[0, 1, -1, 2, -5]));
        assert_eq!(f.compose(&g).unwrap(), S::x(4));
        assert_eq!(g.revert().unwrap(), f);
        assert!(matches!(series(4, &[0, 2, 1]).revert(), Err(Error::NotUnitLeading(_))));
    }

    #[test]
    fn mv_substitution_matches_univariate() {
        let f = series(5, &[0, 1, 3, 0, -2]);
        let g = series(5, &[0, 1, 1]);
        let direct = f.compose(&g).unwrap();
        let via_mv = g.to_mv(1, 0).substitute_into(&f).unwrap().to_univariate().unwrap();
        assert_eq!(direct, via_mv);
    }
}
