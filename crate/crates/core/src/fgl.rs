//! The universal formal group law of complex cobordism over `MU_* (x) Q`,
//! truncated by dimension.
//!
//! With the Mishchenko logarithm `log(x) = sum CP_i x^{i+1} / (i+1)` and
//! `exp` its compositional inverse, `F(x, y) = exp(log x + log y)`. The
//! coefficient `alpha_ij` of `x^i y^j` lives in dimension `2(i + j - 1)`, so a
//! table truncated at dimension `N` keeps every term of total degree
//! `<= N/2 + 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::chern::{chern_numbers, s_number};
use crate::error::{Error, Result};
use crate::numth::binomial_row;
use crate::poly::MvSeries;
use crate::scalar::{in_z_half, Rational};
use crate::{Poly, Series};

/// Series order needed to see every coefficient of dimension `<= max_dim`
/// in a series whose `x^k` coefficient has dimension `2(k - 1)`.
pub fn series_order(max_dim: u32) -> usize {
    max_dim as usize / 2 + 1
}

fn check_dim(max_dim: u32) -> Result<()> {
    if max_dim < 2 || !max_dim.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "truncation dimension must be even and >= 2, got {max_dim}"
        )));
    }
    Ok(())
}

/// `log(x) = sum_{i >= 0} CP_i x^{i+1} / (i+1)` with `CP_0 = 1`, through
/// coefficients of dimension `max_dim`.
pub fn mishchenko_log(max_dim: u32) -> Result<Series> {
    check_dim(max_dim)?;
    let order = series_order(max_dim);
    let coeffs = (0..=order).map(|k| match k {
        0 => Poly::zero(),
        1 => Poly::one(),
        _ => Poly::cp(k - 1).scale(&Rational::new(BigInt::one(), BigInt::from(k))),
    });
    Ok(Series::from_coeffs(order, coeffs))
}

/// The coefficients `alpha_ij`, `i, j >= 1`, of the universal formal group law
/// `F(x, y) = x + y + sum alpha_ij x^i y^j` through dimension `max_dim`.
#[derive(Clone, Debug)]
pub struct FglTable {
    max_dim: u32,
    alpha: BTreeMap<(usize, usize), Poly>,
    log: Series,
    exp: Series,
}

/// `alpha_ij` for all `i, j >= 1` with `2(i + j - 1) <= max_dim`.
///
/// Expands `(log x + log y)^k = sum_r C(k, r) log(x)^r log(y)^{k-r}` so every
/// coefficient is a finite sum of products of univariate coefficients.
pub fn fgl_coefficients(max_dim: u32) -> Result<FglTable> {
    let log = mishchenko_log(max_dim)?;
    let exp = log.revert()?;
    let order = log.order();
    let mut powers: Vec<Series> = vec![Series::from_coeffs(order, [Poly::one()])];
    for r in 1..=order {
        let next = powers[r - 1].mul(&log)?;
        powers.push(next);
    }
    let binomials: Vec<Vec<BigInt>> = (0..=order).map(binomial_row).collect();
    let mut alpha = BTreeMap::new();
    for i in 1..order {
        for j in 1..=order - i {
            if i > j {
                continue;
            }
            let mut acc = Poly::zero();
            for k in 2..=i + j {
                let bk = exp.coeff(k);
                if bk.is_zero() {
                    continue;
                }
                // log(x)^r has valuation r, so only r <= i and k - r <= j contribute.
                for r in k.saturating_sub(j)..=i.min(k) {
                    let px = powers[r].coeff(i);
                    let py = powers[k - r].coeff(j);
                    if px.is_zero() || py.is_zero() {
                        continue;
                    }
                    let c = Rational::from_integer(binomials[k][r].clone());
                    acc.add_assign_ref(&bk.mul_ref(&px.mul_ref(py)).scale(&c));
                }
            }
            let dim = 2 * (i + j - 1) as u32;
            let acc = acc.with_dimension(dim)?;
            alpha.insert((i, j), acc.clone());
            alpha.insert((j, i), acc);
        }
    }
    Ok(FglTable { max_dim, alpha, log, exp })
}

impl FglTable {
    pub fn max_dim(&self) -> u32 {
        self.max_dim
    }

    /// Largest total degree `i + j` of a stored coefficient.
    pub fn order(&self) -> usize {
        series_order(self.max_dim)
    }

    /// `alpha_ij`; `None` outside the truncation.
    pub fn alpha(&self, i: usize, j: usize) -> Option<&Poly> {
        self.alpha.get(&(i, j))
    }

    /// `alpha_ij`, or an error naming the missing dimension.
    pub fn try_alpha(&self, i: usize, j: usize) -> Result<&Poly> {
        self.alpha(i, j).ok_or(Error::DimensionOutOfRange {
            dim: 2 * (i + j).saturating_sub(1) as u32,
            max: self.max_dim,
        })
    }

    /// All `(i, j, alpha_ij)` with `i <= j`, by dimension then `i`.
    pub fn entries(&self) -> Vec<(usize, usize, &Poly)> {
        let mut out: Vec<_> =
            self.alpha.iter().filter(|((i, j), _)| i <= j).map(|(&(i, j), a)| (i, j, a)).collect();
        out.sort_by_key(|&(i, j, _)| (i + j, i));
        out
    }

    pub fn log(&self) -> &Series {
        &self.log
    }

    pub fn exp(&self) -> &Series {
        &self.exp
    }

    /// `F(a, b)` for series `a`, `b` without constant terms.
    pub fn evaluate(&self, a: &MvSeries<Rational>, b: &MvSeries<Rational>) -> Result<MvSeries<Rational>> {
        let order = a.order().min(self.order());
        let pa = a.powers(order)?;
        let pb = b.powers(order)?;
        let mut out = a.add(b)?;
        for (&(i, j), c) in &self.alpha {
            if i + j > a.order() {
                continue;
            }
            let term = pa[i].mul(&pb[j])?.scale(c);
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// The global sign `eps` with `s_{i+j-1}(alpha_ij) = eps C(i+j, i)`,
    /// read off from `s_1(alpha_11) = 2 eps`.
    pub fn s_sign(&self) -> Result<i32> {
        let s = s_number(self.try_alpha(1, 1)?)?;
        if s == Rational::from_integer(BigInt::from(2)) {
            Ok(1)
        } else if s == Rational::from_integer(BigInt::from(-2)) {
            Ok(-1)
        } else {
            Err(Error::Inconsistent(format!("s_1(alpha_11) = {s}, expected +-2")))
        }
    }
}

/// The inverse series `i(x)` with `F(x, i(x)) = 0`, solved order by order
/// from the table alone.
pub fn inverse_series(table: &FglTable) -> Result<Series> {
    let order = table.order();
    let x = MvSeries::var(1, order, 0);
    let mut inv = Series::from_coeffs(order, [Poly::zero(), -Poly::one()]);
    for k in 2..=order {
        let lhs = table.evaluate(&x, &inv.to_mv(1, 0))?;
        let fix = lhs.coeff(&[k as u32]);
        inv.set_coeff(k, inv.coeff(k) - &fix);
    }
    Ok(inv)
}

/// Coefficients `a_i` of `G`, with `u = sum a_i v^i` where `u = x + i(x)`
/// and `v = x i(x)`; `a_i` has dimension `2(2i - 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct GSeries {
    pub max_dim: u32,
    #[serde(serialize_with = "ser_coeffs")]
    pub a: BTreeMap<usize, Poly>,
}

fn ser_coeffs<S: serde::Serializer>(
    a: &BTreeMap<usize, Poly>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(a.iter().map(|(i, p)| (i.to_string(), p.to_string())))
}

/// Expands `u = x + i(x)` in powers of `v = x i(x)` by eliminating the
/// even powers `x^{2i}` one at a time (`v^i` starts with `(-x^2)^i`). The odd
/// powers must then vanish; a nonzero residual is reported as an error.
pub fn g_series(table: &FglTable) -> Result<GSeries> {
    let order = table.order();
    let inv = inverse_series(table)?;
    let u = Series::x(order).add(&inv)?;
    let v = Series::x(order).mul(&inv)?;
    let mut residual = u;
    let mut a = BTreeMap::new();
    let mut vi = Series::from_coeffs(order, [Poly::one()]);
    let mut i = 1;
    while 2 * i <= order {
        vi = vi.mul(&v)?;
        let lead = residual.coeff(2 * i).clone();
        let ai = if i % 2 == 0 { lead } else { -lead };
        let ai = ai.with_dimension(2 * (2 * i as u32 - 1))?;
        residual = residual.sub(&vi.scale(&ai))?;
        a.insert(i, ai);
        i += 1;
    }
    if let Some(k) = (0..=order).find(|&k| !residual.coeff(k).is_zero()) {
        return Err(Error::Inconsistent(format!(
            "u - sum a_i v^i has nonzero coefficient at x^{k}: {}",
            residual.coeff(k)
        )));
    }
    Ok(GSeries { max_dim: table.max_dim(), a })
}

impl GSeries {
    /// `u - sum a_i v^i` recomputed from scratch; zero when the expansion is right.
    pub fn residual(&self, table: &FglTable) -> Result<Series> {
        let order = table.order();
        let inv = inverse_series(table)?;
        let mut r = Series::x(order).add(&inv)?;
        let v = Series::x(order).mul(&inv)?;
        let mut vi = Series::from_coeffs(order, [Poly::one()]);
        for ai in self.a.values() {
            vi = vi.mul(&v)?;
            r = r.sub(&vi.scale(ai))?;
        }
        Ok(r)
    }

    /// True when every `a_i` has all Chern numbers in `Z[1/2]`.
    pub fn coefficients_in_z_half(&self) -> Result<bool> {
        for ai in self.a.values() {
            if !chern_numbers(ai)?.all_in_z_half() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every `a_i` lies in `MU_*[1/2]`, i.e. has `Z[1/2]`
    /// coordinates in the multiplicative generators.
    pub fn coefficients_in_mu_half(&self, basis: &crate::generators::MultiplicativeBasis) -> Result<bool> {
        for ai in self.a.values() {
            if !basis.in_mu_half(ai)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every coefficient of every `a_i` in the `CP` basis has an
    /// odd denominator.
    pub fn cp_coefficients_odd_denominator(&self) -> bool {
        self.a.values().all(|p| p.terms().all(|(_, c)| crate::scalar::has_odd_denominator(c)))
    }

    /// True when every coefficient of every `a_i` in the `CP` basis lies in `Z[1/2]`.
    pub fn cp_coefficients_in_z_half(&self) -> bool {
        self.a.values().all(|p| p.terms().all(|(_, c)| in_z_half(c)))
    }
}

/// Coefficientwise verdicts on the formal group law axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub order: usize,
    /// `F(x, 0) = x` and `F(0, y) = y`.
    pub unitality: bool,
    /// `F(x, y) = F(y, x)`.
    pub commutativity: bool,
    /// `F(F(x, y), z) = F(x, F(y, z))`.
    pub associativity: bool,
}

impl AxiomCheck {
    pub fn ok(&self) -> bool {
        self.unitality && self.commutativity && self.associativity
    }
}

/// Checks the axioms on the truncated law, substituting series into the
/// table rather than going through the logarithm.
pub fn check_axioms(table: &FglTable) -> Result<AxiomCheck> {
    let order = table.order();
    let var = |n, i| MvSeries::var(n, order, i);
    let same = |a: &MvSeries<Rational>, b: &MvSeries<Rational>| -> Result<bool> { Ok(a.sub(b)?.is_zero()) };
    let zero2 = MvSeries::zero(2, order);
    let unitality = same(&table.evaluate(&var(2, 0), &zero2)?, &var(2, 0))?
        && same(&table.evaluate(&zero2, &var(2, 1))?, &var(2, 1))?;
    let commutativity = same(&table.evaluate(&var(2, 0), &var(2, 1))?, &table.evaluate(&var(2, 1), &var(2, 0))?)?;
    let (x, y, z) = (var(3, 0), var(3, 1), var(3, 2));
    let left = table.evaluate(&table.evaluate(&x, &y)?, &z)?;
    let right = table.evaluate(&x, &table.evaluate(&y, &z)?)?;
    let associativity = same(&left, &right)?;
    Ok(AxiomCheck { order, unitality, commutativity, associativity })
}

/// `F(x_0, x_1)` as a series in the first two of `nvars` variables.
pub fn fgl_series(table: &FglTable, nvars: usize) -> Result<MvSeries<Rational>> {
    if nvars < 2 {
        return Err(Error::InvalidArgument("F needs two variables".into()));
    }
    let order = table.order();
    let x = MvSeries::var(nvars, order, 0);
    let y = MvSeries::var(nvars, order, 1);
    table.evaluate(&x, &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn log_coefficients() {
        let log = mishchenko_log(8).unwrap();
        assert_eq!(log.order(), 5);
        assert_eq!(log.coeff(1), &Poly::one());
        assert_eq!(log.coeff(2), &Poly::cp(1).scale(&rat(1, 2)));
        assert_eq!(log.coeff(4), &Poly::cp(3).scale(&rat(1, 4)));
        assert!(mishchenko_log(3).is_err());
    }

    #[test]
    fn low_coefficients() {
        let t = fgl_coefficients(8).unwrap();
        assert_eq!(t.alpha(1, 1).unwrap(), &-Poly::cp(1));
        assert_eq!(t.alpha(1, 2), t.alpha(2, 1));
        assert_eq!(t.alpha(1, 2).unwrap(), &(Poly::cp(1).pow(2) - Poly::cp(2)));
        assert!(t.alpha(2, 4).is_none());
        assert_eq!(t.alpha(2, 3).unwrap().dimension(), Some(8));
        assert_eq!(t.s_sign().unwrap(), -1);
    }

    #[test]
    fn axioms_hold() {
        let c = check_axioms(&fgl_coefficients(12).unwrap()).unwrap();
        assert!(c.ok(), "{c:?}");
    }

    #[test]
    fn inverse_low_order() {
        let t = fgl_coefficients(10).unwrap();
        let inv = inverse_series(&t).unwrap();
        assert_eq!(inv.coeff(1), &-Poly::one());
        assert_eq!(inv.coeff(2), &-Poly::cp(1));
        let x = MvSeries::var(1, t.order(), 0);
        assert!(t.evaluate(&x, &inv.to_mv(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn g_series_low_order() {
        let t = fgl_coefficients(12).unwrap();
        let g = g_series(&t).unwrap();
        assert_eq!(g.a[&1], Poly::cp(1));
        assert_eq!(g.a[&2].dimension().unwrap_or(6), 6);
        assert!(g.residual(&t).unwrap().is_zero());
        assert!(g.coefficients_in_z_half().unwrap());
    }
}
