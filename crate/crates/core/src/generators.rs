//! Named generator families: the low-dimensional SU classes `x_2, x_3, x_4`,
//! the multiplicative generators `e_m`, the abelian-ideal generators `y_k`,
//! and a lattice search for SU generators in any dimension.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chern::{chern_numbers, is_su, novikov_check, novikov_expected_odd_part, s_number};
use crate::error::{Error, Result};
use crate::fgl::FglTable;
use crate::linalg::integer_kernel;
use crate::numth::{binomial_row, extended_euclid};
use crate::partition::partitions;
use crate::poly::{monomials_of_weight, Monomial};
use crate::scalar::{in_z_half, odd_part, rat, Rational};
use crate::Poly;

fn need_dim(table: &FglTable, dim: usize) -> Result<()> {
    if dim as u32 > table.max_dim() {
        return Err(Error::DimensionOutOfRange { dim: dim as u32, max: table.max_dim() });
    }
    Ok(())
}

/// The classes `x_2 = CP_2 - (9/8) CP_1^2`, `x_3 = -alpha_22` and
/// `x_4 = -alpha_23 - (3/2) x_3 CP_1`, exactly as written.
pub fn build_x(n: usize, table: &FglTable) -> Result<Poly> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("x_n is defined for n in 2..=4, got {n}")));
    }
    need_dim(table, 2 * n)?;
    Ok(match n {
        2 => Poly::cp(2) - Poly::cp(1).pow(2).scale(&rat(9, 8)),
        3 => table.try_alpha(2, 2)?.neg_ref(),
        _ => {
            let x3 = build_x(3, table)?;
            table.try_alpha(2, 3)?.neg_ref() - (x3 * Poly::cp(1)).scale(&rat(3, 2))
        }
    })
}

/// How a Bezout-built class was assembled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutRecipe {
    /// `(i, j)` of each `alpha_ij` used, in order.
    pub alphas: Vec<(usize, usize)>,
    /// Binomials `C(k+1, i)` the Bezout vector was computed for.
    #[serde(serialize_with = "ser_bigints")]
    pub binomials: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    pub lambda: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigint")]
    pub gcd: BigInt,
    /// `+1` or `-1`: the overall factor applied so that the s-number is positive.
    pub sign: i32,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn bezout_class(k: usize, range: std::ops::RangeInclusive<usize>, table: &FglTable) -> Result<(Poly, BezoutRecipe)> {
    need_dim(table, 2 * k)?;
    let row = binomial_row(k + 1);
    let indices: Vec<usize> = range.collect();
    let binomials: Vec<BigInt> = indices.iter().map(|&i| row[i].clone()).collect();
    let (lambda, gcd) = extended_euclid(&binomials)?;
    let mut class = Poly::zero_of_dim(2 * k as u32);
    let mut alphas = Vec::new();
    for (&i, l) in indices.iter().zip(&lambda) {
        alphas.push((i, k + 1 - i));
        if !l.is_zero() {
            class = class + table.try_alpha(i, k + 1 - i)?.scale(&Rational::from_integer(l.clone()));
        }
    }
    let sign = if s_number(&class)?.is_negative() { -1 } else { 1 };
    if sign < 0 {
        class = -class;
    }
    Ok((class, BezoutRecipe { alphas, binomials, lambda, gcd, sign }))
}

/// `e_m = +-(lambda_1 alpha_{1,m} + ... + lambda_m alpha_{m,1})` with `lambda` a
/// Bezout vector for `C(m+1, 1), ..., C(m+1, m)`; `s_m(e_m) = d(m)`.
pub fn build_e(m: usize, table: &FglTable) -> Result<Poly> {
    Ok(build_e_with_recipe(m, table)?.0)
}

pub fn build_e_with_recipe(m: usize, table: &FglTable) -> Result<(Poly, BezoutRecipe)> {
    if m < 1 {
        return Err(Error::InvalidArgument("e_m needs m >= 1".into()));
    }
    bezout_class(m, 1..=m, table)
}

/// `y_k = +-sum_{i=2}^{k-1} lambda_i alpha_{i,k+1-i}` with `lambda` a Bezout
/// vector for the inner binomials; `s_k(y_k) = d2(k)`.
pub fn build_y(k: usize, table: &FglTable) -> Result<Poly> {
    Ok(build_y_with_recipe(k, table)?.0)
}

pub fn build_y_with_recipe(k: usize, table: &FglTable) -> Result<(Poly, BezoutRecipe)> {
    if k < 3 {
        return Err(Error::InvalidArgument("y_k needs k >= 3".into()));
    }
    bezout_class(k, 2..=k - 1, table)
}

/// The polynomial generators `e_1, ..., e_M` of `MU_*` and the inverse change
/// of variables, so classes can be written in `e`-monomial coordinates.
///
/// A polynomial in `e`-coordinates reuses [`Monomial`], with generator `i`
/// standing for `e_i`. Classes in `MU_*[1/2]` have `Z[1/2]` coordinates here,
/// which is what makes reduction modulo an odd prime meaningful.
#[derive(Clone, Debug)]
pub struct MultiplicativeBasis {
    e: Vec<Poly>,
    cp_in_e: Vec<Poly>,
}

impl MultiplicativeBasis {
    /// Generators up to the table's full weight.
    pub fn new(table: &FglTable) -> Result<Self> {
        Self::up_to_weight(table, table.max_dim() as usize / 2)
    }

    pub fn up_to_weight(table: &FglTable, weight: usize) -> Result<Self> {
        need_dim(table, 2 * weight)?;
        let mut e = Vec::with_capacity(weight);
        let mut cp_in_e: Vec<Poly> = Vec::with_capacity(weight);
        for m in 1..=weight {
            let em = build_e(m, table)?;
            let top = Monomial::generator(m);
            let lead = em.coefficient(&top);
            if lead.is_zero() {
                return Err(Error::Inconsistent(format!("e_{m} has no CP_{m} term")));
            }
            let rest = em.clone() - Poly::monomial(top, lead.clone());
            let image = (Poly::cp(m) - rest.substitute(&cp_in_e)?).scale(&lead.recip());
            e.push(em);
            cp_in_e.push(image);
        }
        Ok(MultiplicativeBasis { e, cp_in_e })
    }

    pub fn max_weight(&self) -> usize {
        self.e.len()
    }

    /// `e_m` in the `CP` basis.
    pub fn e(&self, m: usize) -> Option<&Poly> {
        m.checked_sub(1).and_then(|i| self.e.get(i))
    }

    fn check(&self, x: &Poly) -> Result<()> {
        let too_big = x.max_generator();
        if too_big > self.max_weight() {
            return Err(Error::DimensionOutOfRange { dim: 2 * too_big as u32, max: 2 * self.max_weight() as u32 });
        }
        Ok(())
    }

    /// Rewrites a class given in `CP` coordinates in `e` coordinates.
    pub fn to_e(&self, x: &Poly) -> Result<Poly> {
        self.check(x)?;
        keep_dim(x, x.substitute(&self.cp_in_e)?)
    }

    /// Rewrites a polynomial in `e` coordinates as a class in the `CP` basis.
    pub fn from_e(&self, y: &Poly) -> Result<Poly> {
        self.check(y)?;
        keep_dim(y, y.substitute(&self.e)?)
    }

    /// True when `x` lies in `MU_*[1/2]`: its `e`-coordinates are in `Z[1/2]`.
    pub fn in_mu_half(&self, x: &Poly) -> Result<bool> {
        Ok(self.to_e(x)?.terms().all(|(_, c)| in_z_half(c)))
    }

    /// The class of an `e`-monomial.
    pub fn monomial_class(&self, m: &Monomial) -> Result<Poly> {
        self.from_e(&Poly::monomial(m.clone(), Rational::one()))
    }
}

fn keep_dim(src: &Poly, out: Poly) -> Result<Poly> {
    match src.asserted_dim() {
        Some(d) if out.is_zero() => Ok(Poly::zero_of_dim(d)),
        _ => Ok(out),
    }
}

/// The lattice a SU generator is searched in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// `Z[1/2]`-combinations of `e`-monomials: all of `MU_{2n}[1/2]`.
    Multiplicative,
    /// `Z[1/2]`-combinations of `CP`-monomials, a sublattice of finite odd
    /// index in general.
    Projective,
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Multiplicative => "e-monomials",
            Lattice::Projective => "cp-monomials",
        })
    }
}

/// Outcome of an SU generator search in dimension `2n`.
#[derive(Clone, Debug, Serialize)]
pub struct SuCandidate {
    pub n: usize,
    pub lattice: Lattice,
    #[serde(serialize_with = "crate::poly::ser_display")]
    pub class: Poly,
    /// Positive s-number of `class`; equals its own odd part.
    #[serde(serialize_with = "crate::poly::ser_display")]
    pub s: Rational,
    pub expected_odd_part: u64,
    pub novikov: bool,
    pub kernel_rank: usize,
}

/// An SU class of dimension `2n` in `MU_*[1/2]` whose s-number has the
/// smallest odd part attainable, searched over all of `MU_{2n}[1/2]`.
pub fn find_su_generator(n: usize, table: &FglTable) -> Result<SuCandidate> {
    find_su_generator_on(n, table, Lattice::Multiplicative)
}

pub fn find_su_generator_on(n: usize, table: &FglTable, lattice: Lattice) -> Result<SuCandidate> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("SU generators start in n = 2, got {n}")));
    }
    need_dim(table, 2 * n)?;
    let basis = lattice_basis(n, table, lattice)?;
    let mut c = find_su_in_span(n, &basis)?;
    c.lattice = lattice;
    Ok(c)
}

/// The classes spanning the chosen lattice in dimension `2n`.
pub fn lattice_basis(n: usize, table: &FglTable, lattice: Lattice) -> Result<Vec<Poly>> {
    let monos = monomials_of_weight(n as u32);
    match lattice {
        Lattice::Projective => Ok(monos.into_iter().map(|m| Poly::monomial(m, Rational::one())).collect()),
        Lattice::Multiplicative => {
            let basis = MultiplicativeBasis::up_to_weight(table, n)?;
            monos.iter().map(|m| basis.monomial_class(m)).collect()
        }
    }
}

/// SU generator search in the `Z[1/2]`-span of arbitrary classes of
/// dimension `2n`.
///
/// The integer kernel of the `c_1`-containing Chern numbers is taken, the
/// gcd of `s_n` over it is realized by a Bezout combination, and the result
/// is divided by the power of two in its s-number.
pub fn find_su_in_span(n: usize, basis: &[Poly]) -> Result<SuCandidate> {
    let vectors = basis.iter().map(chern_numbers).collect::<Result<Vec<_>>>()?;
    let c1: Vec<_> = partitions(n).into_iter().filter(|w| w.contains_part(1)).collect();
    let mut rows = Vec::with_capacity(c1.len());
    for w in &c1 {
        let row: Vec<Rational> = vectors.iter().map(|v| v.get(w).clone()).collect();
        rows.push(clear_denominators(&row));
    }
    let kernel = integer_kernel(&rows, basis.len());
    if kernel.is_empty() {
        return Err(Error::Inconsistent(format!("no SU classes in dimension {}", 2 * n)));
    }
    let s_basis = basis.iter().map(s_number).collect::<Result<Vec<_>>>()?;
    let s_kernel: Vec<Rational> = kernel
        .iter()
        .map(|v| v.iter().zip(&s_basis).map(|(a, s)| s * Rational::from_integer(a.clone())).sum())
        .collect();
    let den = s_kernel.iter().fold(BigInt::one(), |acc, s| acc.lcm(s.denom()));
    let scaled: Vec<BigInt> = s_kernel.iter().map(|s| (s * Rational::from_integer(den.clone())).to_integer()).collect();
    let nonzero: Vec<(usize, BigInt)> =
        scaled.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.abs())).collect();
    if nonzero.is_empty() {
        return Err(Error::Inconsistent(format!("s vanishes on every SU class of dimension {}", 2 * n)));
    }
    let values: Vec<BigInt> = nonzero.iter().map(|(_, s)| s.clone()).collect();
    let (lambda, _) = extended_euclid(&values)?;
    let mut coords = vec![BigInt::zero(); basis.len()];
    for ((i, _), l) in nonzero.iter().zip(&lambda) {
        let sign = if scaled[*i].is_negative() { -BigInt::one() } else { BigInt::one() };
        for (c, k) in coords.iter_mut().zip(&kernel[*i]) {
            *c += l * &sign * k;
        }
    }
    let mut class = Poly::zero_of_dim(2 * n as u32);
    for (c, b) in coords.iter().zip(basis) {
        if !c.is_zero() {
            class = class + b.scale(&Rational::from_integer(c.clone()));
        }
    }
    let s = s_number(&class)?;
    let odd = odd_part(&s).ok_or_else(|| Error::Inconsistent("combined s-number vanished".into()))?;
    class = class.scale(&(odd.clone() / s));
    if !is_su(&class)? {
        return Err(Error::Inconsistent(format!("candidate in dimension {} is not SU", 2 * n)));
    }
    let novikov = novikov_check(n as u64, &odd)?;
    Ok(SuCandidate {
        n,
        lattice: Lattice::Multiplicative,
        class,
        s: odd,
        expected_odd_part: novikov_expected_odd_part(n as u64),
        novikov,
        kernel_rank: kernel.len(),
    })
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let den = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| (r * Rational::from_integer(den.clone())).to_integer()).collect()
}

/// How a generator entry was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    /// A fixed closed formula.
    Formula { recipe: String },
    /// A Bezout combination of `alpha_ij`.
    Bezout(BezoutRecipe),
    /// A lattice search.
    Lattice { lattice: Lattice, kernel_rank: usize, expected_odd_part: u64 },
    /// Supplied by the caller.
    Given { source: String },
}

/// One named homogeneous class with its s-number and SU and Novikov verdicts.
///
/// The verdicts are computed on construction from the class itself.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorEntry {
    name: String,
    n: usize,
    #[serde(serialize_with = "crate::poly::ser_display")]
    class: Poly,
    #[serde(serialize_with = "crate::poly::ser_display")]
    s_value: Rational,
    su: bool,
    novikov: bool,
    provenance: Provenance,
}

impl GeneratorEntry {
    pub fn new(name: impl Into<String>, class: Poly, provenance: Provenance) -> Result<Self> {
        let dim = class.homogeneous_dim()?;
        if dim == 0 {
            return Err(Error::InvalidArgument("generators must have positive dimension".into()));
        }
        let n = dim as usize / 2;
        let s_value = s_number(&class)?;
        let su = is_su(&class)?;
        let novikov = n >= 2 && novikov_check(n as u64, &s_value).unwrap_or(false);
        Ok(GeneratorEntry { name: name.into(), n, class, s_value, su, novikov, provenance })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> u32 {
        2 * self.n as u32
    }

    pub fn class(&self) -> &Poly {
        &self.class
    }

    pub fn s_value(&self) -> &Rational {
        &self.s_value
    }

    pub fn su(&self) -> bool {
        self.su
    }

    pub fn novikov(&self) -> bool {
        self.novikov
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// An ordered family of named generators.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GeneratorSet {
    entries: Vec<GeneratorEntry>,
}

impl GeneratorSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: Vec<GeneratorEntry>) -> Self {
        GeneratorSet { entries }
    }

    pub fn push(&mut self, entry: GeneratorEntry) {
        self.entries.push(entry);
    }

    pub fn entries(&self) -> &[GeneratorEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&GeneratorEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn classes(&self) -> Vec<&Poly> {
        self.entries.iter().map(|e| &e.class).collect()
    }

    /// The entries at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        GeneratorSet { entries: indices.iter().map(|&i| self.entries[i].clone()).collect() }
    }

    pub fn concat(&self, other: &GeneratorSet) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        GeneratorSet { entries }
    }

    /// `x_2, x_3, x_4` from their closed formulas.
    pub fn x_family(table: &FglTable) -> Result<Self> {
        let recipes = ["CP2 - 9/8*CP1^2", "-alpha2,2", "-alpha2,3 - 3/2*x3*CP1"];
        let mut set = GeneratorSet::new();
        for (n, recipe) in (2..=4).zip(recipes) {
            let class = build_x(n, table)?;
            set.push(GeneratorEntry::new(format!("x{n}"), class, Provenance::Formula { recipe: recipe.into() })?);
        }
        Ok(set)
    }

    /// `x_2, x_3, x_4` followed by lattice-search generators through `x_{upto}`.
    pub fn gamma(table: &FglTable, upto: usize) -> Result<Self> {
        let mut set = Self::x_family(table)?;
        set.entries.truncate(upto.saturating_sub(1).min(3));
        for n in 5..=upto {
            set.push(su_entry(format!("x{n}"), find_su_generator(n, table)?)?);
        }
        Ok(set)
    }

    /// `e_1, ..., e_{upto}`.
    pub fn e_family(table: &FglTable, upto: usize) -> Result<Self> {
        let mut set = GeneratorSet::new();
        for m in 1..=upto {
            let (class, recipe) = build_e_with_recipe(m, table)?;
            set.push(GeneratorEntry::new(format!("e{m}"), class, Provenance::Bezout(recipe))?);
        }
        Ok(set)
    }

    /// `y_3, ..., y_{upto}`.
    pub fn y_family(table: &FglTable, upto: usize) -> Result<Self> {
        let mut set = GeneratorSet::new();
        for k in 3..=upto {
            let (class, recipe) = build_y_with_recipe(k, table)?;
            set.push(GeneratorEntry::new(format!("y{k}"), class, Provenance::Bezout(recipe))?);
        }
        Ok(set)
    }
}

/// Wraps a lattice-search result as a generator entry.
pub fn su_entry(name: String, c: SuCandidate) -> Result<GeneratorEntry> {
    GeneratorEntry::new(
        name,
        c.class,
        Provenance::Lattice { lattice: c.lattice, kernel_rank: c.kernel_rank, expected_odd_part: c.expected_odd_part },
    )
}

/// `-alpha_23 + t x_3 CP_1` is SU for exactly one `t`; this returns it.
///
/// The `c_1`-numbers of `alpha_23` and `x_3 CP_1` are proportional, so one
/// scalar equation decides `t`.
pub fn x4_su_coefficient(table: &FglTable) -> Result<Rational> {
    let a = chern_numbers(&table.try_alpha(2, 3)?.neg_ref())?;
    let b = chern_numbers(&(build_x(3, table)? * Poly::cp(1)))?;
    let mut t: Option<Rational> = None;
    for ((w, va), (_, vb)) in a.c1_entries().zip(b.c1_entries()) {
        match (vb.is_zero(), t.as_ref()) {
            (true, _) if !va.is_zero() => {
                return Err(Error::Inconsistent(format!("no correction cancels c_{w}")));
            }
            (true, _) => {}
            (false, None) => t = Some(-va / vb),
            (false, Some(t0)) if &(-va / vb) != t0 => {
                return Err(Error::Inconsistent("c_1-numbers are not proportional".into()));
            }
            _ => {}
        }
    }
    t.ok_or_else(|| Error::Inconsistent("x_3 CP_1 has no c_1-numbers".into()))
}

/// The SU class `-alpha_23 + t x_3 CP_1` for the coefficient `t` above.
pub fn x4_su_corrected(table: &FglTable) -> Result<Poly> {
    let t = x4_su_coefficient(table)?;
    Ok(table.try_alpha(2, 3)?.neg_ref() + (build_x(3, table)? * Poly::cp(1)).scale(&t))
}
