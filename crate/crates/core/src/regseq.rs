//! Regular sequences in the graded polynomial ring, certified degree by
//! degree through Hilbert functions; ideal membership and normal forms in
//! the quotient.
//!
//! Over the rationals classes are handled in `CP`-monomial coordinates. Over
//! `F_p` they are first rewritten in the multiplicative generators `e_m`,
//! which generate `MU_*` integrally, then reduced modulo `p`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgl::FglTable;
use crate::generators::{GeneratorSet, MultiplicativeBasis};
use crate::linalg::RowEchelon;
use crate::partition::{partition_count, partition_counts};
use crate::poly::{monomials_of_weight, GradedPoly, Monomial};
use crate::scalar::{Field, FromRational, Rational, SUPPORTED_PRIMES};
use crate::with_prime_field;
use crate::Poly;

/// Coefficient field for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffField {
    Rationals,
    /// `F_p` for an odd prime in [`SUPPORTED_PRIMES`].
    Prime(u32),
}

impl CoeffField {
    pub fn prime(p: u32) -> Result<Self> {
        if SUPPORTED_PRIMES.contains(&p) {
            Ok(CoeffField::Prime(p))
        } else {
            Err(Error::UnsupportedPrime(p))
        }
    }

    /// The default desk-scale set `Q, F_3, F_5, F_7`.
    pub fn defaults() -> Vec<CoeffField> {
        vec![CoeffField::Rationals, CoeffField::Prime(3), CoeffField::Prime(5), CoeffField::Prime(7)]
    }

    /// Parses a comma-separated list such as `q,3,5`.
    pub fn parse_list(s: &str) -> Result<Vec<CoeffField>> {
        s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse()).collect()
    }
}

impl FromStr for CoeffField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" => Ok(CoeffField::Rationals),
            _ => {
                let digits = s.trim_start_matches(['F', 'f']);
                let p: u32 = digits
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("unknown coefficient field '{s}'")))?;
                CoeffField::prime(p)
            }
        }
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rationals => write!(f, "q"),
            CoeffField::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for CoeffField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Rank of `MU_{2d} (x) Q`: the number of partitions of `d`.
pub fn graded_rank(d: usize) -> u64 {
    partition_count(d)
}

/// Which monomial basis classes are written in before linear algebra.
#[derive(Clone, Debug)]
pub enum Coordinates {
    /// `CP`-monomials; valid over the rationals only.
    Projective,
    /// `e`-monomials; valid over `Q` and every odd `F_p`.
    Multiplicative(Arc<MultiplicativeBasis>),
}

impl Coordinates {
    /// The coordinates used by default over `field`.
    pub fn for_field(field: CoeffField, table: &FglTable) -> Result<Self> {
        match field {
            CoeffField::Rationals => Ok(Coordinates::Projective),
            CoeffField::Prime(_) => Ok(Coordinates::Multiplicative(Arc::new(MultiplicativeBasis::new(table)?))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Coordinates::Projective => "cp",
            Coordinates::Multiplicative(_) => "e",
        }
    }

    fn var(&self) -> &'static str {
        match self {
            Coordinates::Projective => "CP",
            Coordinates::Multiplicative(_) => "e",
        }
    }

    fn to_coords<F: Field + FromRational>(&self, x: &Poly) -> Result<GradedPoly<F>> {
        let dim = x.homogeneous_dim()?;
        let local = match self {
            Coordinates::Projective => {
                if F::tag() != "q" {
                    return Err(Error::InvalidArgument("CP coordinates are only valid over Q".into()));
                }
                x.clone()
            }
            Coordinates::Multiplicative(b) => b.to_e(x)?,
        };
        Ok(local.reduce::<F>()?.with_dimension(dim).unwrap_or_else(|_| GradedPoly::zero_of_dim(dim)))
    }

    fn class_of(&self, y: &Poly) -> Result<Poly> {
        match self {
            Coordinates::Projective => Ok(y.clone()),
            Coordinates::Multiplicative(b) => b.from_e(y),
        }
    }
}

/// Ranks in one even dimension `2d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRanks {
    pub dim: u32,
    pub ambient: u64,
    pub ideal: u64,
    pub quotient: u64,
    /// Coefficient of `t^{2d}` in `(sum p(k) t^{2k}) prod (1 - t^{2 d_i})`.
    pub expected: i64,
    pub ok: bool,
}

/// Per-degree ranks of an ideal and its quotient over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertProfile {
    pub field: CoeffField,
    pub coordinates: &'static str,
    pub per_degree: Vec<DegreeRanks>,
}

impl HilbertProfile {
    pub fn ok(&self) -> bool {
        self.per_degree.iter().all(|r| r.ok)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.per_degree.iter().find(|r| !r.ok).map(|r| r.dim)
    }
}

/// Outcome of a regularity check over several fields.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub generators: Vec<String>,
    pub max_dim: u32,
    pub verdict: bool,
    pub profiles: Vec<HilbertProfile>,
    /// Fields on which the verdict differs from the one over `Q`.
    pub field_disagreements: Vec<CoeffField>,
}

fn weights(gens: &GeneratorSet) -> Vec<u32> {
    gens.entries().iter().map(|e| e.n() as u32).collect()
}

/// Coefficients through `t^{2 d_max}` of the Hilbert series of a quotient of
/// `Q[CP_1, CP_2, ...]` by a regular sequence of the given weights.
pub fn expected_quotient_ranks(weights: &[u32], d_max: usize) -> Vec<i64> {
    let mut series: Vec<i64> = partition_counts(d_max).into_iter().map(|c| c as i64).collect();
    for &w in weights {
        let w = w as usize;
        if w == 0 || w > d_max {
            continue;
        }
        for d in (w..=d_max).rev() {
            series[d] -= series[d - w];
        }
    }
    series
}

/// The rows `g * m` spanning the ideal in weight `d`, with their labels.
struct DegreePiece<F> {
    columns: Vec<Monomial>,
    echelon: RowEchelon<F>,
    labels: Vec<(usize, Monomial)>,
}

fn column_index(columns: &[Monomial]) -> HashMap<&Monomial, usize> {
    columns.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

fn dense<F: Field>(p: &GradedPoly<F>, index: &HashMap<&Monomial, usize>, ncols: usize) -> Result<Vec<F>> {
    let mut v = vec![F::zero(); ncols];
    for (m, c) in p.terms() {
        let i = index
            .get(m)
            .ok_or_else(|| Error::Inconsistent(format!("monomial {m} outside its degree")))?;
        v[*i] = c.clone();
    }
    Ok(v)
}

fn degree_piece<F: Field>(gens: &[GradedPoly<F>], weights: &[u32], d: u32, track: bool) -> Result<DegreePiece<F>> {
    let columns = monomials_of_weight(d);
    let index = column_index(&columns);
    let mut echelon = if track { RowEchelon::with_tracking(columns.len()) } else { RowEchelon::new(columns.len()) };
    let mut labels = Vec::new();
    for (g_idx, (g, &w)) in gens.iter().zip(weights).enumerate() {
        if w > d {
            continue;
        }
        for m in monomials_of_weight(d - w) {
            let mut row = vec![F::zero(); columns.len()];
            for (gm, c) in g.terms() {
                let i = index[&gm.mul(&m)];
                row[i] = c.clone();
            }
            if !track && echelon.rank() == columns.len() {
                break;
            }
            echelon.insert(&row);
            labels.push((g_idx, m));
        }
    }
    Ok(DegreePiece { columns, echelon, labels })
}

fn coords_of<F: Field + FromRational>(gens: &GeneratorSet, coords: &Coordinates) -> Result<Vec<GradedPoly<F>>> {
    gens.entries().iter().map(|e| coords.to_coords::<F>(e.class())).collect()
}

fn profile_in<F: Field + FromRational>(gens: &GeneratorSet, max_dim: u32, coords: &Coordinates) -> Result<Vec<DegreeRanks>> {
    let local = coords_of::<F>(gens, coords)?;
    let w = weights(gens);
    let d_max = max_dim as usize / 2;
    let expected = expected_quotient_ranks(&w, d_max);
    (1..=d_max)
        .map(|d| {
            let piece = degree_piece(&local, &w, d as u32, false)?;
            let ambient = graded_rank(d);
            let ideal = piece.echelon.rank() as u64;
            let quotient = ambient - ideal;
            Ok(DegreeRanks {
                dim: 2 * d as u32,
                ambient,
                ideal,
                quotient,
                expected: expected[d],
                ok: quotient as i64 == expected[d],
            })
        })
        .collect()
}

/// Ranks of the ideal generated by `gens` in every even dimension up to
/// `max_dim`, over one field.
pub fn hilbert_profile(gens: &GeneratorSet, max_dim: u32, field: CoeffField, table: &FglTable) -> Result<HilbertProfile> {
    check_dims(gens, table)?;
    let coords = Coordinates::for_field(field, table)?;
    let per_degree = match field {
        CoeffField::Rationals => profile_in::<Rational>(gens, max_dim, &coords)?,
        CoeffField::Prime(p) => {
            with_prime_field!(p, profile_in(gens, max_dim, &coords), Err(Error::UnsupportedPrime(p)))?
        }
    };
    Ok(HilbertProfile { field, coordinates: coords.name(), per_degree })
}

fn check_dims(gens: &GeneratorSet, table: &FglTable) -> Result<()> {
    for e in gens.entries() {
        if e.dimension() > table.max_dim() {
            return Err(Error::DimensionOutOfRange { dim: e.dimension(), max: table.max_dim() });
        }
    }
    Ok(())
}

/// Summary of the ideal's piece in dimension `2d`.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeBasis {
    pub field: CoeffField,
    pub dim: u32,
    pub rank: usize,
    /// Leading monomials of the reduced rows, in coordinate variables.
    pub pivots: Vec<String>,
    /// Reduced rows in text form.
    pub rows: Vec<String>,
}

fn degree_basis_in<F: Field + FromRational>(gens: &GeneratorSet, d: u32, coords: &Coordinates) -> Result<(usize, Vec<String>, Vec<String>)> {
    let local = coords_of::<F>(gens, coords)?;
    let piece = degree_piece(&local, &weights(gens), d, false)?;
    let var = coords.var();
    let pivots = piece.echelon.pivots().iter().map(|&p| piece.columns[p].render(var)).collect();
    let rows = piece
        .echelon
        .rows()
        .iter()
        .map(|r| {
            GradedPoly::from_terms(piece.columns.iter().cloned().zip(r.iter().cloned())).render(var)
        })
        .collect();
    Ok((piece.echelon.rank(), pivots, rows))
}

/// The row-reduced spanning set of the ideal in dimension `2d`.
pub fn ideal_degree_basis(gens: &GeneratorSet, d: u32, field: CoeffField, table: &FglTable) -> Result<DegreeBasis> {
    check_dims(gens, table)?;
    let coords = Coordinates::for_field(field, table)?;
    let (rank, pivots, rows) = match field {
        CoeffField::Rationals => degree_basis_in::<Rational>(gens, d, &coords)?,
        CoeffField::Prime(p) => {
            with_prime_field!(p, degree_basis_in(gens, d, &coords), Err(Error::UnsupportedPrime(p)))?
        }
    };
    Ok(DegreeBasis { field, dim: 2 * d, rank, pivots, rows })
}

/// Checks that `gens` is a regular sequence through dimension `max_dim`
/// over each field by comparing quotient ranks with the product formula.
pub fn is_regular_up_to(gens: &GeneratorSet, max_dim: u32, fields: &[CoeffField], table: &FglTable) -> Result<RegularityReport> {
    let profiles = fields
        .iter()
        .map(|&f| hilbert_profile(gens, max_dim, f, table))
        .collect::<Result<Vec<_>>>()?;
    let verdict = profiles.iter().all(HilbertProfile::ok);
    let reference = profiles.iter().find(|p| p.field == CoeffField::Rationals).map(HilbertProfile::ok);
    let field_disagreements = match reference {
        Some(r) => profiles.iter().filter(|p| p.ok() != r).map(|p| p.field).collect(),
        None => Vec::new(),
    };
    Ok(RegularityReport {
        generators: gens.names().iter().map(|s| s.to_string()).collect(),
        max_dim,
        verdict,
        profiles,
        field_disagreements,
    })
}

/// One multiplier `q_i` in `X = sum q_i g_i`.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateTerm {
    pub generator: String,
    pub multiplier: String,
}

/// Outcome of a membership test.
#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub field: CoeffField,
    pub dim: u32,
    pub member: bool,
    pub coordinates: &'static str,
    /// Present for members when requested; rechecked before being returned.
    pub certificate: Option<Vec<CertificateTerm>>,
}

/// Multipliers `q_i`, in coordinates, with `x = sum q_i g_i`; `None` when
/// `x` is not in the ideal.
fn membership_in<F: Field + FromRational>(x: &Poly, gens: &GeneratorSet, coords: &Coordinates) -> Result<Option<Vec<GradedPoly<F>>>> {
    let d = x.homogeneous_dim()? / 2;
    let local = coords_of::<F>(gens, coords)?;
    let w = weights(gens);
    let target = coords.to_coords::<F>(x)?;
    let piece = degree_piece(&local, &w, d, true)?;
    let index = column_index(&piece.columns);
    let v = dense(&target, &index, piece.columns.len())?;
    let Some(combo) = piece.echelon.solve(&v) else {
        return Ok(None);
    };
    let mut q: Vec<GradedPoly<F>> = vec![GradedPoly::zero(); w.len()];
    for ((g, m), c) in piece.labels.iter().zip(combo) {
        if !c.is_zero() {
            q[*g].add_term(m.clone(), &c);
        }
    }
    let mut total = GradedPoly::<F>::zero();
    for (qi, g) in q.iter().zip(&local).filter(|(qi, _)| !qi.is_zero()) {
        total.add_assign_ref(&qi.mul_ref(g));
    }
    if total != target {
        return Err(Error::Inconsistent("membership certificate does not reproduce the class".into()));
    }
    Ok(Some(q))
}

fn membership_strings<F: Field + FromRational>(x: &Poly, gens: &GeneratorSet, coords: &Coordinates) -> Result<Option<Vec<String>>> {
    let var = coords.var();
    Ok(membership_in::<F>(x, gens, coords)?.map(|q| q.iter().map(|p| p.render(var)).collect()))
}

/// Decides whether `x` lies in the ideal generated by `gens` over `field`,
/// with an explicit certificate on request.
pub fn ideal_membership(x: &Poly, gens: &GeneratorSet, field: CoeffField, table: &FglTable, certificate: bool) -> Result<Membership> {
    let dim = x.homogeneous_dim()?;
    if dim > table.max_dim() {
        return Err(Error::DimensionOutOfRange { dim, max: table.max_dim() });
    }
    check_dims(gens, table)?;
    let coords = Coordinates::for_field(field, table)?;
    let q = match field {
        CoeffField::Rationals => membership_strings::<Rational>(x, gens, &coords)?,
        CoeffField::Prime(p) => {
            with_prime_field!(p, membership_strings(x, gens, &coords), Err(Error::UnsupportedPrime(p)))?
        }
    };
    let member = q.is_some();
    let certificate = match (certificate, q) {
        (true, Some(q)) => Some(
            gens.names()
                .iter()
                .zip(q)
                .filter(|(_, m)| m != "0")
                .map(|(g, m)| CertificateTerm { generator: g.to_string(), multiplier: m })
                .collect(),
        ),
        _ => None,
    };
    Ok(Membership { field, dim, member, coordinates: coords.name(), certificate })
}

/// Multipliers over `Q` in `CP` coordinates with `x = sum q_i g_i`.
pub fn rational_certificate(x: &Poly, gens: &GeneratorSet) -> Result<Option<Vec<Poly>>> {
    membership_in::<Rational>(x, gens, &Coordinates::Projective)
}

/// The ideal generated by a sequence, row-reduced in every degree up to
/// `max_dim`, for normal forms in the quotient ring.
pub struct QuotientContext<F> {
    sequence: GeneratorSet,
    max_dim: u32,
    coords: Coordinates,
    pieces: Vec<DegreePiece<F>>,
}

impl<F: Field + FromRational> QuotientContext<F> {
    pub fn new(sequence: &GeneratorSet, max_dim: u32, coords: Coordinates) -> Result<Self> {
        let local = coords_of::<F>(sequence, &coords)?;
        let w = weights(sequence);
        let pieces = (0..=max_dim / 2).map(|d| degree_piece(&local, &w, d, false)).collect::<Result<Vec<_>>>()?;
        Ok(QuotientContext { sequence: sequence.clone(), max_dim, coords, pieces })
    }

    pub fn sequence(&self) -> &GeneratorSet {
        &self.sequence
    }

    pub fn max_dim(&self) -> u32 {
        self.max_dim
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.coords
    }

    /// The reduced representative of `x` in coordinates: supported on
    /// non-pivot monomials only.
    pub fn normal_form_coords(&self, x: &Poly) -> Result<GradedPoly<F>> {
        let dim = x.homogeneous_dim()?;
        if dim > self.max_dim {
            return Err(Error::DimensionOutOfRange { dim, max: self.max_dim });
        }
        let piece = &self.pieces[dim as usize / 2];
        let target = self.coords.to_coords::<F>(x)?;
        let index = column_index(&piece.columns);
        let v = dense(&target, &index, piece.columns.len())?;
        let (r, _) = piece.echelon.reduce(&v);
        let out = GradedPoly::from_terms(piece.columns.iter().cloned().zip(r));
        Ok(out.with_dimension(dim).unwrap_or_else(|_| GradedPoly::zero_of_dim(dim)))
    }

    pub fn contains(&self, x: &Poly) -> Result<bool> {
        Ok(self.normal_form_coords(x)?.is_zero())
    }

    /// Text form of the normal form in coordinate variables.
    pub fn render(&self, y: &GradedPoly<F>) -> String {
        y.render(self.coords.var())
    }
}

impl QuotientContext<Rational> {
    /// The normal form of `x` as a class in the `CP` basis.
    pub fn normal_form(&self, x: &Poly) -> Result<Poly> {
        let y = self.normal_form_coords(x)?;
        let dim = y.asserted_dim().unwrap_or(0);
        let out = self.coords.class_of(&y)?;
        Ok(out.with_dimension(dim).unwrap_or_else(|_| Poly::zero_of_dim(dim)))
    }
}

/// The unique reduced representative of `x` modulo the context's ideal.
pub fn quotient_normal_form(x: &Poly, ctx: &QuotientContext<Rational>) -> Result<Poly> {
    ctx.normal_form(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::fgl_coefficients;
    use crate::generators::{GeneratorEntry, Provenance};

    fn given(name: &str, class: Poly) -> GeneratorEntry {
        GeneratorEntry::new(name, class, Provenance::Given { source: "test".into() }).unwrap()
    }

    #[test]
    fn graded_ranks() {
        assert_eq!(graded_rank(0), 1);
        assert_eq!(graded_rank(4), 5);
        assert_eq!(graded_rank(6), 11);
    }

    #[test]
    fn product_formula() {
        assert_eq!(expected_quotient_ranks(&[], 4), vec![1, 1, 2, 3, 5]);
        // one generator in each weight leaves nothing above degree 0
        assert_eq!(expected_quotient_ranks(&[1, 2, 3, 4], 4), vec![1, 0, 0, 0, 0]);
        assert_eq!(expected_quotient_ranks(&[2, 9], 4), vec![1, 1, 1, 2, 3]);
    }

    #[test]
    fn field_parsing() {
        assert_eq!(CoeffField::parse_list("q,3,F5").unwrap(), vec![
            CoeffField::Rationals,
            CoeffField::Prime(3),
            CoeffField::Prime(5)
        ]);
        assert!("2".parse::<CoeffField>().is_err());
        assert!("9".parse::<CoeffField>().is_err());
    }

    #[test]
    fn degree_basis_examples() {
        let t = fgl_coefficients(8).unwrap();
        let x = GeneratorSet::x_family(&t).unwrap().select(&[0]);
        assert_eq!(ideal_degree_basis(&x, 4, CoeffField::Rationals, &t).unwrap().rank, 2);
        assert_eq!(ideal_degree_basis(&x, 2, CoeffField::Rationals, &t).unwrap().rank, 1);
        assert_eq!(ideal_degree_basis(&GeneratorSet::new(), 3, CoeffField::Rationals, &t).unwrap().rank, 0);
    }

    #[test]
    fn square_of_generator_breaks_regularity() {
        let t = fgl_coefficients(8).unwrap();
        let x2 = crate::generators::build_x(2, &t).unwrap();
        let mut set = GeneratorSet::new();
        set.push(given("x2", x2.clone()));
        set.push(given("x2^2", x2.pow(2)));
        let r = is_regular_up_to(&set, 8, &[CoeffField::Rationals], &t).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.profiles[0].first_failure(), Some(8));
    }

    #[test]
    fn membership_and_normal_forms() {
        let t = fgl_coefficients(8).unwrap();
        let x = GeneratorSet::x_family(&t).unwrap();
        let x2 = x.select(&[0]);
        let cp1 = Poly::cp(1);
        assert!(!ideal_membership(&cp1, &x2, CoeffField::Rationals, &t, true).unwrap().member);
        let target = x.entries()[0].class().mul_ref(&Poly::cp(2));
        let m = ideal_membership(&target, &x2, CoeffField::Rationals, &t, true).unwrap();
        assert!(m.member);
        assert_eq!(m.certificate.unwrap()[0].multiplier, "CP2");
        let ctx = QuotientContext::<Rational>::new(&x, 8, Coordinates::Projective).unwrap();
        assert!(quotient_normal_form(x.entries()[0].class(), &ctx).unwrap().is_zero());
        assert_eq!(quotient_normal_form(&cp1, &ctx).unwrap(), cp1);
        let nf = quotient_normal_form(&Poly::cp(3), &ctx).unwrap();
        assert_eq!(quotient_normal_form(&nf, &ctx).unwrap(), nf);
    }

    #[test]
    fn prime_field_membership_uses_e_coordinates() {
        let t = fgl_coefficients(8).unwrap();
        let x = GeneratorSet::x_family(&t).unwrap();
        let r = ideal_membership(x.entries()[1].class(), &x, CoeffField::Prime(3), &t, true).unwrap();
        assert!(r.member);
        assert_eq!(r.coordinates, "e");
    }
}
