//! One function per subcommand, each returning a [`Report`].

use std::collections::BTreeMap;

use cobord::chern::{chern_numbers, is_su, novikov_check, novikov_expected_odd_part, s_number};
use cobord::fgl::{fgl_coefficients, g_series, FglTable};
use cobord::generators::{find_su_generator_on, GeneratorSet, Lattice, MultiplicativeBasis};
use cobord::numth::{binomial, d2_of, d_certificate, d_formula, d_of, identity_table};
use cobord::regseq::{ideal_membership, is_regular_up_to, CoeffField, Coordinates, QuotientContext};
use cobord::{Poly, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::gens_input::{read_class, read_generators};
use crate::report::{Check, Report, Table};
use crate::{acceptance, Cli, CliError, Command, Family, GensCmd, LatticeArg, NumthCmd, RegseqCmd, RunConfig};

/// Echoed for commands that do not truncate anything.
const DEFAULT_TRUNCATION: u32 = 24;

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    let fields = CoeffField::parse_list(&g.fields).map_err(|e| CliError::Usage(format!("--fields: {e}")))?;
    let cfg = |dim: u32| -> Result<RunConfig, CliError> {
        let c = RunConfig { truncation_dim: dim, fields: fields.clone(), format: g.format, out: g.out.clone(), seed: g.seed };
        c.validate().map_err(CliError::Usage)?;
        Ok(c)
    };
    match &cli.command {
        Command::Fgl { trunc } => fgl(&cfg(trunc.upto)?),
        Command::Chern { class, trunc } => chern(&cfg(trunc.upto)?, class),
        Command::SuCheck { class, trunc } => su_check(&cfg(trunc.upto)?, class),
        Command::Novikov { n, s, class, trunc } => novikov(&cfg(trunc.upto)?, *n, s.as_deref(), class.as_deref()),
        Command::Gens { cmd: GensCmd::Build { family, upto } } => {
            gens_build(&cfg((2 * upto).max(4))?, *family, *upto as usize)
        }
        Command::Gens { cmd: GensCmd::FindSu { n, lattice } } => find_su(&cfg((2 * n).max(4))?, *n as usize, *lattice),
        Command::Regseq { cmd: RegseqCmd::Verify { gens, trunc } } => regseq_verify(&cfg(trunc.upto)?, gens),
        Command::Regseq { cmd: RegseqCmd::Member { class, gens, trunc } } => regseq_member(&cfg(trunc.upto)?, class, gens),
        Command::Regseq { cmd: RegseqCmd::Nf { class, gens, trunc } } => regseq_nf(&cfg(trunc.upto)?, class, gens),
        Command::Numth { cmd } => numth(&cfg(DEFAULT_TRUNCATION)?, cmd),
        Command::Genus { class, gens, trunc } => genus(&cfg(trunc.upto)?, class, gens),
        Command::Gseries { upto } => gseries(&cfg(*upto)?),
        Command::VerifyPaper { trunc, gens } => acceptance::run_suite(&cfg(trunc.upto)?, gens.as_deref()),
    }
}

pub fn table_for(cfg: &RunConfig) -> Result<FglTable, CliError> {
    Ok(fgl_coefficients(cfg.truncation_dim)?)
}

fn fgl(cfg: &RunConfig) -> Result<Report, CliError> {
    #[derive(Serialize)]
    struct Row {
        i: usize,
        j: usize,
        dim: u32,
        alpha: String,
        s: String,
        expected_s: String,
        integral: bool,
    }
    let table = table_for(cfg)?;
    let sign = table.s_sign()?;
    let mut rows = Vec::new();
    let mut out = Table::new(&["i", "j", "dim", "s", "integral", "alpha"]);
    for (i, j, a) in table.entries().into_iter().filter(|(i, j, _)| i <= j) {
        let s = s_number(a)?;
        let expected = Rational::from_integer(binomial(i + j, i) * sign);
        let integral = chern_numbers(a)?.all_integral();
        let row = Row {
            i,
            j,
            dim: 2 * (i + j - 1) as u32,
            alpha: a.to_string(),
            s: s.to_string(),
            expected_s: expected.to_string(),
            integral,
        };
        out.push(vec![i.to_string(), j.to_string(), row.dim.to_string(), row.s.clone(), integral.to_string(), row.alpha.clone()]);
        rows.push(row);
    }
    let mut r = Report::new("fgl", cfg);
    let law_failures: Vec<String> =
        rows.iter().filter(|r| r.s != r.expected_s).map(|r| format!("alpha{},{}", r.i, r.j)).collect();
    r.check(
        Check::new("s-law", "s(alpha_ij) = eps C(i+j, i) with one global sign", law_failures.is_empty())
            .detail(format!("eps = {sign}; failures: {}", list_or_none(&law_failures))),
    );
    let non_integral: Vec<String> =
        rows.iter().filter(|r| !r.integral).map(|r| format!("alpha{},{}", r.i, r.j)).collect();
    r.check(Check::new("integrality", "every alpha_ij has integral Chern numbers", non_integral.is_empty()));
    r.data(json!({ "sign": sign, "rows": rows }));
    r.table = Some(out);
    Ok(r)
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn chern_summary(class: &Poly) -> Result<serde_json::Value, CliError> {
    let v = chern_numbers(class)?;
    let dim = class.homogeneous_dim()?;
    let s = s_number(class)?;
    Ok(json!({
        "class": class.to_string(),
        "dim": dim,
        "chern_numbers": v,
        "s": s.to_string(),
        "su": is_su(class)?,
        "integral": v.all_integral(),
    }))
}

fn chern(cfg: &RunConfig, class: &str) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let x = read_class(class, &table)?;
    let v = chern_numbers(&x)?;
    let mut out = Table::new(&["partition", "value"]);
    for (w, c) in v.iter() {
        out.push(vec![w.to_string(), c.to_string()]);
    }
    let mut r = Report::new("chern", cfg);
    r.data(chern_summary(&x)?);
    r.table = Some(out);
    Ok(r)
}

fn su_check(cfg: &RunConfig, class: &str) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let x = read_class(class, &table)?;
    let v = chern_numbers(&x)?;
    let nonzero: Vec<String> = v.c1_entries().filter(|(_, c)| !c.is_zero()).map(|(w, c)| format!("c{w} = {c}")).collect();
    let mut r = Report::new("su-check", cfg);
    r.check(
        Check::new("su", "every Chern number with a c1 factor vanishes", nonzero.is_empty())
            .detail(format!("nonzero c1-numbers: {}", list_or_none(&nonzero))),
    );
    r.data(chern_summary(&x)?);
    Ok(r)
}

fn novikov(cfg: &RunConfig, n: Option<u64>, s: Option<&str>, class: Option<&str>) -> Result<Report, CliError> {
    let (n, s) = match (n, s, class) {
        (_, _, Some(c)) => {
            let table = table_for(cfg)?;
            let x = read_class(c, &table)?;
            (x.homogeneous_dim()? as u64 / 2, s_number(&x)?)
        }
        (Some(n), Some(s), None) => {
            let s: Rational = s.parse().map_err(|_| CliError::Usage(format!("--s: '{s}' is not a rational number")))?;
            (n, s)
        }
        _ => return Err(CliError::Usage("novikov needs --class, or both --n and --s".into())),
    };
    let verdict = novikov_check(n, &s)?;
    let expected = novikov_expected_odd_part(n);
    let mut r = Report::new("novikov", cfg);
    r.check(
        Check::new("novikov", "odd part of s equals the expected prime or 1", verdict)
            .detail(format!("n = {n}, s = {s}, expected odd part {expected}")),
    );
    r.data(json!({ "n": n, "s": s.to_string(), "expected_odd_part": expected, "verdict": verdict }));
    Ok(r)
}

fn generator_table(set: &GeneratorSet) -> Table {
    let mut t = Table::new(&["name", "dim", "s", "su", "novikov", "class"]);
    for e in set.entries() {
        t.push(vec![
            e.name().into(),
            e.dimension().to_string(),
            e.s_value().to_string(),
            e.su().to_string(),
            e.novikov().to_string(),
            e.class().to_string(),
        ]);
    }
    t
}

fn gens_build(cfg: &RunConfig, family: Family, upto: usize) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let mut r = Report::new("gens build", cfg);
    let set = match family {
        Family::X => {
            if upto < 2 {
                return Err(CliError::Usage("the x family starts at x2".into()));
            }
            let set = GeneratorSet::gamma(&table, upto)?;
            for e in set.entries() {
                let id = format!("{}.su", e.name());
                r.check(Check::new(&id, "SU class", e.su()));
                let id = format!("{}.novikov", e.name());
                r.check(Check::new(&id, "s-number passes Novikov's criterion", e.novikov()).detail(format!("s = {}", e.s_value())));
            }
            set
        }
        Family::E => {
            if upto < 1 {
                return Err(CliError::Usage("the e family starts at e1".into()));
            }
            let set = GeneratorSet::e_family(&table, upto)?;
            for e in set.entries() {
                let d = Rational::from_integer(d_of(e.n())?);
                let id = format!("{}.s", e.name());
                r.check(Check::new(&id, "|s| = d(m)", e.s_value().abs() == d).detail(format!("s = {}, d = {d}", e.s_value())));
            }
            set
        }
        Family::Y => {
            if upto < 3 {
                return Err(CliError::Usage("the y family starts at y3".into()));
            }
            let set = GeneratorSet::y_family(&table, upto)?;
            for e in set.entries() {
                let d2 = Rational::from_integer(d2_of(e.n())?.value);
                let id = format!("{}.s", e.name());
                r.check(Check::new(&id, "|s| = d2(k)", e.s_value().abs() == d2).detail(format!("s = {}, d2 = {d2}", e.s_value())));
            }
            set
        }
    };
    r.table = Some(generator_table(&set));
    r.data(&set);
    Ok(r)
}

fn find_su(cfg: &RunConfig, n: usize, lattice: LatticeArg) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let lattice = match lattice {
        LatticeArg::E => Lattice::Multiplicative,
        LatticeArg::Cp => Lattice::Projective,
    };
    let c = find_su_generator_on(n, &table, lattice)?;
    let mut r = Report::new("gens find-su", cfg);
    r.check(Check::new("su", "the candidate is an SU class", is_su(&c.class)?));
    r.check(
        Check::new("novikov", "the minimal s-number has the odd part Novikov's criterion expects", c.novikov)
            .detail(format!("s = {}, expected odd part {}, lattice {}", c.s, c.expected_odd_part, c.lattice)),
    );
    r.data(&c);
    Ok(r)
}

fn regularity_table(report: &cobord::regseq::RegularityReport) -> Table {
    let mut t = Table::new(&["field", "dim", "ambient", "ideal", "quotient", "expected", "ok"]);
    for p in &report.profiles {
        for d in &p.per_degree {
            t.push(vec![
                p.field.to_string(),
                d.dim.to_string(),
                d.ambient.to_string(),
                d.ideal.to_string(),
                d.quotient.to_string(),
                d.expected.to_string(),
                d.ok.to_string(),
            ]);
        }
    }
    t
}

fn regseq_verify(cfg: &RunConfig, gens: &str) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let set = read_generators(gens, &table)?;
    let rep = is_regular_up_to(&set, cfg.truncation_dim, &cfg.fields, &table)?;
    let mut r = Report::new("regseq verify", cfg);
    for p in &rep.profiles {
        let id = format!("regular.{}", p.field);
        let detail = match p.first_failure() {
            Some(d) => format!("quotient rank differs from the product formula first in dimension {d}"),
            None => format!("quotient ranks match through dimension {}", cfg.truncation_dim),
        };
        r.check(Check::new(&id, "regular sequence through the truncation", p.ok()).detail(detail));
    }
    r.table = Some(regularity_table(&rep));
    r.data(&rep);
    Ok(r)
}

fn regseq_member(cfg: &RunConfig, class: &str, gens: &str) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let set = read_generators(gens, &table)?;
    let x = read_class(class, &table)?;
    let mut r = Report::new("regseq member", cfg);
    let mut results = Vec::new();
    for &f in &cfg.fields {
        let m = ideal_membership(&x, &set, f, &table, true)?;
        let id = format!("member.{f}");
        let mut c = Check::new(&id, "the class lies in the ideal", m.member);
        if let Some(cert) = &m.certificate {
            c = c.certificate(cert);
        }
        r.check(c);
        results.push(m);
    }
    r.data(json!({ "class": x.to_string(), "generators": set.names(), "results": results }));
    Ok(r)
}

fn normal_form(x: &Poly, set: &GeneratorSet, max_dim: u32) -> Result<Poly, CliError> {
    let dim = x.homogeneous_dim()?;
    if dim > max_dim {
        return Err(CliError::Usage(format!("class of dimension {dim} exceeds --upto {max_dim}")));
    }
    let ctx = QuotientContext::<Rational>::new(set, max_dim, Coordinates::Projective)?;
    Ok(ctx.normal_form(x)?)
}

fn regseq_nf(cfg: &RunConfig, class: &str, gens: &str) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let set = read_generators(gens, &table)?;
    let x = read_class(class, &table)?;
    let nf = normal_form(&x, &set, cfg.truncation_dim)?;
    let mut r = Report::new("regseq nf", cfg);
    r.data(json!({
        "class": x.to_string(),
        "generators": set.names(),
        "field": CoeffField::Rationals,
        "normal_form": nf.to_string(),
        "zero": nf.is_zero(),
    }));
    Ok(r)
}

fn genus(cfg: &RunConfig, class: &str, gens: &str) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let set = read_generators(gens, &table)?;
    let x = read_class(class, &table)?;
    let rep = is_regular_up_to(&set, cfg.truncation_dim, &cfg.fields, &table)?;
    if !rep.verdict {
        let bad: Vec<String> = rep
            .profiles
            .iter()
            .filter_map(|p| p.first_failure().map(|d| format!("{} in dimension {d}", p.field)))
            .collect();
        return Err(CliError::Usage(format!("the sequence fails the regularity precheck: {}", bad.join(", "))));
    }
    let value = normal_form(&x, &set, cfg.truncation_dim)?;
    let mut r = Report::new("genus", cfg);
    r.data(json!({
        "class": x.to_string(),
        "sequence": set.names(),
        "regular_through": cfg.truncation_dim,
        "value": value.to_string(),
    }));
    Ok(r)
}

fn gseries(cfg: &RunConfig) -> Result<Report, CliError> {
    let table = table_for(cfg)?;
    let g = g_series(&table)?;
    let basis = MultiplicativeBasis::new(&table)?;
    let mut r = Report::new("gseries", cfg);
    let residual = g.residual(&table)?;
    r.check(Check::new("residual", "u - sum a_i v^i vanishes through the truncation", residual.is_zero()));
    let a1 = g.a.get(&1).cloned().unwrap_or_else(Poly::zero);
    r.check(Check::new("a1", "a_1 = CP1", a1 == Poly::cp(1)).detail(format!("a_1 = {a1}")));
    r.check(Check::new("mu-half", "every a_i has Z[1/2] coordinates in the multiplicative generators", g.coefficients_in_mu_half(&basis)?));
    r.check(Check::new("chern-z-half", "every a_i has Chern numbers in Z[1/2]", g.coefficients_in_z_half()?));
    let mut out = Table::new(&["i", "dim", "a_i"]);
    let mut in_e = BTreeMap::new();
    for (i, a) in &g.a {
        out.push(vec![i.to_string(), (2 * (2 * i - 1)).to_string(), a.to_string()]);
        in_e.insert(i.to_string(), basis.to_e(a)?.render("e"));
    }
    r.table = Some(out);
    r.data(json!({
        "series": g,
        "a_in_e": in_e,
        "cp_coefficients_odd_denominator": g.cp_coefficients_odd_denominator(),
        "cp_coefficients_in_z_half": g.cp_coefficients_in_z_half(),
    }));
    Ok(r)
}

fn numth(cfg: &RunConfig, cmd: &NumthCmd) -> Result<Report, CliError> {
    match *cmd {
        NumthCmd::D { m } => {
            let c = d_certificate(m)?;
            let mut r = Report::new("numth d", cfg);
            r.check(Check::new("bezout", "the Bezout combination reproduces the gcd", c.verify()));
            let formula = d_formula(m as u64);
            r.check(
                Check::new("formula", "d(m) = p when m+1 is a power of p, else 1", c.value == formula.into())
                    .detail(format!("d({m}) = {}, closed form {formula}", c.value)),
            );
            r.data(&c);
            Ok(r)
        }
        NumthCmd::D2 { m } => {
            let c = d2_of(m)?;
            let mut r = Report::new("numth d2", cfg);
            r.check(Check::new("bezout", "the Bezout combination reproduces the gcd", c.verify()));
            let product = d_of(m)? * d_of(m - 1)?;
            r.check(
                Check::new("identity", "d2(m) = d(m) d(m-1)", c.value == product)
                    .detail(format!("d2({m}) = {}, d({m}) d({}) = {product}", c.value, m - 1)),
            );
            r.data(&c);
            Ok(r)
        }
        NumthCmd::Verify { upto } => {
            let rows = identity_table(upto)?;
            let mut r = Report::new("numth verify", cfg);
            let bad: Vec<String> = rows.iter().filter(|x| !x.ok).map(|x| x.m.to_string()).collect();
            r.check(Check::new("identity", "d2(m) = d(m) d(m-1) for 3 <= m <= M", bad.is_empty()).detail(format!("M = {upto}, failures: {}", list_or_none(&bad))));
            let bad: Vec<String> = rows.iter().filter(|x| !x.formula_ok).map(|x| x.m.to_string()).collect();
            r.check(Check::new("formula", "d(m) matches its closed form for 3 <= m <= M", bad.is_empty()).detail(format!("M = {upto}, failures: {}", list_or_none(&bad))));
            let mut out = Table::new(&["m", "d", "d2", "d_times_prev", "ok"]);
            for x in &rows {
                out.push(vec![x.m.to_string(), x.d.to_string(), x.d2.to_string(), x.d_times_prev.to_string(), x.ok.to_string()]);
            }
            r.table = Some(out);
            r.data(json!({ "rows": rows }));
            Ok(r)
        }
    }
}
