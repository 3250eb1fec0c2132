//! Acceptance criteria 1 to 10, one line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cobord::chern::{chern_numbers, is_su, novikov_check, s_number};
use cobord::fgl::{check_axioms, fgl_coefficients, g_series, FglTable};
use cobord::generators::{build_e, build_y, GeneratorEntry, GeneratorSet, MultiplicativeBasis, Provenance};
use cobord::numth::{binomial, d2_of, d_formula_check, d_of, verify_d2_identity};
use cobord::regseq::{ideal_membership, is_regular_up_to, CoeffField, Coordinates, QuotientContext};
use cobord::scalar::odd_part;
use cobord::{Poly, Rational};
use num_traits::{Signed, Zero};

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn fields() -> Vec<CoeffField> {
    CoeffField::parse_list("q,3,5").unwrap()
}

fn criterion_1(t: &FglTable, built_in: Duration) -> Outcome {
    let start = Instant::now();
    let c = check_axioms(t).map_err(|e| e.to_string())?;
    let elapsed = built_in + start.elapsed();
    ensure(c.ok(), || format!("{c:?}"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))
}

fn criterion_2(t: &FglTable) -> Outcome {
    let s11 = s_number(t.try_alpha(1, 1).unwrap()).unwrap();
    ensure(s11 == int(-2), || format!("s_1(alpha11) = {s11}"))?;
    let eps = -1;
    for k in 2..=11 {
        for i in 1..=k {
            let s = s_number(t.try_alpha(i, k + 1 - i).unwrap()).unwrap();
            let want = Rational::from_integer(binomial(k + 1, i) * eps);
            ensure(s == want, || format!("s_{k}(alpha{i},{}) = {s}, want {want}", k + 1 - i))?;
        }
    }
    Ok(())
}

fn criterion_3(t: &FglTable) -> Outcome {
    let xs = GeneratorSet::x_family(t).unwrap();
    let mut failures = Vec::new();
    for (e, want) in xs.entries().iter().zip([3, 3, 5]) {
        let v = chern_numbers(e.class()).unwrap();
        for (w, c) in v.c1_entries() {
            if !c.is_zero() {
                failures.push(format!("{}: c{w} = {c}", e.name()));
            }
        }
        let odd = odd_part(e.s_value()).map(|o| o.abs());
        if odd != Some(int(want)) {
            failures.push(format!("{}: s = {}", e.name(), e.s_value()));
        }
        if !novikov_check(e.n() as u64, e.s_value()).unwrap() {
            failures.push(format!("{}: fails Novikov", e.name()));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn criterion_4(t: &FglTable) -> Outcome {
    for m in 2..=11 {
        let s = s_number(&build_e(m, t).unwrap()).unwrap();
        let d = Rational::from_integer(d_of(m).unwrap());
        ensure(s.abs() == d, || format!("e{m}: s = {s}, d = {d}"))?;
    }
    for k in 3..=11 {
        let s = s_number(&build_y(k, t).unwrap()).unwrap();
        let d2 = Rational::from_integer(d2_of(k).unwrap().value);
        ensure(s.abs() == d2, || format!("y{k}: s = {s}, d2 = {d2}"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    ensure(verify_d2_identity(500).unwrap(), || "d2(m) = d(m) d(m-1) fails".into())?;
    ensure(d_formula_check(500).unwrap(), || "closed form of d(m) fails".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))
}

fn criterion_6(t: &FglTable) -> Outcome {
    let gamma = GeneratorSet::gamma(t, 8).unwrap();
    let n = gamma.len();
    let regular = |set: &GeneratorSet, fields: &[CoeffField]| is_regular_up_to(set, 24, fields, t).unwrap();
    let full = regular(&gamma, &fields());
    ensure(full.verdict, || {
        let bad: Vec<String> =
            full.profiles.iter().filter_map(|p| p.first_failure().map(|d| format!("{} at {d}", p.field))).collect();
        format!("Gamma not regular: {}", bad.join(", "))
    })?;
    let mut orders: Vec<Vec<usize>> = (0..n).map(|r| (0..n).map(|i| (i + r) % n).collect()).collect();
    orders.push((0..n).rev().collect());
    orders.push(vec![6, 0, 5, 1, 4, 2, 3]);
    for order in &orders {
        let v = regular(&gamma.select(order), &fields()).verdict;
        ensure(v, || format!("permutation {order:?} not regular"))?;
    }
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub = gamma.select(&idx);
        ensure(regular(&sub, &[CoeffField::Rationals]).verdict, || format!("subsequence {:?} not regular", sub.names()))?;
    }
    Ok(())
}

fn criterion_7(t: &FglTable) -> Outcome {
    let xs = GeneratorSet::x_family(t).unwrap();
    let y = GeneratorSet::y_family(t, 12).unwrap();
    let x2y = xs.select(&[0]).concat(&y);
    for f in fields() {
        for (e, gens) in xs.entries()[1..].iter().map(|e| (e, &y)).chain(xs.entries().iter().map(|e| (e, &x2y))) {
            let m = ideal_membership(e.class(), gens, f, t, true).unwrap();
            ensure(m.member, || format!("{} not in ({}) over {f}", e.name(), gens.names().join(", ")))?;
            let cert = m.certificate.unwrap_or_default();
            ensure(!cert.is_empty(), || format!("{} in ({}) has no certificate", e.name(), gens.names().join(", ")))?;
        }
        let m = ideal_membership(&Poly::cp(1), &xs.select(&[0]), f, t, false).unwrap();
        ensure(!m.member, || format!("CP1 reported in (x2) over {f}"))?;
    }
    // the rational multipliers reproduce the class exactly
    let q = cobord::regseq::rational_certificate(xs.classes()[2], &y).unwrap().unwrap();
    let mut total = Poly::zero();
    for (qi, g) in q.iter().zip(y.classes()) {
        total = total + qi.clone() * g.clone();
    }
    ensure(&total == xs.classes()[2], || "x4 certificate does not reproduce x4".into())
}

fn criterion_8(t: &FglTable) -> Outcome {
    let y = GeneratorSet::y_family(t, 10).unwrap();
    let ctx = QuotientContext::<Rational>::new(&y, 20, Coordinates::Projective).unwrap();
    let mut seen = 0;
    for (i, j, a) in t.entries() {
        if i >= 2 && j >= 2 && 2 * (i + j - 1) <= 20 {
            seen += 1;
            let nf = ctx.normal_form(a).unwrap();
            ensure(nf.is_zero(), || format!("nf(alpha{i},{j}) = {nf}"))?;
        }
    }
    ensure(seen == 20, || format!("checked {seen} coefficients"))
}

fn criterion_9() -> Outcome {
    let t = fgl_coefficients(20).unwrap();
    let g = g_series(&t).map_err(|e| e.to_string())?;
    ensure(g.residual(&t).unwrap().is_zero(), || "residual is nonzero".into())?;
    ensure(g.a.keys().copied().eq(1..=5), || format!("coefficients {:?}", g.a.keys().collect::<Vec<_>>()))?;
    let basis = MultiplicativeBasis::new(&t).unwrap();
    for (i, a) in &g.a {
        ensure(basis.in_mu_half(a).unwrap(), || format!("a{i} has e-coordinates outside Z[1/2]"))?;
        ensure(chern_numbers(a).unwrap().all_in_z_half(), || format!("a{i} has Chern numbers outside Z[1/2]"))?;
    }
    let a1 = &g.a[&1];
    ensure(a1 == &Poly::cp(1) && a1 == &t.try_alpha(1, 1).unwrap().neg_ref(), || format!("a1 = {a1}"))
}

fn criterion_10(t: &FglTable) -> Outcome {
    let x2 = GeneratorSet::x_family(t).unwrap().select(&[0]);
    let mut bad = x2.clone();
    bad.push(GeneratorEntry::new("x2^2", x2.classes()[0].pow(2), Provenance::Given { source: "x2^2".into() }).unwrap());
    ensure(!is_regular_up_to(&bad, 24, &fields(), t).unwrap().verdict, || "{x2, x2^2} certified regular".into())?;
    ensure(!novikov_check(3, &int(10)).unwrap(), || "novikov_check(3, 10) is true".into())?;
    ensure(!is_su(&Poly::cp(1)).unwrap(), || "CP1 reported SU".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let t = fgl_coefficients(24).unwrap();
    let built = start.elapsed();
    let criteria: Vec<Criterion> = vec![
        ("FGL axioms at N = 24", Box::new(|| criterion_1(&t, built))),
        ("s-number law for alpha_ij, 2 <= k <= 11", Box::new(|| criterion_2(&t))),
        ("x2, x3, x4 are SU with odd parts 3, 3, 5 and pass Novikov", Box::new(|| criterion_3(&t))),
        ("|s(e_m)| = d(m) and |s(y_k)| = d2(k)", Box::new(|| criterion_4(&t))),
        ("d2(m) = d(m) d(m-1) and closed form of d(m), m <= 500", Box::new(criterion_5)),
        ("Gamma = x2..x8 regular through 24 over Q, F3, F5, with permutations and subsequences", Box::new(|| criterion_6(&t))),
        ("x3, x4 in (Y); x2, x3, x4 in (x2, Y); CP1 not in (x2)", Box::new(|| criterion_7(&t))),
        ("alpha_ij = 0 modulo (Y) for i, j >= 2 through dimension 20", Box::new(|| criterion_8(&t))),
        ("G series: zero residual, a_i in MU_*[1/2], a1 = CP1", Box::new(criterion_9)),
        ("negative controls", Box::new(|| criterion_10(&t))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        match run() {
            Ok(()) => println!("criterion {:>2}: PASS  {name} [{:.2?}]", i + 1, t0.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} [{:.2?}]: {why}", i + 1, t0.elapsed());
            }
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
