//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! reach the output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lie_jacobi::report::Row;
use lie_jacobi::{Cache, Command, RunConfig};
use lie_jacobi_core::invariants::{
    compute_p, compute_p1, jacobian_classical, jacobian_shifted, restrict_to_h, rho_shift,
    shift_t, sl2_casimir, verify_theorem, InvariantFamily,
};
use lie_jacobi_core::letter::LetterClass;
use lie_jacobi_core::pbw::{normal_order_by_insertion, Straightener};
use lie_jacobi_core::projector::{enumerate_normal_orders, VermaModule};
use lie_jacobi_core::rational::q;
use lie_jacobi_core::rootdata::RootSystem;
use lie_jacobi_core::{
    CommPoly, Error, Letter, LieStructure, NCElement, Q, SimpleType, Var,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(elapsed: Duration, bound_secs: f64, what: &str) -> Result<(), String> {
    ensure(
        elapsed.as_secs_f64() < bound_secs,
        format!("{what} took {:.2}s, bound {bound_secs}s", elapsed.as_secs_f64()),
    )
}

/// `sl_2` letters in the short notation `h`, `ht`, `ht^2`, ...
fn short_letter(l: &Letter) -> String {
    let stem = match l.class {
        LetterClass::Neg => "f",
        LetterClass::Cartan => "h",
        LetterClass::Pos => "e",
    };
    match l.t_power {
        0 => stem.to_string(),
        1 => format!("{stem}t"),
        k => format!("{stem}t^{k}"),
    }
}

fn power(l: &Letter, e: usize) -> String {
    let s = short_letter(l);
    match (e, s.len()) {
        (1, _) => s,
        (_, 1) => format!("{s}^{e}"),
        _ => format!("({s})^{e}"),
    }
}

fn coefficient_prefix(c: &Q) -> String {
    if *c == q(1) {
        String::new()
    } else {
        lie_jacobi_core::rational::display(c)
    }
}

/// Terms rendered in the short notation, sorted and joined by ` + `.
fn short_nc(e: &NCElement) -> String {
    let mut terms: Vec<String> = e
        .terms()
        .map(|(w, c)| {
            let mut s = coefficient_prefix(c);
            let mut i = 0;
            while i < w.len() {
                let run = w[i..].iter().take_while(|l| **l == w[i]).count();
                s.push_str(&power(&w[i], run));
                i += run;
            }
            s
        })
        .collect();
    terms.sort();
    terms.join(" + ")
}

fn short_poly(p: &CommPoly) -> String {
    let mut terms: Vec<String> = p
        .terms()
        .map(|(m, c)| {
            let mut s = coefficient_prefix(c);
            for (v, e) in m.factors() {
                match v {
                    Var::L(l) => s.push_str(&power(l, *e as usize)),
                    Var::T => s.push('t'),
                }
            }
            s
        })
        .collect();
    terms.sort();
    terms.join(" + ")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let lie = LieStructure::build_sl(1).map_err(fail)?;
    let fam = InvariantFamily::from_generators(&lie, vec![sl2_casimir()], "casimir").map_err(fail)?;
    let wl = fam.working_lie();
    let mut st = Straightener::new(&wl);
    let sym = st
        .symmetrize(&shift_t(&fam.generators[0]).map_err(fail)?)
        .map_err(fail)?;
    let sym_text = short_nc(&sym);
    ensure(sym_text == "(ht)^2 + 2ht^2 + 4ftet", format!("symmetrised image {sym_text}"))?;
    let p1 = compute_p1(&mut st, &fam, 0).map_err(fail)?;
    let p1_text = short_poly(&p1);
    ensure(p1_text == "(ht)^2 + 2ht^2", format!("P^[1] = {p1_text}"))?;
    let j = jacobian_shifted(&[p1]).map_err(fail)?;
    let h = CommPoly::var(Letter::h(0));
    ensure(j == (h + CommPoly::int(2)).scalar_mul(&q(2)), format!("J = {j}"))?;
    let rep = lie_jacobi_core::invariants::verify_family(&fam).map_err(fail)?;
    let factored = rep.expected_factored(&lie);
    ensure(factored == "2*(h1 + 2)" && rep.all_ok(), format!("J factored {factored}"))?;
    within(start.elapsed(), 1.0, "sl2 golden")?;
    Ok(format!("{sym_text}; P = {p1_text}; J = {factored}"))
}

fn criterion_2() -> Outcome {
    let mut details = Vec::new();
    for (n, bound) in [(1, 5.0), (2, 5.0), (3, 600.0)] {
        let start = Instant::now();
        let rep = verify_theorem(SimpleType::a(n).map_err(fail)?).map_err(fail)?;
        ensure(
            (&rep.j_shifted - &rep.expected).is_zero() && rep.theorem_ok,
            format!("A{n}: J - C prod(h_a + rho(h_a) + 1) = {}", &rep.j_shifted - &rep.expected),
        )?;
        within(start.elapsed(), bound, &format!("A{n}"))?;
        details.push(format!("A{n} C={} {:.2}s", rep.c, start.elapsed().as_secs_f64()));
    }
    Ok(details.join(", "))
}

fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    for n in 1..=3 {
        let rep = verify_theorem(SimpleType::a(n).map_err(fail)?).map_err(fail)?;
        let rs = RootSystem::build(rep.simple_type).map_err(fail)?;
        let prod_h = rs.coroot_product(|_| 0).scalar_mul(&rep.c);
        let top = rep.j_shifted.highest_component().map_err(fail)?;
        ensure(top == prod_h, format!("A{n}: highest component {top}"))?;
        let at_zero = rep.j_shifted.constant_term();
        let rho_plus_one: Q = rs.rho_pairings.iter().map(|&m| q(m + 1)).product();
        let rho: Q = rs.rho_pairings.iter().map(|&m| q(m)).product();
        ensure(at_zero == &rep.c * rho_plus_one, format!("A{n}: J(0) = {at_zero}"))?;
        ensure(
            at_zero == q(rs.weyl_order as i64) * &rep.c * rho,
            format!("A{n}: J(0) != |W| C prod rho(h_a)"),
        )?;
        ensure(rep.lemma1_ok && rep.lemma2_ok, format!("A{n}: report flags"))?;
        details.push(format!("A{n} J(0)={at_zero}"));
    }
    Ok(details.join(", "))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig::new(Command::Combinatorics, "all", 6);
    let report = lie_jacobi::run_with_cache(&cfg, &Cache::disabled()).map_err(fail)?;
    let mut kostant = 0;
    let mut poincare = 0;
    for row in &report.rows {
        let Row::Combinatorics(r) = row else {
            return Err("unexpected row".into());
        };
        ensure(r.kostant_equal, format!("{}: Kostant {} vs {}", r.simple_type, r.kostant_lhs, r.weyl_order))?;
        kostant += 1;
        if r.rank <= 4 {
            ensure(r.poincare_equal == Some(true), format!("{}: Poincare", r.simple_type))?;
            poincare += 1;
        }
    }
    ensure(kostant == 21 && report.all_ok, "expected 21 types")?;
    let b6 = report.rows.iter().any(|r| matches!(r, Row::Combinatorics(c) if c.simple_type == "B6" && c.weyl_order == 46080));
    ensure(b6, "B6 row missing |W| = 46080")?;
    within(start.elapsed(), 30.0, "combinatorics")?;
    Ok(format!("{kostant} Kostant rows, {poincare} Poincare identities"))
}

fn criterion_5() -> Outcome {
    let mut details = Vec::new();
    for n in 1..=3 {
        let lie = LieStructure::build_sl(n).map_err(fail)?;
        let fam = InvariantFamily::trace_invariants(&lie).map_err(fail)?;
        let wl = fam.working_lie();
        let mut st = Straightener::new(&wl);
        let rs = lie.root_system();
        let circ: Vec<CommPoly> = fam.generators.iter().map(restrict_to_h).collect();
        let j_circ = jacobian_classical(&circ).map_err(fail)?;
        let prod_h = rs.coroot_product(|_| 0);
        let c = j_circ
            .exact_divide(&prod_h)
            .map_err(fail)?
            .as_constant()
            .ok_or("C is not a scalar")?;
        let ps = (0..n)
            .map(|i| compute_p(&mut st, &fam, i))
            .collect::<Result<Vec<_>, _>>()
            .map_err(fail)?;
        let j_p = jacobian_classical(&ps).map_err(fail)?;
        ensure(
            j_p == rs.coroot_product(|k| rs.rho_pairings[k]).scalar_mul(&c),
            format!("A{n}: J(P) = {j_p}"),
        )?;
        details.push(format!("A{n} C={c}"));
    }
    Ok(details.join(", "))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut generators = 0;
    for n in 1..=2 {
        let cfg = RunConfig::new(Command::Takiff, "A", n);
        let report = lie_jacobi::run_with_cache(&cfg, &Cache::disabled()).map_err(fail)?;
        for row in &report.rows {
            match row {
                Row::Takiff(r) => {
                    ensure(r.commutes_with_g, format!("A{n} [R{}, g] != 0", r.generator))?;
                    ensure(r.r_via_script_t, format!("A{n} R{} != T(P^[1])", r.generator))?;
                    ensure(r.cartan_part_matches, format!("A{n} R{} Cartan part", r.generator))?;
                    if r.degree == 2 {
                        ensure(r.commutes_with_q == Some(true), format!("A{n} [R1, q] != 0"))?;
                    }
                    if n == 1 {
                        ensure(
                            r.cartan_part_text == "(2*h1 + 4)*(h1.u)",
                            format!("A1 Cartan part {}", r.cartan_part_text),
                        )?;
                    }
                    generators += 1;
                }
                Row::Obstruction(r) => {
                    ensure(r.factor_two, format!("obstruction {}", r.pair))?;
                    if r.pair == "e1, f1" {
                        ensure(
                            r.psi_of_commutator == "2*h1.u" && r.bracket_u == "h1.u",
                            format!("{} vs {}", r.psi_of_commutator, r.bracket_u),
                        )?;
                    }
                }
                _ => return Err("unexpected row".into()),
            }
        }
        ensure(report.all_ok, format!("A{n} takiff report"))?;
    }
    within(start.elapsed(), 60.0, "takiff suite")?;
    Ok(format!("{generators} generators, obstruction 2*h1.u vs h1.u"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    for n in 1..=2 {
        let cfg = RunConfig::new(Command::Projector, "A", n);
        let report = lie_jacobi::run_with_cache(&cfg, &Cache::disabled()).map_err(fail)?;
        for row in &report.rows {
            let Row::Projector(r) = row else {
                return Err("unexpected row".into());
            };
            ensure(r.ok, format!("A{n} {}: {}", r.property, r.detail))?;
            rows += 1;
        }
        ensure(report.all_ok, format!("A{n} projector report"))?;
    }
    // pole scan on sl2: p(f^m v_lambda) has a pole iff lambda in {m-1, ..., 2m-2}
    let mut poles = 0;
    for m in 1..=3u32 {
        for lambda in -3i64..=6 {
            let module = VermaModule::numeric(LieStructure::build_sl(1).map_err(fail)?, &[q(lambda)])
                .map_err(fail)?;
            let order = &enumerate_normal_orders(module.roots()).map_err(fail)?[0];
            let got = module.apply_projector(order, &module.sl2_lowered(m));
            let mi = i64::from(m);
            let expected = (mi - 1..=2 * mi - 2).contains(&lambda);
            let fired = matches!(got, Err(Error::Pole { .. }));
            ensure(fired == expected, format!("lambda={lambda}, m={m}: pole {fired}"))?;
            if let Err(e) = &got {
                ensure(fired, format!("unexpected error {e}"))?;
            }
            poles += usize::from(fired);
        }
    }
    within(start.elapsed(), 30.0, "projector suite")?;
    Ok(format!("{rows} property rows, {poles} poles exactly where predicted"))
}

fn random_letter(rng: &mut ChaCha8Rng, s: &LieStructure, flavour: usize) -> Letter {
    let base = s.basis()[rng.gen_range(0..s.dim())];
    match flavour {
        0 => base,
        1 => base.with_t(rng.gen_range(0..=2)),
        _ => base.with_u(rng.gen_bool(0.5)),
    }
}

fn criterion_8() -> Outcome {
    // Jacobi identity, exhaustive on plain bases up to rank 3
    for rank in 1..=3 {
        let s = LieStructure::build_sl(rank).map_err(fail)?;
        let basis = s.basis().to_vec();
        let mut st = Straightener::new(&s);
        for &x in &basis {
            for &y in &basis {
                for &z in &basis {
                    let l = |a: Letter| NCElement::letter(a);
                    let xy = st.commutator(&l(x), &l(y)).map_err(fail)?;
                    let yz = st.commutator(&l(y), &l(z)).map_err(fail)?;
                    let zx = st.commutator(&l(z), &l(x)).map_err(fail)?;
                    let sum = st.commutator(&l(x), &yz).map_err(fail)?
                        + st.commutator(&l(y), &zx).map_err(fail)?
                        + st.commutator(&l(z), &xy).map_err(fail)?;
                    ensure(sum.is_zero(), format!("Jacobi fails on {x} {y} {z}"))?;
                }
            }
        }
    }

    // symmetrisation equivariance and dual normal ordering
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut agreements = 0;
    for rank in 1..=2 {
        let s = LieStructure::build_sl(rank).map_err(fail)?.with_t_cap(8);
        let mut st = Straightener::new(&s);
        for flavour in 0..3 {
            for _ in 0..500 {
                let mut e = NCElement::zero();
                for _ in 0..rng.gen_range(1..=3) {
                    let w = (0..rng.gen_range(0..=4))
                        .map(|_| random_letter(&mut rng, &s, flavour))
                        .collect();
                    e.add_term(w, q(rng.gen_range(-4..5)));
                }
                let a = st.normal_order(&e).map_err(fail)?;
                let b = normal_order_by_insertion(&s, &e).map_err(fail)?;
                ensure(a == b, format!("normal orderings disagree on {e}"))?;
                agreements += 1;
            }
            for _ in 0..40 {
                let p = (0..rng.gen_range(1..=3)).fold(CommPoly::one(), |m, _| {
                    m * CommPoly::var(random_letter(&mut rng, &s, flavour))
                });
                let x = random_letter(&mut rng, &s, flavour);
                let sym = st.symmetrize(&p).map_err(fail)?;
                let lhs = st.commutator(&NCElement::letter(x), &sym).map_err(fail)?;
                let rhs = st.symmetrize(&s.ad_action(x, &p).map_err(fail)?).map_err(fail)?;
                ensure(lhs == rhs, format!("symmetrisation not equivariant for {x}, {p}"))?;
            }
        }
    }

    // W-invariance of rho-shifted Harish-Chandra images
    for n in 1..=3 {
        let fam = InvariantFamily::trace_invariants(&LieStructure::build_sl(n).map_err(fail)?)
            .map_err(fail)?;
        let wl = fam.working_lie();
        let mut st = Straightener::new(&wl);
        let rs = wl.root_system();
        for i in 0..n {
            let shifted = rho_shift(&compute_p(&mut st, &fam, i).map_err(fail)?, n);
            for s in 0..n {
                let image = rs.simple_reflection_action(s, &shifted).map_err(fail)?;
                ensure(image == shifted, format!("A{n}: P{} not W-invariant", i + 1))?;
            }
        }
    }

    // report determinism, independent of jobs and of the cache state
    let dir = tempfile::tempdir().map_err(fail)?;
    let mut reports = Vec::new();
    for (jobs, cached) in [(1, false), (4, false), (2, true), (3, true)] {
        let mut cfg = RunConfig::new(Command::VerifyTheorem, "A", 2);
        cfg.jobs = jobs;
        cfg.seed = 17;
        let cache = if cached {
            Cache::new(Some(dir.path().to_path_buf()))
        } else {
            Cache::disabled()
        };
        reports.push(lie_jacobi::run_with_cache(&cfg, &cache).map_err(fail)?.to_json());
    }
    ensure(reports.windows(2).all(|w| w[0] == w[1]), "JSON reports differ between runs")?;
    let mut cfg = RunConfig::new(Command::Projector, "A", 2);
    cfg.seed = 17;
    let a = lie_jacobi::run(&cfg).map_err(fail)?.to_json();
    cfg.jobs = 4;
    let b = lie_jacobi::run(&cfg).map_err(fail)?.to_json();
    ensure(a == b, "projector reports differ between runs")?;
    Ok(format!("Jacobi rank<=3, {agreements} normal-order agreements, W-invariance A1-A3, byte-identical reports"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("sl2 golden pipeline", criterion_1),
        ("Jacobian identity A1-A3", criterion_2),
        ("highest component and value at zero A1-A3", criterion_3),
        ("Kostant and Poincare identities", criterion_4),
        ("classical Jacobians A1-A3", criterion_5),
        ("Takiff suite A1-A2", criterion_6),
        ("extremal projector suite", criterion_7),
        ("structural property suites", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} [PRIMARY] {name}: PASS ({detail}; {secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [PRIMARY] {name}: FAIL ({why}; {secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
