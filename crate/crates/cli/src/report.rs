//! Report rows, JSON emission and the human table.
//!
//! Rationals are serialised as `"p/q"` strings and polynomials as sorted
//! term lists `[coefficient, [factor^exp, ...]]`, so nothing is lost to
//! floating point on the consumer side. Timings are kept out of the JSON
//! so that equal configurations give byte-identical reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{Command, ConfigSummary};

/// `(coefficient "p/q", factors "class:index:t:u^exp")`.
pub type TermList = Vec<(String, Vec<String>)>;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Command,
    pub config: ConfigSummary,
    pub rows: Vec<Row>,
    pub all_ok: bool,
    pub version: String,
    #[serde(skip)]
    pub timing_secs: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Row {
    Theorem(TheoremRow),
    Combinatorics(CombinatoricsRow),
    Takiff(TakiffRow),
    Obstruction(ObstructionRow),
    Projector(ProjectorRow),
}

impl Row {
    pub fn ok(&self) -> bool {
        match self {
            Row::Theorem(r) => r.ok,
            Row::Combinatorics(r) => r.ok,
            Row::Takiff(r) => r.ok,
            Row::Obstruction(r) => r.ok,
            Row::Projector(r) => r.ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorImage {
    pub index: usize,
    pub degree: u32,
    pub p1: TermList,
    pub p1_text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremRow {
    pub simple_type: String,
    pub generators: Vec<GeneratorImage>,
    pub c: String,
    pub jacobian: TermList,
    pub jacobian_text: String,
    pub expected: TermList,
    pub expected_factored: String,
    pub jacobian_at_zero: String,
    pub classical_ok: bool,
    pub lemma1_ok: bool,
    pub lemma2_ok: bool,
    pub theorem_ok: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CombinatoricsRow {
    pub simple_type: String,
    pub rank: usize,
    pub kostant_lhs: String,
    pub weyl_order: u64,
    pub kostant_equal: bool,
    /// Poincaré polynomial as a sum over `W`, when enumerated.
    pub poincare: Option<String>,
    pub poincare_equal: Option<bool>,
    /// Why a check was not run.
    pub note: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TakiffRow {
    pub simple_type: String,
    pub generator: usize,
    pub degree: u32,
    pub r_terms: usize,
    /// `[R_i, x] = 0` for the basis of `g`.
    pub commutes_with_g: bool,
    /// `[R_i, x] = 0` for the basis of `q`; quadratic generator only.
    pub commutes_with_q: Option<bool>,
    pub r_via_script_t: bool,
    pub cartan_part: TermList,
    pub cartan_part_text: String,
    pub cartan_part_matches: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionRow {
    pub pair: String,
    pub psi_of_commutator: String,
    pub bracket_u: String,
    pub factor_two: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectorRow {
    pub property: String,
    /// True for rows demonstrating an expected pole error.
    pub expected_error: bool,
    pub detail: String,
    pub ok: bool,
}

impl Report {
    pub fn new(command: Command, config: ConfigSummary, rows: Vec<Row>) -> Self {
        let all_ok = !rows.is_empty() && rows.iter().all(Row::ok);
        Report {
            command,
            config,
            rows,
            all_ok,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timing_secs: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_ok {
            crate::EXIT_OK
        } else {
            crate::EXIT_FAILED
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "{} {} {} (seed {})",
            self.command.name(),
            c.family,
            c.rank,
            c.seed
        );
        for row in &self.rows {
            render_row(&mut out, row);
        }
        let _ = writeln!(
            out,
            "{} in {:.2}s",
            if self.all_ok { "ALL OK" } else { "FAILED" },
            self.timing_secs
        );
        out
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn opt_mark(v: Option<bool>) -> &'static str {
    v.map_or("-", mark)
}

fn render_row(out: &mut String, row: &Row) {
    let _ = match row {
        Row::Theorem(r) => {
            for g in &r.generators {
                let _ = writeln!(out, "  P{}^[1] (degree {}) = {}", g.index, g.degree, g.p1_text);
            }
            writeln!(
                out,
                "  {}: C = {}\n  J = {}\n    = {}\n  J(0) = {}\n  theorem {}  lemma1 {}  lemma2 {}  classical {}",
                r.simple_type,
                r.c,
                r.jacobian_text,
                r.expected_factored,
                r.jacobian_at_zero,
                mark(r.theorem_ok),
                mark(r.lemma1_ok),
                mark(r.lemma2_ok),
                mark(r.classical_ok),
            )
        }
        Row::Combinatorics(r) => writeln!(
            out,
            "  {:<4} |W| = {:<10} kostant {:>10} = {:<10} {}  poincare {}{}",
            r.simple_type,
            r.weyl_order,
            r.kostant_lhs,
            r.weyl_order,
            mark(r.kostant_equal),
            opt_mark(r.poincare_equal),
            r.note.as_ref().map(|n| format!("  ({n})")).unwrap_or_default(),
        ),
        Row::Takiff(r) => writeln!(
            out,
            "  {} R{} (degree {}, {} terms): [R,g] {}  [R,q] {}  R = T(P^[1]) {}  Cartan part {}\n    Cartan part = {}",
            r.simple_type,
            r.generator,
            r.degree,
            r.r_terms,
            mark(r.commutes_with_g),
            opt_mark(r.commutes_with_q),
            mark(r.r_via_script_t),
            mark(r.cartan_part_matches),
            r.cartan_part_text,
        ),
        Row::Obstruction(r) => writeln!(
            out,
            "  psi([{}]) = {}  vs  [{}]u = {}  {}",
            r.pair,
            r.psi_of_commutator,
            r.pair,
            r.bracket_u,
            mark(r.ok)
        ),
        Row::Projector(r) => writeln!(
            out,
            "  {:<22} {}{}  {}",
            r.property,
            mark(r.ok),
            if r.expected_error { " (expected error)" } else { "" },
            r.detail
        ),
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    fn projector_row(ok: bool) -> Row {
        Row::Projector(ProjectorRow {
            property: "x".into(),
            expected_error: false,
            detail: String::new(),
            ok,
        })
    }

    fn summary() -> ConfigSummary {
        ConfigSummary {
            family: "A".into(),
            rank: 1,
            seed: 0,
        }
    }

    #[test]
    fn any_false_row_fails_the_run() {
        let good = Report::new(Command::Projector, summary(), vec![projector_row(true)]);
        assert_eq!(good.exit_code(), crate::EXIT_OK);
        let bad = Report::new(
            Command::Projector,
            summary(),
            vec![projector_row(true), projector_row(false)],
        );
        assert!(!bad.all_ok);
        assert_eq!(bad.exit_code(), crate::EXIT_FAILED);
        assert!(bad.to_table().contains("FAIL"));
        let empty = Report::new(Command::Projector, summary(), vec![]);
        assert_eq!(empty.exit_code(), crate::EXIT_FAILED);
    }

    #[test]
    fn timing_stays_out_of_json() {
        let mut r = Report::new(Command::Projector, summary(), vec![projector_row(true)]);
        let a = r.to_json();
        r.timing_secs = 12.5;
        assert_eq!(r.to_json(), a);
        assert!(!a.contains("timing"));
    }
}
