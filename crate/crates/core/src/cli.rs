//! The `chartab` command line.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::checks::{pseudo_check, validate, ValidationReport, Verdict};
use crate::cyclo::Cyclotomic;
use crate::degrees::{enumerate_pairs, feasible_ramifications, hls_max_order, lemma_scenarios, FeasibilityOpts};
use crate::io::{parse, IoError, Parsed};
use crate::solve::{solve_missing_column, solve_missing_row, CaseTrace, SolveError, SolveHints, SolveOutcome};
use crate::table::{CharacterTable, Missing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chartab", version, about = "Check and complete character tables of finite groups")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Supply a fact the solver cannot read off the table, e.g. `sylow2-ab=4`.
    #[arg(long, global = true, value_name = "KEY=VALUE", value_parser = parse_hint)]
    hint: Vec<Hint>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy)]
enum Hint {
    Sylow2Abelianization(u64),
}

fn parse_hint(s: &str) -> Result<Hint, String> {
    let (key, value) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got {s:?}"))?;
    match key {
        "sylow2-ab" => value
            .parse::<u64>()
            .ok()
            .filter(|&v| v > 0)
            .map(Hint::Sylow2Abelianization)
            .ok_or_else(|| format!("sylow2-ab needs a positive integer, got {value:?}")),
        _ => Err(format!("unknown hint {key:?} (known: sylow2-ab)")),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of a character table.
    Validate { file: PathBuf },
    /// Group order, centralizer orders, class sizes and element orders.
    Info { file: PathBuf },
    /// Reconstruct the missing row of a table.
    SolveRow { file: PathBuf },
    /// Reconstruct the missing column of a table.
    SolveCol { file: PathBuf },
    /// Test characters vanishing off two classes against the arithmetic a group forces.
    PseudoCheck { file: PathBuf },
    /// Candidate pairs (d, d(d+e)) below the order bound.
    Degrees { e: u64 },
    /// Clifford-theoretic restrictions of a degree-D character to a normal subgroup of order M.
    Feasible {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        normal: u64,
        #[arg(long)]
        abelian: bool,
        #[arg(long)]
        central: bool,
        #[arg(long)]
        coprime_extension: bool,
    },
    /// Run the preset exclusion scenarios.
    LemmaScenarios,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    json: bool,
    stdout: String,
    stderr: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }

    fn err(&mut self, s: impl AsRef<str>) {
        self.stderr.push_str(s.as_ref());
        self.stderr.push('\n');
    }

    fn emit_json(&mut self, v: &impl Serialize) {
        let text = serde_json::to_string_pretty(v).expect("output is serializable");
        self.line(text);
    }

    fn finish(self, code: i32) -> CliOutput {
        CliOutput { code, stdout: self.stdout, stderr: self.stderr }
    }
}

pub fn run_cli<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code, stdout: String::new(), stderr: text }
            } else {
                CliOutput { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = Out { json: cli.json, stdout: String::new(), stderr: String::new() };
    let mut hints = SolveHints::default();
    for h in &cli.hint {
        match h {
            Hint::Sylow2Abelianization(v) => hints.sylow2_abelianization = Some(*v),
        }
    }
    let code = match cli.command {
        Command::Validate { file } => with_full(&mut out, &file, cmd_validate),
        Command::Info { file } => with_parsed(&mut out, &file, cmd_info),
        Command::SolveRow { file } => with_parsed(&mut out, &file, |o, p| cmd_solve(o, p, Missing::Row, hints)),
        Command::SolveCol { file } => with_parsed(&mut out, &file, |o, p| cmd_solve(o, p, Missing::Column, hints)),
        Command::PseudoCheck { file } => with_full(&mut out, &file, cmd_pseudo),
        Command::Degrees { e } => cmd_degrees(&mut out, e),
        Command::Feasible { order, degree, normal, abelian, central, coprime_extension } => cmd_feasible(
            &mut out,
            order,
            degree,
            normal,
            FeasibilityOpts { n_abelian: abelian, n_central: central, coprime_extension },
        ),
        Command::LemmaScenarios => cmd_scenarios(&mut out),
    };
    out.finish(code)
}

fn usage_error(out: &mut Out, message: String) -> i32 {
    if out.json {
        out.emit_json(&json!({ "error": "usage", "message": message }));
    }
    out.err(format!("error: {message}"));
    EXIT_USAGE
}

fn with_parsed(out: &mut Out, file: &PathBuf, f: impl FnOnce(&mut Out, Parsed) -> i32) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage_error(out, format!("{}: {e}", file.display())),
    };
    match parse(&text) {
        Ok(p) => f(out, p),
        Err(e @ IoError::Parse { .. }) | Err(e @ IoError::DimensionMismatch(_)) | Err(e @ IoError::Table(_)) => {
            usage_error(out, format!("{}: {e}", file.display()))
        }
    }
}

fn with_full(out: &mut Out, file: &PathBuf, f: impl FnOnce(&mut Out, CharacterTable) -> i32) -> i32 {
    with_parsed(out, file, |out, p| match p {
        Parsed::Full(t) => f(out, t),
        Parsed::Partial(p) => usage_error(
            out,
            format!(
                "{} is missing a {}; complete it with solve-{} first",
                file.display(),
                if p.missing() == Missing::Row { "row" } else { "column" },
                if p.missing() == Missing::Row { "row" } else { "col" },
            ),
        ),
    })
}

fn print_report(out: &mut Out, name: &str, report: &ValidationReport) {
    if report.passed {
        out.line(format!("valid: {name}"));
        return;
    }
    out.line(format!("invalid: {name} ({} violations)", report.violations.len()));
    for v in &report.violations {
        match &v.defect {
            Some(d) => out.line(format!("  {} at {}: defect {d}", v.rule, v.location)),
            None => out.line(format!("  {} at {}", v.rule, v.location)),
        }
    }
}

fn cmd_validate(out: &mut Out, t: CharacterTable) -> i32 {
    let report = validate(&t);
    if out.json {
        out.emit_json(&json!({ "name": t.name, "report": report }));
    } else {
        print_report(out, &t.name, &report);
    }
    if report.passed {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn cmd_info(out: &mut Out, p: Parsed) -> i32 {
    let t = match p {
        Parsed::Full(t) => t,
        Parsed::Partial(p) => {
            let missing = if p.missing() == Missing::Row { "row" } else { "column" };
            if out.json {
                out.emit_json(&json!({ "name": p.name, "classes": p.k(), "missing": missing }));
            } else {
                out.line(format!("{}: {} classes, one {missing} missing", p.name, p.k()));
            }
            return EXIT_OK;
        }
    };
    let data = match t.class_data() {
        Ok(d) => d,
        Err(e) => {
            out.err(format!("error: {e}"));
            if out.json {
                out.emit_json(&json!({ "error": "invalid", "message": e.to_string() }));
            }
            return EXIT_INVALID;
        }
    };
    let orders = t.element_orders().ok();
    if out.json {
        out.emit_json(&json!({
            "name": t.name,
            "classes": t.k(),
            "group_order": data.group_order,
            "identity_column": data.identity_column + 1,
            "centralizer_orders": data.centralizer_orders,
            "class_sizes": data.class_sizes,
            "element_orders": orders,
        }));
    } else {
        out.line(format!("{}: {} classes", t.name, t.k()));
        out.line(format!("|G| = {}", data.group_order));
        out.line(format!("centralizer orders: {}", join(&data.centralizer_orders)));
        out.line(format!("class sizes: {}", join(&data.class_sizes)));
        match &orders {
            Some(o) => out.line(format!("element orders: {}", join(o))),
            None => out.line("element orders: unavailable"),
        }
    }
    EXIT_OK
}

fn describe_trace(trace: &CaseTrace) -> String {
    match trace {
        CaseTrace::Degenerate => "single class".into(),
        CaseTrace::ColumnGeneric => "orthogonal complement, scaled at the trivial row".into(),
        CaseTrace::ColumnTwoOnesSpecial { rows } => {
            format!("two trivial-looking rows {} and {}: (1, -1, 0, ..., 0)", rows.0, rows.1)
        }
        CaseTrace::RowTrivialMissing => "the trivial character is the missing row".into(),
        CaseTrace::RowConjugateShortcut { row } => format!("complex conjugate of row {row}"),
        CaseTrace::RowCase1 { s, t, gamma_1s, gamma_1t, gamma_st, d_squared } => format!(
            "case 1: (s, t) = ({s}, {t}), gamma_1s = {gamma_1s}, gamma_1t = {gamma_1t}, gamma_st = {gamma_st}, d^2 = {d_squared}"
        ),
        CaseTrace::RowCase2 { r, quotient_order, branch, p, e, n_order, d, .. } => format!(
            "case 2: r = {r}, |G/N| = {quotient_order}, branch {branch}, p = {}, e = {e}, |N| = {n_order}, d = {d}",
            p.map_or_else(|| "none".to_string(), |p| p.to_string())
        ),
    }
}

fn vector_line(v: &[Cyclotomic]) -> String {
    join(v)
}

fn cmd_solve(out: &mut Out, p: Parsed, want: Missing, hints: SolveHints) -> i32 {
    let partial = match p {
        Parsed::Partial(p) if p.missing() == want => p,
        Parsed::Partial(_) => {
            let msg = match want {
                Missing::Row => "the table is missing a column; use solve-col",
                Missing::Column => "the table is missing a row; use solve-row",
            };
            return usage_error(out, msg.into());
        }
        Parsed::Full(_) => return usage_error(out, "the table is already complete".into()),
    };
    let result = match want {
        Missing::Row => solve_missing_row(&partial, hints),
        Missing::Column => solve_missing_column(&partial),
    };
    match result {
        Ok(outcome) => {
            print_outcome(out, &outcome);
            EXIT_OK
        }
        Err(e) => {
            let code = match e {
                SolveError::NeedsHint { .. } | SolveError::InsufficientData(_) => EXIT_UNDECIDED,
                _ => EXIT_INVALID,
            };
            print_solve_error(out, &e);
            code
        }
    }
}

fn print_outcome(out: &mut Out, o: &SolveOutcome) {
    if out.json {
        out.emit_json(o);
    } else {
        out.line(vector_line(&o.vector));
        out.line(describe_trace(&o.trace));
    }
}

fn print_solve_error(out: &mut Out, e: &SolveError) {
    let kind = match e {
        SolveError::InvalidPartial(_) => "invalid-partial",
        SolveError::NeedsHint { .. } => "needs-hint",
        SolveError::InsufficientData(_) => "insufficient-data",
        SolveError::RankDeficient => "rank-deficient",
        SolveError::NotCompletable(_) => "not-completable",
        SolveError::MoreThanTwoOnesRows(_) => "more-than-two-ones-rows",
    };
    let candidates = match e {
        SolveError::NeedsHint { candidates } => candidates.clone(),
        _ => Vec::new(),
    };
    if out.json {
        out.emit_json(&json!({ "error": kind, "message": e.to_string(), "candidates": candidates }));
    } else {
        for c in &candidates {
            out.line(format!("candidate (branch {}, assuming {}): {}", c.branch, c.assumes, vector_line(&c.vector)));
        }
    }
    let mut msg = format!("error: {e}");
    if !candidates.is_empty() {
        let _ = write!(msg, "\nhint: pass --hint sylow2-ab=N with N = |P:P'| of the quotient's Sylow 2-subgroup");
    }
    out.err(msg);
}

fn cmd_pseudo(out: &mut Out, t: CharacterTable) -> i32 {
    let report = validate(&t);
    if !report.passed {
        if out.json {
            out.emit_json(&json!({ "name": t.name, "verdict": "invalid", "report": report }));
        } else {
            print_report(out, &t.name, &report);
        }
        return EXIT_INVALID;
    }
    let v = pseudo_check(&t);
    if out.json {
        out.emit_json(&json!({ "name": t.name, "verdict": v.verdict, "witness": v.witness, "checked": v.checked }));
    } else {
        match v.verdict {
            Verdict::GenuineConsistent => out.line(format!(
                "genuine-consistent: {} ({} two-class characters checked)",
                t.name,
                v.checked.len()
            )),
            Verdict::NotApplicable => out.line(format!("not-applicable: {} has no two-class character", t.name)),
            Verdict::Pseudo => {
                out.line(format!("pseudo: {}", t.name));
                if let Some(w) = &v.witness {
                    out.line(format!("  {w}"));
                }
            }
        }
    }
    if v.verdict == Verdict::Pseudo {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

fn cmd_degrees(out: &mut Out, e: u64) -> i32 {
    let (bound, pairs) = match (hls_max_order(e), enumerate_pairs(e)) {
        (Ok(b), Ok(p)) => (b, p),
        (Err(err), _) | (_, Err(err)) => return usage_error(out, err.to_string()),
    };
    if out.json {
        out.emit_json(&json!({ "e": e, "bound": bound, "pairs": pairs }));
    } else {
        out.line(format!("e = {e}, |G| <= {bound}"));
        for p in &pairs {
            out.line(format!("({},{})", p.d, p.n));
        }
    }
    EXIT_OK
}

fn cmd_feasible(out: &mut Out, n: u64, d: u64, m: u64, opts: FeasibilityOpts) -> i32 {
    let triples = match feasible_ramifications(n, d, m, opts) {
        Ok(t) => t,
        Err(e) => return usage_error(out, e.to_string()),
    };
    if out.json {
        out.emit_json(&json!({ "order": n, "degree": d, "normal": m, "opts": opts, "triples": triples }));
    } else if triples.is_empty() {
        out.line("infeasible");
    } else {
        out.line("  k  e  theta(1)");
        for t in &triples {
            out.line(format!("  {}  {}  {}", t.k, t.e_ram, t.t));
        }
    }
    EXIT_OK
}

fn cmd_scenarios(out: &mut Out) -> i32 {
    let scenarios = lemma_scenarios();
    if out.json {
        out.emit_json(&scenarios);
        return EXIT_OK;
    }
    for s in &scenarios {
        let mut flags = Vec::new();
        if s.opts.n_abelian {
            flags.push("abelian");
        }
        if s.opts.n_central {
            flags.push("central");
        }
        if s.opts.coprime_extension {
            flags.push("coprime-extension");
        }
        let result = if s.feasible() {
            s.triples.iter().map(|t| format!("({},{},{})", t.k, t.e_ram, t.t)).collect::<Vec<_>>().join(" ")
        } else {
            "infeasible".into()
        };
        out.line(format!(
            "{:<6} |G| = {}, d = {}, |N| = {}{}: {result}",
            s.case,
            s.n,
            s.d,
            s.m,
            if flags.is_empty() { String::new() } else { format!(" [{}]", flags.join(", ")) }
        ));
    }
    EXIT_OK
}
