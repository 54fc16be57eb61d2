//! Argument handling and report rendering for the `exceptional` binary.
//!
//! [`run`] is the whole program minus process exit, so tests can drive it.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use exceptional_core::census::{
    e, e_split, indecomposables_by_oracle, pure_oracle_e, t_q, t_q_audited, verify_theorem, VerifyOptions,
};
use exceptional_core::corpus::{corpus_verify, OrientationMode};
use exceptional_core::rep::OracleBudget;
use exceptional_core::roots::{height_histogram, kostant_check, DEFAULT_HEIGHT_BOUND};
use exceptional_core::{
    classify_graph, parse_quiver, preset_by_name, with_prime_field, Error, FiniteField, Quiver,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "exceptional", version, about = "Exceptional representations of quivers without multiple arrows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Prime field used by the representation oracle.
    #[arg(long = "field", global = true, default_value_t = 2)]
    pub field: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Orientations {
    One,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// `e_Q(s)` for the extended E diagrams, fast path against the pure oracle.
    #[value(name = "tE")]
    AffineE,
    /// Thin and non-thin counts at lengths 5 to 7 for three-armed trees.
    #[value(name = "remark")]
    Remark,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dynkin / Euclidean type of the underlying graph.
    Classify { quiver: String },
    /// Positive roots by height; the full histogram for Dynkin quivers.
    Roots {
        quiver: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
        height: usize,
    },
    /// Exceptional classes `e(t)` for a length or a range `a-b`.
    Count { quiver: String, length: String },
    /// Thin and non-thin exceptional classes of one length.
    Split { quiver: String, length: usize },
    /// The threshold `t_Q`.
    Tq {
        quiver: String,
        #[arg(long)]
        audit: bool,
    },
    /// Checks the three equivalent conditions on one quiver.
    Verify {
        quiver: String,
        #[arg(long)]
        audit: bool,
    },
    /// Runs `verify` on every tree and unicyclic quiver up to `n_max` vertices.
    Corpus {
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Orientations::One)]
        orientations: Orientations,
        #[arg(long)]
        audit: bool,
    },
    /// Regenerates a table of counts.
    Tables {
        #[arg(value_enum)]
        table: Table,
        /// Arm lengths `p,q,r` for the remark table; repeatable.
        #[arg(long = "pqr")]
        pqr: Vec<String>,
    },
}

/// A rendered report with its exit status.
pub struct Report {
    pub code: i32,
    pub text: String,
    pub data: Value,
}

impl Report {
    fn ok(text: String, data: Value) -> Self {
        Self { code: EXIT_OK, text, data }
    }

    fn checked(passed: bool, text: String, data: Value) -> Self {
        Self { code: if passed { EXIT_OK } else { EXIT_VERIFICATION }, text, data }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit status and everything that should go to the output stream.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, err.to_string());
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.text,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&report.data).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            (report.code, out)
        }
        Err(err) => (exit_code(&err), format!("error: {err}\n")),
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// A preset name, inline quiver text (anything with a `;`), or a file path.
pub fn load_quiver(source: &str) -> exceptional_core::Result<Quiver> {
    if source.contains(';') {
        return parse_quiver(source);
    }
    match preset_by_name(source) {
        Ok(q) => Ok(q),
        Err(preset_err) => {
            let path = Path::new(source);
            if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Syntax(format!("{source}: {e}")))?;
                Ok(parse_quiver(&text)?.named(source))
            } else {
                Err(preset_err)
            }
        }
    }
}

fn execute(cli: &Cli) -> exceptional_core::Result<Report> {
    let budget = OracleBudget::default();
    let p = cli.field;
    match &cli.command {
        Command::Classify { quiver } => classify_cmd(&load_quiver(quiver)?),
        Command::Roots { quiver, height } => roots_cmd(&load_quiver(quiver)?, *height),
        Command::Count { quiver, length } => {
            let q = load_quiver(quiver)?;
            let (lo, hi) = parse_range(length)?;
            with_prime_field!(p, F => count_cmd::<F>(&q, lo, hi, &budget))?
        }
        Command::Split { quiver, length } => {
            let q = load_quiver(quiver)?;
            with_prime_field!(p, F => split_cmd::<F>(&q, *length, &budget))?
        }
        Command::Tq { quiver, audit } => {
            let q = load_quiver(quiver)?;
            with_prime_field!(p, F => tq_cmd::<F>(&q, *audit, &budget))?
        }
        Command::Verify { quiver, audit } => {
            let q = load_quiver(quiver)?;
            let opts = VerifyOptions { budget, audit: *audit };
            with_prime_field!(p, F => verify_cmd::<F>(&q, &opts))?
        }
        Command::Corpus { n_max, orientations, audit } => {
            let mode = match orientations {
                Orientations::One => OrientationMode::OnePerTree,
                Orientations::All => OrientationMode::All,
            };
            let opts = VerifyOptions { budget, audit: *audit };
            with_prime_field!(p, F => corpus_cmd::<F>(*n_max, mode, &opts))?
        }
        Command::Tables { table: Table::AffineE, .. } => with_prime_field!(p, F => affine_e_table::<F>(&budget))?,
        Command::Tables { table: Table::Remark, pqr } => {
            let shapes = if pqr.is_empty() {
                vec![(5, 4, 2), (7, 3, 2)]
            } else {
                pqr.iter().map(|s| parse_pqr(s)).collect::<exceptional_core::Result<_>>()?
            };
            with_prime_field!(p, F => remark_table::<F>(&shapes, &budget))?
        }
    }
}

fn parse_range(text: &str) -> exceptional_core::Result<(usize, usize)> {
    let bad = || Error::Syntax(format!("length must be `t` or `a-b`, got `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match text.split_once('-') {
        Some((a, b)) => (num(a)?, num(b)?),
        None => (num(text)?, num(text)?),
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_pqr(text: &str) -> exceptional_core::Result<(usize, usize, usize)> {
    let bad = || Error::InvalidPreset(format!("T{text}"));
    let v: Vec<usize> = text.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    match v[..] {
        [p, q, r] if p >= q && q >= r && r >= 2 => Ok((p, q, r)),
        _ => Err(bad()),
    }
}

fn label(q: &Quiver) -> String {
    q.name().map_or_else(|| q.to_string(), str::to_string)
}

fn classify_cmd(q: &Quiver) -> exceptional_core::Result<Report> {
    let class = classify_graph(q)?;
    let finite = class.is_dynkin();
    let mut text = format!("{}: {}\n", label(q), class.kind);
    if let Some(w) = &class.witness {
        let _ = writeln!(text, "witness t{} on vertices {:?}", w.diagram, w.vertices);
    }
    let _ = writeln!(text, "representation-{}", if finite { "finite" } else { "infinite" });
    Ok(Report::ok(text, json!({ "quiver": q.to_string(), "class": class, "representation_finite": finite })))
}

fn roots_cmd(q: &Quiver, height: usize) -> exceptional_core::Result<Report> {
    let mut text = format!("{}: positive roots by height\n", label(q));
    let data;
    if classify_graph(q)?.is_dynkin() {
        let k = kostant_check(q)?;
        write_histogram(&mut text, &k.histogram.counts);
        let _ = writeln!(text, "total {} highest {}", k.total, k.max_height);
        let _ = writeln!(text, "at most n - 1 = {} per height >= 2: {}", k.n - 1, k.bound_holds);
        data = json!({ "quiver": q.to_string(), "kostant": k });
        return Ok(Report::checked(k.bound_holds, text, data));
    }
    let h = height_histogram(q, height)?;
    write_histogram(&mut text, &h.counts);
    let _ = writeln!(text, "total {} up to height {}", h.total(), h.bound);
    data = json!({ "quiver": q.to_string(), "histogram": h });
    Ok(Report::ok(text, data))
}

fn write_histogram(text: &mut String, counts: &[(usize, usize)]) {
    let _ = writeln!(text, "{:>6} {:>6}", "height", "roots");
    for (h, c) in counts {
        let _ = writeln!(text, "{h:>6} {c:>6}");
    }
}

fn count_cmd<F: FiniteField>(q: &Quiver, lo: usize, hi: usize, budget: &OracleBudget) -> exceptional_core::Result<Report> {
    let mut text = format!("{}: n = {}\n{:>3} {:>5}\n", label(q), q.n(), "t", "e");
    let mut rows = Vec::new();
    for t in lo..=hi {
        let v = e::<F>(q, t, budget)?;
        let _ = writeln!(text, "{t:>3} {v:>5}");
        rows.push(json!({ "t": t, "e": v }));
    }
    Ok(Report::ok(text, json!({ "quiver": q.to_string(), "n": q.n(), "prime": F::ORDER, "e": rows })))
}

fn split_cmd<F: FiniteField>(q: &Quiver, t: usize, budget: &OracleBudget) -> exceptional_core::Result<Report> {
    let s = e_split::<F>(q, t, budget)?;
    let text = format!(
        "{}: n = {}, t = {t}\ne = {}  e' = {}  e'' = {}\n",
        label(q),
        q.n(),
        s.total(),
        s.thin,
        s.non_thin
    );
    Ok(Report::ok(
        text,
        json!({ "quiver": q.to_string(), "n": q.n(), "t": t, "prime": F::ORDER, "e": s.total(), "thin": s.thin, "non_thin": s.non_thin }),
    ))
}

fn tq_cmd<F: FiniteField>(q: &Quiver, audit: bool, budget: &OracleBudget) -> exceptional_core::Result<Report> {
    let show = |t: Option<usize>| t.map_or_else(|| "none".to_string(), |t| t.to_string());
    if audit {
        let a = t_q_audited::<F>(q, budget)?;
        let text = format!("{}\naudit: scanned to {}, late threshold {}\n", show(a.t_q), a.scanned_to, show(a.late_threshold));
        let passed = a.late_threshold.is_none();
        return Ok(Report::checked(passed, text, json!({ "quiver": q.to_string(), "t_q": a.t_q, "audit": a })));
    }
    let t = t_q::<F>(q, budget)?;
    Ok(Report::ok(format!("{}\n", show(t)), json!({ "quiver": q.to_string(), "t_q": t })))
}

fn verify_cmd<F: FiniteField>(q: &Quiver, opts: &VerifyOptions) -> exceptional_core::Result<Report> {
    let r = verify_theorem::<F>(q, opts)?;
    Ok(Report::checked(r.passed(), r.to_string(), serde_json::to_value(&r).expect("report serializes")))
}

fn corpus_cmd<F: FiniteField>(n_max: usize, mode: OrientationMode, opts: &VerifyOptions) -> exceptional_core::Result<Report> {
    let r = corpus_verify::<F>(n_max, mode, opts)?;
    Ok(Report::checked(r.passed(), r.to_string(), serde_json::to_value(&r).expect("report serializes")))
}

#[derive(Serialize)]
struct AffineERow {
    quiver: String,
    n: usize,
    e: Vec<usize>,
    pure_oracle: Vec<usize>,
}

/// Rows for the three extended E diagrams, each up to its threshold length.
pub fn affine_e_rows<F: FiniteField>(budget: &OracleBudget) -> exceptional_core::Result<Vec<(String, Vec<usize>, Vec<usize>)>> {
    let mut rows = Vec::new();
    for name in ["tE6", "tE7", "tE8"] {
        let q = preset_by_name(name)?;
        let last = t_q::<F>(&q, budget)?.expect("extended E diagrams are representation-infinite");
        let fast = (1..=last).map(|t| e::<F>(&q, t, budget)).collect::<exceptional_core::Result<Vec<_>>>()?;
        let pure = (1..=last).map(|t| pure_oracle_e::<F>(&q, t, budget)).collect::<exceptional_core::Result<Vec<_>>>()?;
        rows.push((name.to_string(), fast, pure));
    }
    Ok(rows)
}

fn affine_e_table<F: FiniteField>(budget: &OracleBudget) -> exceptional_core::Result<Report> {
    let rows = affine_e_rows::<F>(budget)?;
    let width = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let mut text = format!("{:>4} |", "Q\\s");
    for s in 1..=width {
        let _ = write!(text, "{s:>3}");
    }
    text.push('\n');
    let _ = writeln!(text, "{}", "-".repeat(6 + 3 * width));
    let mut agree = true;
    let mut data = Vec::new();
    for (name, fast, pure) in rows {
        let _ = write!(text, "{name:>4} |");
        for v in &fast {
            let _ = write!(text, "{v:>3}");
        }
        text.push('\n');
        agree &= fast == pure;
        let q = preset_by_name(&name)?;
        data.push(AffineERow { quiver: name, n: q.n(), e: fast, pure_oracle: pure });
    }
    let _ = writeln!(text, "pure oracle recount agrees: {}", if agree { "yes" } else { "no" });
    Ok(Report::checked(agree, text, json!({ "prime": F::ORDER, "rows": data, "pure_oracle_agrees": agree })))
}

#[derive(Serialize)]
struct RemarkCell {
    t: usize,
    thin: usize,
    non_thin: usize,
    non_thin_indecomposables: usize,
}

fn remark_table<F: FiniteField>(shapes: &[(usize, usize, usize)], budget: &OracleBudget) -> exceptional_core::Result<Report> {
    let mut text = format!("{:>8} {:>3} |", "T", "n");
    for t in 5..=7 {
        let _ = write!(text, " {:>6} {:>6} {:>6}", format!("e'({t})"), format!("e''({t})"), format!("nt({t})"));
    }
    text.push('\n');
    let mut data = Vec::new();
    for &(p, qq, r) in shapes {
        let q = preset_by_name(&format!("T{p},{qq},{r}"))?;
        let _ = write!(text, "{:>8} {:>3} |", format!("{p},{qq},{r}"), q.n());
        let mut cells = Vec::new();
        for t in 5..=7 {
            let s = e_split::<F>(&q, t, budget)?;
            let ind = indecomposables_by_oracle::<F>(&q, t, budget)?;
            let _ = write!(text, " {:>6} {:>6} {:>6}", s.thin, s.non_thin, ind.non_thin);
            cells.push(RemarkCell { t, thin: s.thin, non_thin: s.non_thin, non_thin_indecomposables: ind.non_thin });
        }
        text.push('\n');
        data.push(json!({ "p": p, "q": qq, "r": r, "n": q.n(), "cells": cells }));
    }
    text.push_str("e' thin exceptional, e'' non-thin exceptional, nt non-thin indecomposable\n");
    Ok(Report::ok(text, json!({ "prime": F::ORDER, "rows": data })))
}
