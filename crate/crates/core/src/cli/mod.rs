//! Command-line front end: `seq`, `eval`, `verify` and `table`.
//!
//! Exit status is 0 when everything requested succeeded (and, for `verify`,
//! passed), 1 when a verification failed, 2 on a usage error and 3 when a
//! truncation target could not be met within the resource caps.

mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::autoseq::{
    paperfolding, signed_value, thue_morse, CoefficientStream, SignedKind, StreamKind,
};
use crate::exactnum::{
    bernoulli, euler_numbers, format_rational, lemma4_coefficient, pi_coefficient, Rational,
};
use crate::identities::{format_s, run_suite, Grid, IdentityError, VerificationReport};
use crate::realkernel::BigReal;
use crate::zetalib::{
    delta_via_functional_equation, dirichlet_series, hurwitz_zeta, polygamma_34, riemann_zeta,
    tight_target_eps, Method, SeriesValue, ZetaError,
};

pub use render::{render_mid, render_rad, render_verdict, ReportJson, MAX_DIGITS};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SHORTFALL: i32 = 3;

/// Environment variable overriding the default `--prec-bits`.
pub const PREC_ENV: &str = "AUTODIRICHLET_PREC_BITS";

/// Largest `k` accepted by `table` (Euler and Bernoulli tables grow quadratically).
const MAX_TABLE_K: u32 = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "autodirichlet",
    version,
    about = "Dirichlet series over Thue-Morse and paperfolding coefficients, with rigorous verification of zeta identities"
)]
pub struct Cli {
    /// Working precision in bits
    #[arg(long, global = true, env = PREC_ENV, default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(16..=1_000_000))]
    pub prec_bits: u32,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print terms of a sequence
    Seq(SeqArgs),
    /// Evaluate a series with a rigorous error bracket
    Eval(EvalArgs),
    /// Check identities and report residuals against tolerances
    Verify(VerifyArgs),
    /// Print exact coefficient tables
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqName {
    ThueMorse,
    Paperfolding,
    Epsilon,
    Beta,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(long, value_enum)]
    pub name: SeqName,
    /// First index (defaults to 0, or 1 for the paperfolding-based sequences)
    #[arg(long)]
    pub start: Option<u64>,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..=100_000_000))]
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    /// ζ(s)
    Zeta,
    /// ζ(s, a), with --a p/q
    Hurwitz,
    /// ζ(s, 3/4)
    Hurwitz34,
    /// Σ b_n n^{-s} by direct summation
    Delta,
    /// Σ b_n n^{-s} through ζ(s, 3/4)
    DeltaFe,
    /// Σ (2b_n - 1) n^{-s}
    PmPaperfolding,
    /// Σ (-1)^{b_n} n^{-s}
    PaperfoldingSigned,
    /// Σ ε_n n^{-s}
    TmSigned,
    /// Σ ε_{n-1} n^{-s}
    TmSignedShifted,
    /// tm_combo(k) coefficients, with --k
    TmCombo,
    /// N(n;k) coefficients, with --k
    Theorem1,
    /// ψ^{(2k)}(3/4), with --k (no --s)
    Polygamma34,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub series: SeriesName,
    /// Real exponent s > 1
    #[arg(long)]
    pub s: Option<String>,
    /// Terms for direct summation
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..=1_000_000_000))]
    pub terms: u64,
    /// Hurwitz shift as p/q with 0 < a <= 1
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub k: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity ids, comma separated or repeated; `all` runs the standard suite
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub identity: Vec<String>,
    /// Range of k as A..B (inclusive) or a single value
    #[arg(long)]
    pub k: Option<KRange>,
    /// Exponent s; repeat for several
    #[arg(long)]
    pub s: Vec<String>,
    /// Fixed term count for every direct sum
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1_000_000_000))]
    pub terms: Option<u64>,
    /// Outer truncation K of the Allouche-Cohen recursion
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..=10_000))]
    pub depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableWhat {
    /// 2^{4k+1} - 2^{2k}
    Coefficients,
    /// E_{2k}
    Euler,
    /// B_{2k}
    Bernoulli,
    /// 2^{2k-1} |E_{2k}| / (2k)!
    PiCoefficients,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub what: TableWhat,
    #[arg(long, default_value = "1..4")]
    pub k: KRange,
}

/// Inclusive range `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid k `{t}`: expected a nonnegative integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty k range {lo}..{hi}"));
        }
        Ok(KRange { lo, hi })
    }
}

impl KRange {
    fn values(self) -> Vec<u32> {
        (self.lo..=self.hi).collect()
    }
}

struct Usage(String);

impl From<IdentityError> for Usage {
    fn from(e: IdentityError) -> Self {
        Usage(e.to_string())
    }
}

/// Parse `s`, requiring a finite real above 1. Values are taken as the
/// nearest `f64`, which is then used exactly.
fn parse_s(text: &str) -> Result<BigReal, Usage> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Usage(format!("invalid s `{text}`: expected a real number")))?;
    match BigReal::from_f64(v) {
        Some(s) if v > 1.0 => Ok(s),
        _ => Err(Usage(format!(
            "s must be a finite real number > 1, got `{text}`"
        ))),
    }
}

fn parse_shift(text: &str) -> Result<Rational, Usage> {
    let a = Rational::from_str(text.trim())
        .map_err(|_| Usage(format!("invalid shift `{text}`: expected p/q")))?;
    if !a.is_positive() || a > Rational::one() {
        return Err(Usage(format!("shift must satisfy 0 < a <= 1, got {text}")));
    }
    Ok(a)
}

/// Run the CLI on `args` (including the program name), writing to `out` and
/// `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    let result = match &cli.command {
        Command::Seq(a) => cmd_seq(a, cli.format, out),
        Command::Eval(a) => cmd_eval(a, cli.prec_bits, cli.format, out, err),
        Command::Verify(a) => cmd_verify(a, cli.prec_bits, cli.format, out),
        Command::Table(a) => cmd_table(a, cli.format, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn io_fail(e: impl std::fmt::Display) -> Usage {
    Usage(format!("write failed: {e}"))
}

/// Write rows as text columns, CSV or a JSON array of objects.
fn emit_rows<R: Serialize>(
    format: Format,
    header: &[&str],
    rows: &[R],
    text_row: impl Fn(&R) -> Vec<String>,
    out: &mut dyn Write,
) -> Result<(), Usage> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(io_fail)?;
            writeln!(out).map_err(io_fail)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header).map_err(io_fail)?;
            for r in rows {
                w.write_record(text_row(r)).map_err(io_fail)?;
            }
            w.flush().map_err(io_fail)
        }
        Format::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(&text_row).collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |row: Vec<String>| {
                let padded: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(
                out,
                "{}",
                line(header.iter().map(|h| h.to_string()).collect())
            )
            .map_err(io_fail)?;
            for row in cells {
                writeln!(out, "{}", line(row)).map_err(io_fail)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SeqRow {
    n: u64,
    value: i64,
}

fn cmd_seq(a: &SeqArgs, format: Format, out: &mut dyn Write) -> Result<i32, Usage> {
    let from_one = matches!(a.name, SeqName::Paperfolding | SeqName::Beta);
    let start = a.start.unwrap_or(from_one as u64);
    if from_one && start == 0 {
        return Err(Usage(
            "b_0 is undefined: the paperfolding sequence is indexed from n = 1 (use --start 1)"
                .into(),
        ));
    }
    let end = start
        .checked_add(a.count - 1)
        .ok_or_else(|| Usage("index range overflows".into()))?;
    let rows: Vec<SeqRow> = (start..=end)
        .map(|n| {
            let value = match a.name {
                SeqName::ThueMorse => thue_morse(n).value() as i64,
                SeqName::Paperfolding => paperfolding(n).expect("n >= 1").value() as i64,
                SeqName::Epsilon => signed_value(SignedKind::Epsilon, n).expect("total") as i64,
                SeqName::Beta => signed_value(SignedKind::Beta, n).expect("n >= 1") as i64,
            };
            SeqRow { n, value }
        })
        .collect();
    emit_rows(
        format,
        &["n", "value"],
        &rows,
        |r| vec![r.n.to_string(), r.value.to_string()],
        out,
    )?;
    Ok(EXIT_PASS)
}

fn zeta_err(e: ZetaError) -> Usage {
    Usage(e.to_string())
}

fn cmd_eval(
    a: &EvalArgs,
    prec: u32,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Usage> {
    let mut params = BTreeMap::new();
    params.insert("prec_bits".to_string(), prec.to_string());
    let need_k = || a.k.ok_or_else(|| Usage("this series needs --k".into()));
    let need_s = || -> Result<BigReal, Usage> {
        let text =
            a.s.as_deref()
                .ok_or_else(|| Usage("this series needs --s".into()))?;
        parse_s(text)
    };
    let eps = tight_target_eps(prec);
    let direct = |kind: StreamKind, s: &BigReal| -> Result<SeriesValue, Usage> {
        let stream = CoefficientStream::new(kind).map_err(|e| Usage(e.to_string()))?;
        dirichlet_series(&stream, s, a.terms, prec).map_err(zeta_err)
    };

    let value = match a.series {
        SeriesName::Polygamma34 => {
            let k = need_k()?;
            params.insert("k".into(), k.to_string());
            SeriesValue {
                value: polygamma_34(k, prec).map_err(zeta_err)?,
                terms_used: 0,
                tail_bound: BigReal::zero(),
                method: Method::ClosedForm,
                target_met: true,
            }
        }
        series => {
            let s = need_s()?;
            params.insert("s".into(), format_s(&s));
            match series {
                SeriesName::Zeta => riemann_zeta(&s, prec, &eps).map_err(zeta_err)?,
                SeriesName::Hurwitz => {
                    let text =
                        a.a.as_deref()
                            .ok_or_else(|| Usage("hurwitz needs --a p/q".into()))?;
                    let shift = parse_shift(text)?;
                    params.insert("a".into(), format_rational(&shift));
                    hurwitz_zeta(&s, &shift, prec, &eps).map_err(zeta_err)?
                }
                SeriesName::Hurwitz34 => {
                    let shift = Rational::new(3.into(), 4.into());
                    hurwitz_zeta(&s, &shift, prec, &eps).map_err(zeta_err)?
                }
                SeriesName::DeltaFe => {
                    delta_via_functional_equation(&s, prec, &eps).map_err(zeta_err)?
                }
                SeriesName::Delta => direct(StreamKind::PaperfoldingRaw, &s)?,
                SeriesName::PmPaperfolding => direct(StreamKind::PmPaperfolding, &s)?,
                SeriesName::PaperfoldingSigned => direct(StreamKind::PaperfoldingSigned, &s)?,
                SeriesName::TmSigned => direct(StreamKind::TmSigned, &s)?,
                SeriesName::TmSignedShifted => direct(StreamKind::TmSignedShifted, &s)?,
                SeriesName::TmCombo | SeriesName::Theorem1 => {
                    let k = need_k()?;
                    params.insert("k".into(), k.to_string());
                    let kind = if a.series == SeriesName::TmCombo {
                        StreamKind::TmCombo { k }
                    } else {
                        StreamKind::Theorem1 { k }
                    };
                    direct(kind, &s)?
                }
                SeriesName::Polygamma34 => unreachable!("handled above"),
            }
        }
    };
    let name = a
        .series
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let json = render::SeriesJson::new(&name, params, &value);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &json).map_err(io_fail)?;
            writeln!(out).map_err(io_fail)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "series",
                "params",
                "mid",
                "rad",
                "terms_used",
                "tail_bound",
                "method",
                "target_met",
            ])
            .map_err(io_fail)?;
            w.write_record([
                json.series.clone(),
                render::params_inline(&json.params),
                json.mid.clone(),
                json.rad.clone(),
                json.terms_used.to_string(),
                json.tail_bound.clone(),
                json.method.clone(),
                json.target_met.to_string(),
            ])
            .map_err(io_fail)?;
            w.flush().map_err(io_fail)?;
        }
        Format::Text => {
            let lines = [
                ("series", json.series.clone()),
                ("params", render::params_inline(&json.params)),
                ("value", json.mid.clone()),
                ("radius", json.rad.clone()),
                ("terms_used", json.terms_used.to_string()),
                ("tail_bound", json.tail_bound.clone()),
                ("method", json.method.clone()),
            ];
            for (k, v) in lines {
                writeln!(out, "{k:<11} {v}").map_err(io_fail)?;
            }
        }
    }
    if value.target_met {
        Ok(EXIT_PASS)
    } else {
        let _ = writeln!(
            err,
            "warning: truncation target 2^-{} not reached within resource caps; the bracket above is valid but wider",
            prec - 8
        );
        Ok(EXIT_SHORTFALL)
    }
}

fn cmd_verify(
    a: &VerifyArgs,
    prec: u32,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let mut grid = Grid {
        prec,
        terms: a.terms,
        depth: a.depth,
        ..Grid::default()
    };
    if let Some(k) = a.k {
        if k.lo == 0 {
            return Err(Usage("k must be at least 1".into()));
        }
        grid.ks = k.values();
    }
    if !a.s.is_empty() {
        grid.ss = a.s.iter().map(|t| parse_s(t)).collect::<Result<_, _>>()?;
    }
    let reports = run_suite(&a.identity, &grid).map_err(|e| match e {
        IdentityError::UnknownIdentity(_) | IdentityError::EmptySelection => Usage::from(e),
        other => Usage(format!("verification could not run: {other}")),
    })?;
    emit_reports(&reports, format, out)?;
    Ok(if reports.iter().all(|r| r.pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn emit_reports(
    reports: &[VerificationReport],
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Usage> {
    let rows: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
    match format {
        Format::Json | Format::Csv => emit_rows(
            format,
            &[
                "identity_id",
                "params",
                "lhs_mid",
                "lhs_rad",
                "rhs_mid",
                "rhs_rad",
                "residual",
                "tolerance",
                "pass",
                "terms_used",
                "elapsed_ms",
            ],
            &rows,
            |r| {
                vec![
                    r.identity_id.clone(),
                    render::params_inline(&r.params),
                    r.lhs.mid.clone(),
                    r.lhs.rad.clone(),
                    r.rhs.mid.clone(),
                    r.rhs.rad.clone(),
                    r.residual.clone(),
                    r.tolerance.clone(),
                    r.pass.to_string(),
                    r.terms_used.to_string(),
                    r.elapsed_ms.to_string(),
                ]
            },
            out,
        ),
        Format::Text => {
            emit_rows(
                format,
                &[
                    "verdict",
                    "identity",
                    "params",
                    "residual",
                    "tolerance",
                    "terms",
                    "ms",
                ],
                &rows,
                |r| {
                    vec![
                        if r.pass { "PASS" } else { "FAIL" }.to_string(),
                        r.identity_id.clone(),
                        render::params_inline(&r.params),
                        shorten(&r.residual),
                        shorten(&r.tolerance),
                        r.terms_used.to_string(),
                        r.elapsed_ms.to_string(),
                    ]
                },
                out,
            )?;
            let passed = rows.iter().filter(|r| r.pass).count();
            writeln!(out, "{passed} of {} passed", rows.len()).map_err(io_fail)
        }
    }
}

/// Scientific string cut to 4 significant digits, for the text table only.
fn shorten(sci: &str) -> String {
    match sci.split_once('e') {
        Some((m, e)) => format!("{}e{e}", &m[..m.len().min(5)]),
        None => sci.to_string(),
    }
}

#[derive(Serialize)]
struct TableRow {
    k: u32,
    index: u64,
    value: String,
}

const COEFFICIENT_NOTE: &str = "note: OEIS A079598 lists 8 as its first term, while 2^(4k+1) - 2^(2k) gives 28 at k = 1; values here follow the formula";

fn cmd_table(
    a: &TableArgs,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Usage> {
    let needs_positive = matches!(a.what, TableWhat::Coefficients | TableWhat::PiCoefficients);
    if needs_positive && a.k.lo == 0 {
        return Err(Usage("k must be at least 1 for this table".into()));
    }
    if a.k.hi > MAX_TABLE_K {
        return Err(Usage(format!("k must not exceed {MAX_TABLE_K}")));
    }
    let ks = a.k.values();
    let rows: Vec<TableRow> = match a.what {
        TableWhat::Coefficients => ks
            .iter()
            .map(|&k| TableRow {
                k,
                index: k as u64,
                value: lemma4_coefficient(k).expect("k >= 1").to_string(),
            })
            .collect(),
        TableWhat::PiCoefficients => ks
            .iter()
            .map(|&k| TableRow {
                k,
                index: k as u64,
                value: format_rational(&pi_coefficient(k).expect("k >= 1")),
            })
            .collect(),
        TableWhat::Euler => {
            let table = euler_numbers(a.k.hi as usize);
            ks.iter()
                .map(|&k| TableRow {
                    k,
                    index: 2 * k as u64,
                    value: table
                        .get(k as usize)
                        .cloned()
                        .unwrap_or_else(BigInt::zero)
                        .to_string(),
                })
                .collect()
        }
        TableWhat::Bernoulli => ks
            .iter()
            .map(|&k| TableRow {
                k,
                index: 2 * k as u64,
                value: format_rational(&bernoulli(2 * k as usize)),
            })
            .collect(),
    };
    emit_rows(
        format,
        &["k", "index", "value"],
        &rows,
        |r| vec![r.k.to_string(), r.index.to_string(), r.value.clone()],
        out,
    )?;
    if a.what == TableWhat::Coefficients {
        if format == Format::Text {
            writeln!(out, "{COEFFICIENT_NOTE}").map_err(io_fail)?;
        } else {
            let _ = writeln!(err, "{COEFFICIENT_NOTE}");
        }
    }
    Ok(EXIT_PASS)
}
