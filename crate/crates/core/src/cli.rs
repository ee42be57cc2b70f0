//! Command-line driver.
//!
//! Exit codes: `0` success, `2` invalid input, `3` a computed result failed
//! its independent re-check.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::contfrac::{CfExpansion, Period};
use crate::dedekind::{normalized_sum, reduce_pair, s_naive, Method};
use crate::error::Error;
use crate::family::{self, FamilyMember, FamilyPlan};
use crate::numeric::{Integer, Rational};
use crate::search::{self, SearchOptions};
use crate::surd::PeriodicSurd;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dedekind",
    version,
    about = "Exact Dedekind sums and families of pairs sharing a value"
)]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Naive,
    Fast,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print s(a, b) and S(a, b) = 12 s(a, b)
    #[command(allow_negative_numbers = true)]
    Sum {
        a: Integer,
        b: Integer,
        #[arg(long, value_enum, default_value_t = MethodArg::Fast)]
        method: MethodArg,
    },
    /// Continued fraction of a/b, canonical and alternate forms
    #[command(allow_negative_numbers = true)]
    Cf { a: Integer, b: Integer },
    /// Quadratic data of the purely periodic fraction [0; period, period, ...]
    Surd {
        /// Comma-separated partial quotients, e.g. 2,1,3,1,1
        period: String,
    },
    /// Pairs sharing the normalized sum of (a, b)
    #[command(allow_negative_numbers = true)]
    Family {
        a: Integer,
        b: Integer,
        /// Free term appended when a/b has an even-length expansion
        #[arg(long = "c", default_value = "1")]
        c: Integer,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Check that S(p_k, q_k) is constant over k = L-1 (mod 2L)
    Verify {
        /// Comma-separated partial quotients of an odd-length period
        period: String,
        #[arg(long, default_value_t = 3)]
        depth: u64,
    },
    /// All 0 < a < b < bound with S(a, b) = target
    Search {
        /// Target value as num/den
        target: String,
        /// Exclusive upper bound on b
        bound: u64,
        /// Evaluate every denominator, skipping the integrality filter
        #[arg(long)]
        no_prune: bool,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct SumRecord {
    pub a: String,
    pub b: String,
    pub s: String,
    #[serde(rename = "S")]
    pub normalized: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct CfRecord {
    pub a: String,
    pub b: String,
    pub canonical: Vec<String>,
    pub alternate: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct SurdRecord {
    pub period: Vec<String>,
    #[serde(rename = "A")]
    pub quad: String,
    #[serde(rename = "B")]
    pub lin: String,
    #[serde(rename = "C")]
    pub constant: String,
    pub disc: String,
    pub root: String,
    pub radical: String,
    pub trace: String,
    /// Absent for even period length.
    pub value: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct PlanRecord {
    pub case: String,
    pub a: String,
    pub b: String,
    pub period: Option<Vec<String>>,
    #[serde(rename = "L")]
    pub len: Option<u64>,
    pub c: Option<String>,
    #[serde(rename = "S")]
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct MemberRecord {
    pub t: u64,
    pub k: Option<u64>,
    pub a: String,
    pub b: String,
    #[serde(rename = "S")]
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct VerifyRecord {
    pub period: Vec<String>,
    #[serde(rename = "L")]
    pub len: u64,
    pub depth: u64,
    pub rows: Vec<MemberRecord>,
    pub constant: bool,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct HitRecord {
    pub a: String,
    pub b: String,
}

impl From<&FamilyMember> for MemberRecord {
    fn from(m: &FamilyMember) -> Self {
        MemberRecord {
            t: m.t,
            k: m.k,
            a: m.pair.a().to_string(),
            b: m.pair.b().to_string(),
            value: m.value.to_string(),
        }
    }
}

fn strings(xs: &[Integer]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Decimal rendering with 12 significant digits.
fn approx(r: &Rational) -> String {
    let x = r.to_f64_approx();
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn parse_period(text: &str) -> Result<Period, Error> {
    let terms = text
        .split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Integer>()
                .map_err(|_| Error::InvalidTerm(t.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Period::new(terms)
}

enum Failure {
    Input(String),
    Verify(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(msg) => Failure::Verify(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFY
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Sum { a, b, method } => cmd_sum(a, b, *method, format, out),
        Command::Cf { a, b } => cmd_cf(a, b, format, out),
        Command::Surd { period } => cmd_surd(period, format, out),
        Command::Family { a, b, c, count } => cmd_family(a, b, c, *count, format, out),
        Command::Verify { period, depth } => cmd_verify(period, *depth, format, out),
        Command::Search {
            target,
            bound,
            no_prune,
            jobs,
        } => {
            let options = SearchOptions {
                prune: !no_prune,
                jobs: *jobs,
            };
            cmd_search(target, *bound, &options, format, out)
        }
    }
}

fn cmd_sum(
    a: &Integer,
    b: &Integer,
    method: MethodArg,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let pair = reduce_pair(a.clone(), b.clone())?;
    let method = match method {
        MethodArg::Naive => Method::Naive,
        MethodArg::Fast => Method::Fast,
    };
    let normalized = normalized_sum(&pair, method);
    let classical = match method {
        Method::Naive => s_naive(&pair),
        Method::Fast => normalized.checked_div(&Rational::from(12))?,
    };
    match format {
        Format::Human => {
            writeln!(out, "s{pair} = {}", classical.to_human())?;
            writeln!(
                out,
                "S{pair} = {}  (approx {})",
                normalized.to_human(),
                approx(&normalized)
            )?;
        }
        Format::Json => {
            let rec = SumRecord {
                a: pair.a().to_string(),
                b: pair.b().to_string(),
                s: classical.to_string(),
                normalized: normalized.to_string(),
            };
            writeln!(out, "{}", serde_json::to_string(&rec)?)?;
        }
        Format::Tsv => writeln!(out, "{}\t{}\t{classical}\t{normalized}", pair.a(), pair.b())?,
    }
    Ok(())
}

fn cmd_cf(a: &Integer, b: &Integer, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let pair = reduce_pair(a.clone(), b.clone())?;
    let canonical = CfExpansion::expand(&pair)?;
    let alternate = canonical.to_alternate().ok();
    match format {
        Format::Human => {
            writeln!(out, "{}/{} = {canonical}", pair.a(), pair.b())?;
            match &alternate {
                Some(alt) => writeln!(out, "alternate: {alt}")?,
                None => writeln!(out, "alternate: none")?,
            }
        }
        Format::Json => {
            let rec = CfRecord {
                a: pair.a().to_string(),
                b: pair.b().to_string(),
                canonical: strings(canonical.terms()),
                alternate: alternate.as_ref().map(|e| strings(e.terms())),
            };
            writeln!(out, "{}", serde_json::to_string(&rec)?)?;
        }
        Format::Tsv => {
            let row = |e: &CfExpansion| strings(e.terms()).join("\t");
            writeln!(out, "canonical\t{}", row(&canonical))?;
            if let Some(alt) = &alternate {
                writeln!(out, "alternate\t{}", row(alt))?;
            }
        }
    }
    Ok(())
}

fn cmd_surd(period: &str, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let period = parse_period(period)?;
    let surd = PeriodicSurd::from_period(&period)?;
    let (a, b, c) = surd.coefficients();
    let value = surd.closed_form_value().ok();
    match format {
        Format::Human => {
            writeln!(out, "period   {period}, L = {}", period.len())?;
            writeln!(out, "equation {surd}")?;
            writeln!(
                out,
                "root     {} = {}",
                surd.root_expression(),
                surd.radical_form()
            )?;
            writeln!(out, "trace    x + x' = {}", surd.trace().to_human())?;
            match &value {
                Some(v) => writeln!(out, "value    {}", v.to_human())?,
                None => writeln!(out, "value    n/a (even period length)")?,
            }
        }
        Format::Json => {
            let rec = SurdRecord {
                period: strings(period.terms()),
                quad: a.to_string(),
                lin: b.to_string(),
                constant: c.to_string(),
                disc: surd.discriminant().to_string(),
                root: surd.root_expression(),
                radical: surd.radical_form().to_string(),
                trace: surd.trace().to_string(),
                value: value.as_ref().map(ToString::to_string),
            };
            writeln!(out, "{}", serde_json::to_string(&rec)?)?;
        }
        Format::Tsv => {
            writeln!(out, "period\t{}", strings(period.terms()).join(","))?;
            writeln!(out, "A\t{a}\nB\t{b}\nC\t{c}\ndisc\t{}", surd.discriminant())?;
            writeln!(out, "trace\t{}", surd.trace())?;
            if let Some(v) = &value {
                writeln!(out, "value\t{v}")?;
            }
        }
    }
    Ok(())
}

fn cmd_family(
    a: &Integer,
    b: &Integer,
    c: &Integer,
    count: usize,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if count < 1 {
        return Err(Failure::Input("count must be at least 1".into()));
    }
    let plan = FamilyPlan::new(a.clone(), b.clone(), c.clone())?;
    let source = plan.source();
    match format {
        Format::Human => {
            writeln!(out, "source {source}, S = {}", plan.value().to_human())?;
            match plan.period() {
                Some(p) => writeln!(out, "case {}, period {p}, L = {}", plan.case(), p.len())?,
                None => writeln!(out, "case {}", plan.case())?,
            }
            writeln!(out, "{:>4} {:>8}  pair", "t", "k")?;
        }
        Format::Json => {
            let rec = PlanRecord {
                case: plan.case().to_string(),
                a: source.a().to_string(),
                b: source.b().to_string(),
                period: plan.period().map(|p| strings(p.terms())),
                len: plan.period_len(),
                c: plan.appended_c().map(ToString::to_string),
                value: plan.value().to_string(),
            };
            writeln!(out, "{}", serde_json::to_string(&rec)?)?;
        }
        Format::Tsv => {}
    }
    for m in plan.members().take(count) {
        if !family::verify_member(&m, source) {
            return Err(Failure::Verify(format!(
                "member {} does not attain S{source}",
                m.pair
            )));
        }
        let k = m.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        match format {
            Format::Human => writeln!(out, "{:>4} {:>8}  {}", m.t, k, m.pair)?,
            Format::Json => writeln!(out, "{}", serde_json::to_string(&MemberRecord::from(&m))?)?,
            Format::Tsv => writeln!(
                out,
                "{}\t{k}\t{}\t{}\t{}",
                m.t,
                m.pair.a(),
                m.pair.b(),
                m.value
            )?,
        }
    }
    Ok(())
}

fn cmd_verify(
    period: &str,
    depth: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let period = parse_period(period)?;
    let rows = family::constant_index_rows(&period, depth)?;
    let constant = rows.windows(2).all(|w| w[0].1 == w[1].1);
    let records: Vec<MemberRecord> = rows
        .iter()
        .enumerate()
        .map(|(t, (row, value))| MemberRecord {
            t: t as u64,
            k: Some(row.k),
            a: row.p.to_string(),
            b: row.q.to_string(),
            value: value.to_string(),
        })
        .collect();
    match format {
        Format::Human => {
            writeln!(out, "period {period}, L = {}", period.len())?;
            for r in &records {
                writeln!(
                    out,
                    "k = {:>6}  S({}, {}) = {}",
                    r.k.unwrap_or_default(),
                    r.a,
                    r.b,
                    r.value
                )?;
            }
            writeln!(
                out,
                "{}",
                if constant { "constant" } else { "NOT constant" }
            )?;
        }
        Format::Json => {
            let rec = VerifyRecord {
                period: strings(period.terms()),
                len: period.len() as u64,
                depth,
                rows: records,
                constant,
            };
            writeln!(out, "{}", serde_json::to_string(&rec)?)?;
        }
        Format::Tsv => {
            for r in &records {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    r.k.unwrap_or_default(),
                    r.a,
                    r.b,
                    r.value
                )?;
            }
        }
    }
    if !constant {
        return Err(Failure::Verify(format!(
            "values differ along period {period}"
        )));
    }
    Ok(())
}

fn cmd_search(
    target: &str,
    bound: u64,
    options: &SearchOptions,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let target: Rational = target.parse()?;
    match format {
        Format::Json => {
            let result = search::search_value_with(&target, bound, options)?;
            let hits: Vec<HitRecord> = result
                .hits
                .iter()
                .map(|p| HitRecord {
                    a: p.a().to_string(),
                    b: p.b().to_string(),
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string(&hits)?)?;
        }
        Format::Tsv | Format::Human => {
            let mut io_err = None;
            let summary = search::search_stream(&target, bound, options, |p| {
                if io_err.is_some() {
                    return;
                }
                let line = if format == Format::Tsv {
                    writeln!(out, "{}\t{}", p.a(), p.b())
                } else {
                    writeln!(out, "{p}")
                };
                io_err = line.err();
            })?;
            if let Some(e) = io_err {
                return Err(e.into());
            }
            if format == Format::Human {
                writeln!(
                    out,
                    "{} pairs with S = {} and b < {bound} ({} pairs evaluated)",
                    summary.hit_count,
                    target.to_human(),
                    summary.pairs_scanned
                )?;
            }
        }
    }
    Ok(())
}
