//! Command-line front end. [`run`] takes the argument vector and returns the
//! exit code and both output streams, so the binary is a thin wrapper and
//! tests can drive every command in-process.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 internal
//! verification failure.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::components::{ComponentKind, TripleParams};
use crate::density::{
    approximate_density, convergence_estimate, DensityInterval, MAX_CONVERGENCE_DIGITS,
};
use crate::error::Error;
use crate::exact::{parse_ratio, ratio_string, Decimal, Rounding};
use crate::oracle::{general_violation, graph_report, triangulate};
use crate::pair_sidon::{
    build_path_decomposition, cardinality_bounds, construct_extremal_set, pair_density,
    pair_violation, path_alpha, PairParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Decimal places used when a command has no `--digits` option.
const DISPLAY_DIGITS: u32 = 12;

/// Triples reproduced by `triple-table`.
pub const TABLE_TRIPLES: [(u64, u64, u64); 10] = [
    (2, 3, 5),
    (2, 3, 7),
    (2, 5, 7),
    (2, 5, 9),
    (2, 7, 9),
    (3, 4, 5),
    (3, 4, 7),
    (3, 5, 7),
    (3, 5, 8),
    (3, 7, 8),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Certified,
    Converge,
}

#[derive(Debug, Parser)]
#[command(
    name = "multsidon",
    version,
    about = "Maximum densities of multiplicative Sidon-type sets"
)]
pub struct Cli {
    /// Output format (default: csv for triple-table, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact maximum density b/(b+gcd(a,b)) of an {a,b}-multiplicative set
    PairDensity {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Largest {a,b}-multiplicative subset of [n] (even subpowers of b/g)
    PairConstruct {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: u64,
        /// Check optimality against the path decomposition and re-check the set
        #[arg(long)]
        verify: bool,
    },
    /// Density of {{a},{b,c}}-multiplicative sets
    TripleDensity {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        /// Target interval width, e.g. 5e-5 or 1/20000
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Certified)]
        mode: Mode,
        /// Use this cutoff height instead of deriving one from --eps
        #[arg(long)]
        d: Option<u32>,
        /// Decimal places (default: 4 in converge mode, 12 in certified mode)
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Converged estimate and certified interval for the ten reference triples
    TripleTable {
        #[arg(long, default_value_t = 4)]
        digits: u32,
        #[arg(long, default_value = "5e-5")]
        eps: String,
    },
    /// alpha(G_n)/n for the finite graph on [n]
    Empirical {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        n: u64,
        /// Cross-check every component of G_min(n,V) by matching and exhaustive search
        #[arg(long)]
        verify_upto: Option<u64>,
        /// Cutoff height for the complete/small/large split
        #[arg(long)]
        d: Option<u32>,
    },
    /// Check a newline-delimited integer set for {A,B}-multiplicativity
    CheckSet {
        #[arg(long = "A")]
        a_set: String,
        #[arg(long = "B")]
        b_set: String,
        #[arg(long)]
        set_file: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }

    fn verify_failed(stdout: String, message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_VERIFY,
            stdout,
            stderr: format!("verification failed: {message}\n"),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::usage(e)
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    let format = cli.format;
    let result = match cli.command {
        Command::PairDensity { a, b } => pair_density_cmd(a, b, format.unwrap_or(Format::Json)),
        Command::PairConstruct { a, b, n, verify } => {
            pair_construct_cmd(a, b, n, verify, format.unwrap_or(Format::Json))
        }
        Command::TripleDensity {
            a,
            b,
            c,
            eps,
            mode,
            d,
            digits,
        } => triple_density_cmd(
            a,
            b,
            c,
            eps.as_deref(),
            mode,
            d,
            digits,
            format.unwrap_or(Format::Json),
        ),
        Command::TripleTable { digits, eps } => {
            triple_table_cmd(digits, &eps, format.unwrap_or(Format::Csv))
        }
        Command::Empirical {
            a,
            b,
            c,
            n,
            verify_upto,
            d,
        } => empirical_cmd(a, b, c, n, verify_upto, d, format.unwrap_or(Format::Json)),
        Command::CheckSet {
            a_set,
            b_set,
            set_file,
        } => check_set_cmd(&a_set, &b_set, &set_file, format.unwrap_or(Format::Json)),
    };
    result.unwrap_or_else(|outcome| outcome)
}

type CmdResult = Result<Outcome, Outcome>;

fn exact_json(r: &BigRational, digits: u32, rounding: Rounding) -> Value {
    let d = Decimal::new(r, digits, rounding);
    json!({
        "exact": ratio_string(r),
        "decimal": d.value,
        "digits": d.digits,
        "rounding": d.rounding,
    })
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(row).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

fn pair_density_cmd(a: u64, b: u64, format: Format) -> CmdResult {
    let p = PairParams::new(a, b)?;
    let density = pair_density(&p);
    let decimal = Decimal::new(&density, DISPLAY_DIGITS, Rounding::Down);
    let text = match format {
        Format::Json => json_line(&json!({
            "a": a,
            "b": b,
            "g": p.g(),
            "density": ratio_string(&density),
            "decimal": decimal,
        })),
        Format::Csv => csv_text(
            &["a", "b", "g", "density", "decimal", "digits", "rounding"],
            &[vec![
                a.to_string(),
                b.to_string(),
                p.g().to_string(),
                ratio_string(&density),
                decimal.value.clone(),
                decimal.digits.to_string(),
                decimal.rounding.to_string(),
            ]],
        ),
        Format::Plain => format!(
            "a = {a}, b = {b}, g = {}\ndensity = {} = {} ({} digits, rounded {})\n",
            p.g(),
            ratio_string(&density),
            decimal.value,
            decimal.digits,
            decimal.rounding
        ),
    };
    Ok(Outcome::ok(text))
}

fn pair_construct_cmd(a: u64, b: u64, n: u64, verify: bool, format: Format) -> CmdResult {
    let p = PairParams::new(a, b)?;
    if n == 0 {
        return Err(Outcome::usage("n must be at least 1"));
    }
    let set = construct_extremal_set(&p, n);
    let mut failures = Vec::new();
    let verification = verify.then(|| {
        let optimum = path_alpha(&build_path_decomposition(&p, n));
        let violation = pair_violation(&set.members, a, b);
        let within_bounds = cardinality_bounds(&p, n).contains(set.cardinality());
        if optimum != set.cardinality() {
            failures.push(format!(
                "|T_n| = {} but path optimum is {optimum}",
                set.cardinality()
            ));
        }
        if let Some((x, y)) = violation {
            failures.push(format!("{a}*{x} = {b}*{y}"));
        }
        if !within_bounds {
            failures.push("cardinality outside the counting bounds".to_string());
        }
        json!({
            "path_optimum": optimum,
            "multiplicative": violation.is_none(),
            "within_bounds": within_bounds,
            "passed": failures.is_empty(),
        })
    });
    let text = match format {
        Format::Json => {
            let mut v = json!({
                "a": a,
                "b": b,
                "g": p.g(),
                "n": n,
                "cardinality": set.cardinality(),
                "members": set.members,
            });
            if let Some(check) = &verification {
                v["verification"] = check.clone();
            }
            json_line(&v)
        }
        Format::Csv => csv_text(
            &["value"],
            &set.members
                .iter()
                .map(|m| vec![m.to_string()])
                .collect::<Vec<_>>(),
        ),
        Format::Plain => format!("{}\n", set.cardinality()),
    };
    if failures.is_empty() {
        Ok(Outcome::ok(text))
    } else {
        Err(Outcome::verify_failed(text, failures.join("; ")))
    }
}

fn parse_eps(eps: &str) -> Result<BigRational, Outcome> {
    parse_ratio(eps).ok_or_else(|| Outcome::usage(format!("cannot parse eps {eps:?}")))
}

fn interval_json(iv: &DensityInterval, digits: u32) -> Value {
    json!({
        "a": iv.params.a(),
        "b": iv.params.b(),
        "c": iv.params.c(),
        "epsilon": iv.epsilon.as_ref().map(ratio_string),
        "d": iv.cutoff,
        "delta_complete": exact_json(&iv.delta_complete, digits, Rounding::Down),
        "delta_small": exact_json(&iv.delta_small, digits, Rounding::Down),
        "tail": exact_json(&iv.tail_bound, digits, Rounding::Up),
        "lower": exact_json(&iv.lower, digits, Rounding::Down),
        "upper": exact_json(&iv.upper, digits, Rounding::Up),
    })
}

const INTERVAL_FIELDS: [(&str, Rounding); 5] = [
    ("delta_complete", Rounding::Down),
    ("delta_small", Rounding::Down),
    ("tail", Rounding::Up),
    ("lower", Rounding::Down),
    ("upper", Rounding::Up),
];

fn interval_values(iv: &DensityInterval) -> [&BigRational; 5] {
    [
        &iv.delta_complete,
        &iv.delta_small,
        &iv.tail_bound,
        &iv.lower,
        &iv.upper,
    ]
}

#[allow(clippy::too_many_arguments)]
fn triple_density_cmd(
    a: u64,
    b: u64,
    c: u64,
    eps: Option<&str>,
    mode: Mode,
    cutoff: Option<u32>,
    digits: Option<u32>,
    format: Format,
) -> CmdResult {
    let t = TripleParams::new(a, b, c)?;
    let eps = eps.map(parse_eps).transpose()?;
    match mode {
        Mode::Converge => {
            let digits = digits.unwrap_or(4);
            let est = convergence_estimate(&t, digits)?;
            let text = match format {
                Format::Json => json_line(&json!({
                    "a": a,
                    "b": b,
                    "c": c,
                    "mode": "converge",
                    "estimate": est.decimal,
                    "digits": est.digits,
                    "rounding": Rounding::Nearest,
                    "d": est.cutoff,
                    "partial": ratio_string(&est.partial),
                })),
                Format::Csv => csv_text(
                    &["a", "b", "c", "estimate", "digits", "rounding", "d"],
                    &[vec![
                        a.to_string(),
                        b.to_string(),
                        c.to_string(),
                        est.decimal.clone(),
                        digits.to_string(),
                        Rounding::Nearest.to_string(),
                        est.cutoff.to_string(),
                    ]],
                ),
                Format::Plain => format!(
                    "({a}, {b}, {c}): density ~ {} (stable to {digits} digits, rounded nearest, d = {})\n",
                    est.decimal, est.cutoff
                ),
            };
            Ok(Outcome::ok(text))
        }
        Mode::Certified => {
            let digits = digits.unwrap_or(DISPLAY_DIGITS);
            let iv = match (cutoff, &eps) {
                (Some(d), _) => {
                    if let Some(e) = &eps {
                        if !crate::exact::is_unit_interval_open(e) {
                            return Err(Outcome::usage("eps must lie in (0, 1)"));
                        }
                    }
                    let mut iv = DensityInterval::at_cutoff(&t, d);
                    iv.epsilon = eps.clone();
                    iv
                }
                (None, Some(e)) => approximate_density(&t, e)?,
                (None, None) => return Err(Outcome::usage("certified mode needs --eps or --d")),
            };
            let text = match format {
                Format::Json => {
                    let mut v = interval_json(&iv, digits);
                    v["mode"] = json!("certified");
                    if let Some(e) = &iv.epsilon {
                        v["width_within_epsilon"] = json!(&iv.width() <= e);
                    }
                    json_line(&v)
                }
                Format::Csv => {
                    let mut header = vec!["a", "b", "c", "epsilon", "d"];
                    let mut row = vec![
                        a.to_string(),
                        b.to_string(),
                        c.to_string(),
                        iv.epsilon.as_ref().map(ratio_string).unwrap_or_default(),
                        iv.cutoff.to_string(),
                    ];
                    let names: Vec<String> = INTERVAL_FIELDS
                        .iter()
                        .flat_map(|(name, _)| [name.to_string(), format!("{name}_decimal")])
                        .collect();
                    header.extend(names.iter().map(String::as_str));
                    for ((_, rounding), value) in INTERVAL_FIELDS.iter().zip(interval_values(&iv)) {
                        row.push(ratio_string(value));
                        row.push(Decimal::new(value, digits, *rounding).value);
                    }
                    csv_text(&header, &[row])
                }
                Format::Plain => {
                    let mut s = format!("({a}, {b}, {c}) with cutoff d = {}\n", iv.cutoff);
                    for ((name, rounding), value) in
                        INTERVAL_FIELDS.iter().zip(interval_values(&iv))
                    {
                        let _ = writeln!(
                            s,
                            "{name:>14} = {} (rounded {rounding})",
                            Decimal::new(value, digits, *rounding)
                        );
                    }
                    s
                }
            };
            Ok(Outcome::ok(text))
        }
    }
}

struct TableRow {
    triple: TripleParams,
    estimate: String,
    estimate_d: u32,
    interval: DensityInterval,
}

/// Rows computed on scoped threads, returned in [`TABLE_TRIPLES`] order.
fn table_rows(digits: u32, eps: &BigRational) -> Result<Vec<TableRow>, Error> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = TABLE_TRIPLES
            .iter()
            .map(|&(a, b, c)| {
                scope.spawn(move || -> Result<TableRow, Error> {
                    let triple = TripleParams::new(a, b, c)?;
                    let est = convergence_estimate(&triple, digits)?;
                    let interval = approximate_density(&triple, eps)?;
                    Ok(TableRow {
                        triple,
                        estimate: est.decimal,
                        estimate_d: est.cutoff,
                        interval,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table worker panicked"))
            .collect()
    })
}

fn triple_table_cmd(digits: u32, eps: &str, format: Format) -> CmdResult {
    if digits == 0 || digits > MAX_CONVERGENCE_DIGITS {
        return Err(Outcome::usage(format!(
            "digits must lie in [1, {MAX_CONVERGENCE_DIGITS}]"
        )));
    }
    let eps = parse_eps(eps)?;
    let rows = table_rows(digits, &eps)?;
    let interval_digits = digits + 2;
    let text = match format {
        Format::Csv => csv_text(
            &[
                "a",
                "b",
                "c",
                "converged",
                "converge_d",
                "lower",
                "upper",
                "lower_decimal",
                "upper_decimal",
                "certified_d",
            ],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.triple.a().to_string(),
                        r.triple.b().to_string(),
                        r.triple.c().to_string(),
                        r.estimate.clone(),
                        r.estimate_d.to_string(),
                        ratio_string(&r.interval.lower),
                        ratio_string(&r.interval.upper),
                        Decimal::new(&r.interval.lower, interval_digits, Rounding::Down).value,
                        Decimal::new(&r.interval.upper, interval_digits, Rounding::Up).value,
                        r.interval.cutoff.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_line(&json!({
            "epsilon": ratio_string(&eps),
            "digits": digits,
            "rows": rows.iter().map(|r| json!({
                "a": r.triple.a(),
                "b": r.triple.b(),
                "c": r.triple.c(),
                "converged": r.estimate,
                "converge_d": r.estimate_d,
                "lower": exact_json(&r.interval.lower, interval_digits, Rounding::Down),
                "upper": exact_json(&r.interval.upper, interval_digits, Rounding::Up),
                "certified_d": r.interval.cutoff,
            })).collect::<Vec<_>>(),
        })),
        Format::Plain => {
            let mut s = String::from(" a  b  c  converged  certified interval\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>2} {:>2} {:>2}  {:<9}  [{}, {}]",
                    r.triple.a(),
                    r.triple.b(),
                    r.triple.c(),
                    r.estimate,
                    Decimal::new(&r.interval.lower, interval_digits, Rounding::Down),
                    Decimal::new(&r.interval.upper, interval_digits, Rounding::Up),
                );
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn empirical_cmd(
    a: u64,
    b: u64,
    c: u64,
    n: u64,
    verify_upto: Option<u64>,
    cutoff: Option<u32>,
    format: Format,
) -> CmdResult {
    let t = TripleParams::new(a, b, c)?;
    if n == 0 {
        return Err(Outcome::usage("n must be at least 1"));
    }
    let report = graph_report(&t, n, cutoff.unwrap_or(0));
    let decimal = Decimal::new(&report.ratio, DISPLAY_DIGITS, Rounding::Down);
    let triangulation = match verify_upto {
        Some(limit) => Some(triangulate(&t, n.min(limit))?),
        None => None,
    };
    let split = cutoff.map(|d| {
        json!({
            "d": d,
            "complete": report.alpha_of_kind(ComponentKind::Complete),
            "small": report.alpha_of_kind(ComponentKind::Small),
            "large": report.alpha_of_kind(ComponentKind::Large),
        })
    });
    let text = match format {
        Format::Json => {
            let mut v = json!({
                "a": a,
                "b": b,
                "c": c,
                "n": n,
                "alpha": report.total_alpha,
                "components": report.components.len(),
                "ratio": ratio_string(&report.ratio),
                "decimal": decimal,
            });
            if let Some(split) = split {
                v["alpha_by_kind"] = split;
            }
            if let Some(tri) = &triangulation {
                v["verification"] = serde_json::to_value(tri).expect("serializable");
            }
            json_line(&v)
        }
        Format::Csv => csv_text(
            &[
                "a",
                "b",
                "c",
                "n",
                "alpha",
                "ratio",
                "decimal",
                "verified_upto",
                "consistent",
            ],
            &[vec![
                a.to_string(),
                b.to_string(),
                c.to_string(),
                n.to_string(),
                report.total_alpha.to_string(),
                ratio_string(&report.ratio),
                decimal.value.clone(),
                triangulation
                    .as_ref()
                    .map(|t| t.n.to_string())
                    .unwrap_or_default(),
                triangulation
                    .as_ref()
                    .map(|t| t.is_consistent().to_string())
                    .unwrap_or_default(),
            ]],
        ),
        Format::Plain => {
            let mut s = format!(
                "alpha(G_{n}) = {}, ratio = {} = {} ({} digits, rounded down)\n",
                report.total_alpha,
                ratio_string(&report.ratio),
                decimal.value,
                decimal.digits
            );
            if let Some(tri) = &triangulation {
                let _ = writeln!(
                    s,
                    "checked {} components up to {} ({} exhaustively): {}",
                    tri.components,
                    tri.n,
                    tri.exhaustive_checked,
                    if tri.is_consistent() {
                        "all agree"
                    } else {
                        "DISAGREEMENT"
                    }
                );
            }
            s
        }
    };
    match triangulation {
        Some(tri) if !tri.is_consistent() => Err(Outcome::verify_failed(
            text,
            format!("{} components disagree", tri.disagreements.len()),
        )),
        _ => Ok(Outcome::ok(text)),
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u64>, Outcome> {
    let values: Result<Vec<u64>, _> = s.split(',').map(|x| x.trim().parse::<u64>()).collect();
    match values {
        Ok(v) if !v.is_empty() && v.iter().all(|&x| x > 0) => Ok(v),
        _ => Err(Outcome::usage(format!(
            "{what} must be a comma-separated list of positive integers, got {s:?}"
        ))),
    }
}

/// Newline-delimited positive integers; blank lines are skipped.
pub fn parse_set_file(text: &str) -> Result<Vec<u64>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| match line.trim().parse::<u64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(format!(
                "line {}: expected a positive integer, got {:?}",
                i + 1,
                line.trim()
            )),
        })
        .collect()
}

fn check_set_cmd(a_set: &str, b_set: &str, path: &std::path::Path, format: Format) -> CmdResult {
    let a_values = parse_list(a_set, "--A")?;
    let b_values = parse_list(b_set, "--B")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::usage(format!("cannot read {}: {e}", path.display())))?;
    let set = parse_set_file(&text).map_err(Outcome::usage)?;
    let witness = general_violation(&set, &a_values, &b_values);
    let out = match format {
        Format::Json => json_line(&json!({
            "A": a_values,
            "B": b_values,
            "size": set.len(),
            "multiplicative": witness.is_none(),
            "witness": witness,
        })),
        Format::Csv => csv_text(
            &["multiplicative", "a", "b", "x", "y"],
            &[match witness {
                Some(w) => vec![
                    "false".into(),
                    w.a.to_string(),
                    w.b.to_string(),
                    w.x.to_string(),
                    w.y.to_string(),
                ],
                None => vec![
                    "true".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ],
            }],
        ),
        Format::Plain => match witness {
            Some(w) => format!("false: {}*{} = {}*{}\n", w.a, w.x, w.b, w.y),
            None => "true\n".to_string(),
        },
    };
    Ok(Outcome::ok(out))
}
