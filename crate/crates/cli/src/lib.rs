//! The `quatsym` command line.
//!
//! Exit codes: 0 success, 1 undetermined verdict, failed reproduction or
//! inconclusive search, 2 usage or domain error.

pub mod fixtures;
pub mod report;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quatsym_core::gaussian::{factor_gaussian, PrimeKind};
use quatsym_core::local::hilbert;
use quatsym_core::oracle::{self, kummer_norm_eval, parse_poly, Field, SearchBound};
use quatsym_core::rational::legendre;
use quatsym_core::{classify, AlgebraSpec, GaussianInt, Place, Status};
use serde::Serialize;
use serde_json::json;

use crate::fixtures::{reproduce, WORKED_EXAMPLES};
use crate::report::VerdictReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "quatsym", version, about = "Split/division classification of quaternion and symbol algebras")]
struct Cli {
    /// Emit JSON instead of an aligned table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify an algebra as split or division.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Legendre symbol (A/P).
    Legendre {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        p: i64,
    },
    /// Hilbert symbol (A,B) at a place of Q: an odd prime, 2, or `real`.
    Hilbert {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        place: String,
    },
    /// Gaussian integer utilities.
    #[command(subcommand)]
    Gaussian(GaussianCmd),
    /// Bounded brute-force searches; an empty result is inconclusive.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Relative norm of f(b) from Q(zeta_q)(b), b^q = a, down to Q(zeta_q).
    KummerNorm {
        #[arg(long)]
        q: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Recompute the worked-example verdicts and compare.
    #[command(name = "reproduce-paper")]
    Reproduce {
        /// Row id such as `qi:10:29`, `q:33:29` or `sym3:7:19`.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FieldArg {
    Q,
    Qi,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Q => Field::Q,
            FieldArg::Qi => Field::Qi,
        }
    }
}

#[derive(Debug, Subcommand)]
enum ClassifyCmd {
    /// Quaternion algebra (A,B) over Q or Q(i).
    Quaternion {
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    /// Symbol algebra (ALPHA,P) of prime degree Q over Q(zeta_Q).
    Symbol {
        #[arg(long)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        alpha: i64,
        p: i64,
    },
}

#[derive(Debug, Subcommand)]
enum GaussianCmd {
    /// Factor N, written as `a+bi`, into Gaussian primes.
    Factor {
        #[arg(allow_hyphen_values = true)]
        n: String,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "q")]
    field: FieldArg,
    /// Coordinate height; defaults to 100 over Q and 30 over Q(i).
    #[arg(long)]
    bound: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum OracleCmd {
    /// A point of A x^2 + B y^2 = z^2.
    Conic {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// TARGET as x^2 - ALPHA y^2.
    Norm {
        #[arg(allow_negative_numbers = true)]
        alpha: i64,
        #[arg(allow_negative_numbers = true)]
        target: i64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// A zero of the reduced norm of the algebra with i^2 = A, j^2 = B.
    Isotropy {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[command(flatten)]
        search: SearchArgs,
    },
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Ctx<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, table: impl FnOnce() -> String) -> Result<(), Failure> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string(value)?)?;
        } else {
            write!(self.out, "{}", table())?;
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and executes one subcommand.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { json: cli.json, out };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    match cmd {
        Command::Classify(c) => {
            let spec = match c {
                ClassifyCmd::Quaternion { field: FieldArg::Q, a, b } => AlgebraSpec::QuaternionQ { a, b },
                ClassifyCmd::Quaternion { field: FieldArg::Qi, a, b } => AlgebraSpec::QuaternionQi { a, b },
                ClassifyCmd::Symbol { q, alpha, p } => AlgebraSpec::Symbol { q, alpha, p },
            };
            let start = Instant::now();
            let verdict = classify(spec)?;
            let report = VerdictReport::new(&verdict, start.elapsed().as_secs_f64() * 1e3);
            ctx.emit(&report, || report.table())?;
            Ok(if verdict.status == Status::Undetermined { EXIT_NEGATIVE } else { EXIT_OK })
        }
        Command::Legendre { a, p } => {
            let s = legendre(a, p)?;
            ctx.emit(&json!({ "a": a, "p": p, "legendre": s }), || format!("{s}\n"))?;
            Ok(EXIT_OK)
        }
        Command::Hilbert { a, b, place } => {
            let place = parse_place(&place)?;
            let s = hilbert(a, b, place)?;
            let value = s.value();
            ctx.emit(&json!({ "a": a, "b": b, "place": place.to_string(), "hilbert": value }), || {
                format!("{value}\n")
            })?;
            Ok(EXIT_OK)
        }
        Command::Gaussian(GaussianCmd::Factor { n }) => {
            let z: GaussianInt = n.trim().parse()?;
            let (unit, factors) = factor_gaussian(z)?;
            let rows: Vec<_> = factors
                .iter()
                .map(|(pi, e)| {
                    json!({ "prime": pi.element.to_string(), "exponent": e, "norm": pi.norm(), "kind": kind_name(pi.kind) })
                })
                .collect();
            let value = json!({ "n": z.to_string(), "unit": unit.to_string(), "factors": rows });
            ctx.emit(&value, || {
                let mut t = format!("unit {unit}\n");
                for (pi, e) in &factors {
                    t.push_str(&format!("({})^{e}  norm {}  {}\n", pi.element, pi.norm(), kind_name(pi.kind)));
                }
                t
            })?;
            Ok(EXIT_OK)
        }
        Command::Oracle(o) => run_oracle(o, ctx),
        Command::KummerNorm { q, a, poly } => {
            let f = parse_poly(q, &poly)?;
            let n = kummer_norm_eval(q, a, &f)?;
            let rational = n.as_rational().map(ToString::to_string);
            ctx.emit(
                &json!({ "q": q, "a": a, "poly": f.to_string(), "norm": n.to_string(), "rational": rational }),
                || format!("{n}\n"),
            )?;
            Ok(EXIT_OK)
        }
        Command::Reproduce { only } => {
            let Some(report) = reproduce(WORKED_EXAMPLES, only.as_deref()) else {
                return Err(Failure::Usage(format!("no row with id '{}'", only.unwrap_or_default())));
            };
            ctx.emit(&report, || report.table())?;
            Ok(if report.all_match() { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn kind_name(k: PrimeKind) -> &'static str {
    match k {
        PrimeKind::Split => "split",
        PrimeKind::Inert => "inert",
        PrimeKind::Ramified => "ramified",
    }
}

fn parse_place(s: &str) -> Result<Place, Failure> {
    match s {
        "real" | "inf" => Ok(Place::QReal),
        "2" => Ok(Place::QTwo),
        _ => {
            let p: i64 =
                s.parse().map_err(|_| Failure::Usage(format!("invalid place '{s}': expected a prime or 'real'")))?;
            Ok(Place::QOdd(p))
        }
    }
}

fn run_oracle(cmd: OracleCmd, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    let bound_for = |s: &SearchArgs| -> Result<SearchBound, Failure> {
        Ok(match s.bound {
            Some(h) => SearchBound::new(h)?,
            None => SearchBound::default_for(s.field.into()),
        })
    };
    let (search, params, field, bound, witness) = match cmd {
        OracleCmd::Conic { a, b, search } => {
            let bound = bound_for(&search)?;
            let w = oracle::conic_search(a, b, search.field.into(), bound)?
                .map(|p| json!({ "x": p.x.to_string(), "y": p.y.to_string(), "z": p.z.to_string() }));
            ("conic", json!({ "a": a, "b": b }), search.field, bound, w)
        }
        OracleCmd::Norm { alpha, target, search } => {
            let bound = bound_for(&search)?;
            let w = oracle::norm_search_quadratic(alpha, target, search.field.into(), bound)?.map(
                |w| json!({ "x": w.num_x.to_string(), "y": w.num_y.to_string(), "denominator": w.denom.to_string() }),
            );
            ("norm", json!({ "alpha": alpha, "target": target }), search.field, bound, w)
        }
        OracleCmd::Isotropy { a, b, search } => {
            let bound = bound_for(&search)?;
            let w = oracle::isotropy_search(a, b, search.field.into(), bound)?
                .map(|v| json!(v.iter().map(ToString::to_string).collect::<Vec<_>>()));
            ("isotropy", json!({ "a": a, "b": b }), search.field, bound, w)
        }
    };
    let field: Field = field.into();
    let result = if witness.is_some() { "found" } else { "inconclusive" };
    let value = json!({
        "search": search, "params": params, "field": field.to_string(),
        "bound": bound.height(), "result": result, "witness": witness,
    });
    ctx.emit(&value, || match &witness {
        Some(w) => format!("found {w}\n"),
        None => format!("inconclusive: nothing up to height {}\n", bound.height()),
    })?;
    Ok(if witness.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
}
