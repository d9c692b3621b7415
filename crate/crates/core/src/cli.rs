//! The `haargap` command-line front end.
//!
//! Every exact quantity is serialized as a `p/q` string. JSON output has the
//! shape `{command, inputs, results, version}`; `inputs` holds everything
//! needed to recompute `results`. Exit codes: 0 success, 2 invalid input,
//! 3 capacity exceeded, 4 validation failure.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serializer;
use serde_json::{json, Value};

use crate::cotlar_stein::{validation_suite, Tolerances, DEFAULT_SEED};
use crate::entropy::{
    conjectured_bound, dispersive_exponent, entropy_lower_bound, fast_slow_split, haar_entropy,
    lyapunov_spectrum, DispersiveQuery,
};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, parse_rational_list, Rational};
use crate::rigidity::{
    closed_form_min_haar_weight, extremal_vertex_report, largest_proper_divisor, solve_problem,
    BoundMode, Lattice, RigidityProblem,
};
use crate::root_system::{CartanElement, RootSystem};
use crate::supports::{enumerate_block_partitions, enumerate_symmetric_closed};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable overriding the seed of `validate`.
pub const SEED_ENV: &str = "HAARGAP_SEED";

pub fn ser_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

fn r(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

fn rs_list(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(r).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    Generic,
    Inner,
}

impl From<LatticeArg> for Lattice {
    fn from(l: LatticeArg) -> Self {
        match l {
            LatticeArg::Generic => Lattice::Generic,
            LatticeArg::Inner => Lattice::Inner,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundModeArg {
    HaarFraction,
    #[value(name = "thm14")]
    HalfMaximal,
}

impl From<BoundModeArg> for BoundMode {
    fn from(b: BoundModeArg) -> Self {
        match b {
            BoundModeArg::HaarFraction => BoundMode::FractionOfHaar,
            BoundModeArg::HalfMaximal => BoundMode::HalfMaximal,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "haargap", version, about = "Entropy bounds and Haar-component linear programs for SL_n")]
pub struct Cli {
    /// Output format (defaults to json; `report` defaults to a markdown table).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the roots of A_{n-1} and the Weyl orbit of a direction.
    Roots {
        #[arg(long)]
        n: usize,
        /// Comma-separated trace-zero rationals (default: n-1,-1,...,-1).
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
    },
    /// Lyapunov spectrum and fast/slow split of a direction.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        /// Time-horizon constant K (rational), enables the fast/slow split.
        #[arg(long)]
        k: Option<String>,
    },
    /// Entropy bounds for a direction.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        /// Time-horizon constant K (default 1/chi_max).
        #[arg(long)]
        k: Option<String>,
    },
    /// Enumerate admissible supports.
    Supports {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "generic")]
        lattice: LatticeArg,
    },
    /// Solve the Haar-weight linear program.
    HaarLp {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "generic")]
        lattice: LatticeArg,
        /// Entropy fraction beta as an exact rational, e.g. 1/2 or 11/20.
        #[arg(long, default_value = "1/2")]
        beta: String,
        #[arg(long, value_enum, default_value = "haar-fraction")]
        bound_mode: BoundModeArg,
    },
    /// Run the floating-point validation suite.
    Validate {
        /// Seed of the random matrix families (env HAARGAP_SEED also works).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Table of minimal Haar weights next to their closed forms.
    Report,
}

/// Result of one invocation: exit code plus the text that goes to stdout
/// (or the output file).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub text: String,
}

struct Payload {
    command: &'static str,
    inputs: Value,
    results: Value,
    table: String,
    exit_code: i32,
}

impl Payload {
    fn ok(command: &'static str, inputs: Value, results: Value, table: String) -> Self {
        Payload {
            command,
            inputs,
            results,
            table,
            exit_code: 0,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "inputs": self.inputs,
                    "results": self.results,
                    "version": VERSION,
                });
                serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
            }
            Format::Table => self.table.clone(),
        }
    }
}

fn parse_direction(n: usize, text: &str) -> Result<CartanElement> {
    let coords = parse_rational_list(text)?;
    if coords.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: coords.len(),
        });
    }
    CartanElement::new(coords)
}

fn parse_k(text: &str) -> Result<Rational> {
    parse_rational(text)
}

fn roots_cmd(n: usize, direction: Option<&str>) -> Result<Payload> {
    let rs = RootSystem::type_a(n)?;
    let x = match direction {
        Some(d) => parse_direction(n, d)?,
        None => CartanElement::extremely_irregular(n),
    };
    let roots: Vec<Value> = rs
        .roots()
        .iter()
        .map(|root| {
            json!({
                "label": root.label(),
                "vector": rs_list(&root.vector),
                "positive": root.is_positive(),
            })
        })
        .collect();
    let dominant = x.dominant_representative();
    let results = json!({
        "n": n,
        "rank": rs.rank(),
        "num_roots": rs.len(),
        "num_positive": rs.positive_roots().len(),
        "roots": roots,
        "orbit": {
            "direction": x.to_strings(),
            "dominant": dominant.to_strings(),
            "size": x.weyl_orbit_size().to_string(),
            "regular": x.is_regular(),
        },
    });
    let mut table = format!(
        "A_{} (SL_{n}): {} roots, {} positive\n",
        n - 1,
        rs.len(),
        rs.positive_roots().len()
    );
    for root in rs.roots() {
        let _ = writeln!(
            table,
            "  {}{}",
            root.label(),
            if root.is_positive() { "  (+)" } else { "" }
        );
    }
    let _ = writeln!(
        table,
        "Weyl orbit of {x}: size {}, dominant {dominant}, regular {}",
        x.weyl_orbit_size(),
        x.is_regular()
    );
    Ok(Payload::ok(
        "roots",
        json!({ "n": n, "direction": x.to_strings().join(",") }),
        results,
        table,
    ))
}

fn spectrum_cmd(n: usize, direction: &str, k: Option<&str>) -> Result<Payload> {
    let rs = RootSystem::type_a(n)?;
    let x = parse_direction(n, direction)?;
    let spectrum = lyapunov_spectrum(&rs, &x)?;
    let k = k.map(parse_k).transpose()?;
    let split = k.as_ref().map(|k| fast_slow_split(&rs, &x, k)).transpose()?;
    let split_json = split.as_ref().map(|s| {
        json!({
            "threshold": r(&s.threshold),
            "slow": s.slow_indices,
            "fast": s.fast_indices,
            "j0": s.j0,
            "j": s.j,
        })
    });
    let results = json!({
        "direction": spectrum.direction.to_strings(),
        "values": rs_list(&spectrum.values),
        "chi_max": r(&spectrum.chi_max),
        "split": split_json,
    });
    let mut table = format!(
        "direction {}\nexponents {}\nchi_max {}\n",
        spectrum.direction,
        spectrum.values.iter().map(fmt_rational).collect::<Vec<_>>().join(" "),
        fmt_rational(&spectrum.chi_max)
    );
    if let Some(s) = &split {
        let _ = writeln!(
            table,
            "threshold {}  slow {:?}  fast {:?}  J0 {}  J {}",
            fmt_rational(&s.threshold),
            s.slow_indices,
            s.fast_indices,
            s.j0,
            s.j
        );
    }
    Ok(Payload::ok(
        "spectrum",
        json!({ "n": n, "direction": direction, "k": k.as_ref().map(r) }),
        results,
        table,
    ))
}

fn bound_cmd(n: usize, direction: &str, k: Option<&str>) -> Result<Payload> {
    let rs = RootSystem::type_a(n)?;
    let x = parse_direction(n, direction)?;
    let spectrum = lyapunov_spectrum(&rs, &x)?;
    let lower = entropy_lower_bound(&rs, &x)?;
    let haar = haar_entropy(&rs, &x)?;
    let optim = conjectured_bound(&rs, &x)?;
    let k = match k {
        Some(text) => Some(parse_k(text)?),
        None if !x.is_zero() => Some(num_traits::Inv::inv(spectrum.chi_max.clone())),
        None => None,
    };
    let exponent = k
        .as_ref()
        .map(|k| dispersive_exponent(&DispersiveQuery::new(k.clone(), x.clone())?, &rs))
        .transpose()?;
    let results = json!({
        "thm14": r(&lower),
        "haar": r(&haar),
        "optim": r(&optim),
        "chi_max": r(&spectrum.chi_max),
        "k": k.as_ref().map(r),
        "dispersive_exponent": exponent.as_ref().map(r),
    });
    let table = format!(
        "direction {}\nlower bound   {}\nhaar entropy  {}\nconjectured   {}\nchi_max       {}\nK             {}\ndispersive E  {}\n",
        x,
        fmt_rational(&lower),
        fmt_rational(&haar),
        fmt_rational(&optim),
        fmt_rational(&spectrum.chi_max),
        k.as_ref().map(fmt_rational).unwrap_or_else(|| "-".into()),
        exponent.as_ref().map(fmt_rational).unwrap_or_else(|| "-".into()),
    );
    Ok(Payload::ok(
        "bound",
        json!({ "n": n, "direction": direction, "k": k.as_ref().map(r) }),
        results,
        table,
    ))
}

fn supports_cmd(n: usize, lattice: Lattice) -> Result<Payload> {
    let rs = RootSystem::type_a(n)?;
    let sets = match lattice {
        Lattice::Generic => enumerate_symmetric_closed(&rs)?,
        Lattice::Inner => enumerate_block_partitions(n)?,
    };
    let list: Vec<Value> = sets
        .iter()
        .map(|s| {
            json!({
                "label": s.label(),
                "kind": s.kind(),
                "size": s.len(),
                "mask": s.mask_string(),
            })
        })
        .collect();
    let mut by_kind = serde_json::Map::new();
    for s in &sets {
        let e = by_kind.entry(s.kind().to_string()).or_insert(json!(0));
        *e = json!(e.as_u64().unwrap_or(0) + 1);
    }
    let mut table = format!("{} supports for SL_{n} ({lattice})\n", sets.len());
    for s in &sets {
        let _ = writeln!(table, "  {:<16} {:<24} |R|={}", s.kind().to_string(), s.label(), s.len());
    }
    Ok(Payload::ok(
        "supports",
        json!({ "n": n, "lattice": lattice }),
        json!({ "count": sets.len(), "by_kind": by_kind, "supports": list }),
        table,
    ))
}

fn haar_lp_cmd(n: usize, lattice: Lattice, beta: &str, mode: BoundMode) -> Result<Payload> {
    let beta_q = parse_rational(beta)?;
    let problem = RigidityProblem::standard(n, lattice, beta_q.clone(), mode)?;
    let out = solve_problem(problem)?;
    let min = out.min_haar_weight()?;
    let report = extremal_vertex_report(&out.problem, &out.solution)?;
    let constraints: Vec<Value> = out
        .model
        .constraints
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "coeffs": rs_list(&c.coeffs),
                "relation": c.relation,
                "rhs": r(&c.rhs),
            })
        })
        .collect();
    let results = json!({
        "min_haar_weight": r(&min),
        "variables": out.model.variables,
        "constraints": constraints,
        "vertex": report,
        "basis": out.solution.basis,
        "iterations": out.solution.iterations,
    });
    let mut table = format!(
        "SL_{n} {lattice}, beta {}, {} supports, {} constraints\nmin w_Δ = {}\nvertex (one optimal vertex; uniqueness not claimed):\n",
        fmt_rational(&beta_q),
        out.model.num_variables(),
        out.model.constraints.len(),
        fmt_rational(&min)
    );
    for e in &report.entries {
        let _ = writeln!(table, "  {:<24} {:<16} {}", e.label, e.kind.to_string(), fmt_rational(&e.weight));
    }
    Ok(Payload::ok(
        "haar-lp",
        json!({
            "n": n,
            "lattice": lattice,
            "beta": r(&beta_q),
            "bound_mode": mode,
        }),
        results,
        table,
    ))
}

fn validate_cmd(seed: Option<u64>) -> Result<Payload> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{SEED_ENV}={v:?} is not a u64")))?,
            Err(_) => DEFAULT_SEED,
        },
    };
    let report = validation_suite(seed, &Tolerances::default())?;
    let mut table = format!("validation suite, seed {seed}\n");
    for c in &report.checks {
        let _ = writeln!(
            table,
            "  [{}] {} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let exit_code = if report.passed { 0 } else { 4 };
    Ok(Payload {
        command: "validate",
        inputs: json!({ "seed": seed }),
        results: serde_json::to_value(&report).expect("report serializes"),
        table,
        exit_code,
    })
}

/// One row of the `report` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub lattice: Lattice,
    pub n: usize,
    pub lp: Rational,
    pub closed_form: Rational,
}

impl ReportRow {
    pub fn matches(&self) -> bool {
        self.lp == self.closed_form
    }
}

/// Generic `n = 3, 4` and inner `n = 3..=12` at `β = 1/2`.
pub fn report_rows() -> Result<Vec<ReportRow>> {
    let instances: Vec<(Lattice, usize)> = [(Lattice::Generic, 3), (Lattice::Generic, 4)]
        .into_iter()
        .chain((3..=12).map(|n| (Lattice::Inner, n)))
        .collect();
    let half = crate::rational::rat(1, 2);
    instances
        .par_iter()
        .map(|&(lattice, n)| {
            let lp = crate::rigidity::min_haar_weight(n, lattice, &half)?;
            let closed_form = closed_form_min_haar_weight(n, lattice)
                .expect("closed form exists for every report instance");
            Ok(ReportRow {
                lattice,
                n,
                lp,
                closed_form,
            })
        })
        .collect()
}

fn report_cmd() -> Result<Payload> {
    let rows = report_rows()?;
    let mut table = String::from(
        "| lattice | n | t | LP min w_Δ | closed form | equal |\n|---|---|---|---|---|---|\n",
    );
    for row in &rows {
        let t = match row.lattice {
            Lattice::Inner => largest_proper_divisor(row.n).to_string(),
            Lattice::Generic => "-".into(),
        };
        let _ = writeln!(
            table,
            "| {} | {} | {} | {} | {} | {} |",
            row.lattice,
            row.n,
            t,
            fmt_rational(&row.lp),
            fmt_rational(&row.closed_form),
            if row.matches() { "yes" } else { "NO" }
        );
    }
    let all_match = rows.iter().all(ReportRow::matches);
    let results: Vec<Value> = rows
        .iter()
        .map(|row| {
            json!({
                "lattice": row.lattice,
                "n": row.n,
                "lp": r(&row.lp),
                "closed_form": r(&row.closed_form),
                "equal": row.matches(),
            })
        })
        .collect();
    Ok(Payload {
        command: "report",
        inputs: json!({ "beta": "1/2" }),
        results: json!({ "rows": results, "all_equal": all_match }),
        table,
        exit_code: if all_match { 0 } else { 4 },
    })
}

fn dispatch(cli: &Cli) -> Result<(Payload, Format)> {
    let default_format = match cli.command {
        Command::Report => Format::Table,
        _ => Format::Json,
    };
    let payload = match &cli.command {
        Command::Roots { n, direction } => roots_cmd(*n, direction.as_deref())?,
        Command::Spectrum { n, direction, k } => spectrum_cmd(*n, direction, k.as_deref())?,
        Command::Bound { n, direction, k } => bound_cmd(*n, direction, k.as_deref())?,
        Command::Supports { n, lattice } => supports_cmd(*n, (*lattice).into())?,
        Command::HaarLp {
            n,
            lattice,
            beta,
            bound_mode,
        } => haar_lp_cmd(*n, (*lattice).into(), beta, (*bound_mode).into())?,
        Command::Validate { seed } => validate_cmd(*seed)?,
        Command::Report => report_cmd()?,
    };
    Ok((payload, cli.format.unwrap_or(default_format)))
}

/// Runs a parsed command line. Errors become exit codes with the message as
/// text; the output file, if any, is written here.
pub fn run(cli: &Cli) -> Outcome {
    let (exit_code, text) = match dispatch(cli) {
        Ok((payload, format)) => (payload.exit_code, payload.render(format)),
        Err(e) => return Outcome {
            exit_code: e.exit_code(),
            text: format!("error: {e}\n"),
        },
    };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &text) {
            return Outcome {
                exit_code: 2,
                text: format!("error: cannot write {}: {e}\n", path.display()),
            };
        }
        return Outcome {
            exit_code,
            text: String::new(),
        };
    }
    Outcome { exit_code, text }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome {
            exit_code: e.exit_code(),
            text: e.render().to_string(),
        },
    }
}
