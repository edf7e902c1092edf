//! `hyperhodge`: exit 0 on success, 1 on a domain precondition failure, 2 on a parse or usage
//! error. Errors are written to stdout as `{"error": {"kind", "detail"}}`.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperhodge::exact::IntMat;
use hyperhodge::gkz::{matrix_for_hyper, volume_report, GkzSystem};
use hyperhodge::hodge::{fedorov_numbers, irregular_filtration, irregular_hodge_numbers};
use hyperhodge::hyper::HypergeometricParams;
use hyperhodge::report::{
    connection_report, gkz_check_report, invariants_report, reduction_report, vfiltration_report, ErrorReport,
    HodgeReport,
};
use hyperhodge::verify::{run_all, VerifyConfig};
use hyperhodge::{Error, Rat};

#[derive(Parser, Debug)]
#[command(name = "hyperhodge", version, about = "Exact invariants of hypergeometric and GKZ systems")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Irreducibility, singularities and the normalized parameters.
    HyperInvariants {
        #[arg(allow_hyphen_values = true)]
        params: String,
    },
    /// Hodge numbers of an irreducible type (n, n) module.
    HodgeRegular {
        #[arg(allow_hyphen_values = true)]
        params: String,
    },
    /// Irregular Hodge numbers of a type (n, 0) module.
    HodgeIrregular {
        #[arg(allow_hyphen_values = true)]
        params: String,
    },
    /// The irregular Hodge filtration with its basis at each jump level.
    Filtration {
        #[arg(allow_hyphen_values = true)]
        params: String,
        /// Unit intervals of levels to emit.
        #[arg(long, default_value_t = 1)]
        window: u32,
    },
    /// Assumption report, binomials and holonomic rank of a GKZ matrix.
    GkzCheck {
        #[command(flatten)]
        gkz: GkzArgs,
    },
    /// Reduction of a block-shaped GKZ system to the pair (P, H).
    GkzReduce {
        /// Parameters `α; β` with α_1 = 0, used instead of --matrix.
        #[arg(allow_hyphen_values = true)]
        params: Option<String>,
        #[command(flatten)]
        gkz: OptionalGkzArgs,
    },
    /// Normalized volume of the convex hull of the columns.
    GkzVolume {
        /// Integer rows as JSON, e.g. `[[1,1],[0,1]]`.
        #[arg(long)]
        matrix: String,
    },
    /// Connection matrices of the rescaled module and their check against the ideal.
    RescaleConnection {
        #[arg(allow_hyphen_values = true)]
        params: String,
    },
    /// One step of the filtration along τ = 0 and its graded piece.
    RescaleVfilt {
        #[arg(allow_hyphen_values = true)]
        params: String,
        /// Filtration index.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Runs the randomized invariant suite.
    Verify {
        /// Random cases per check.
        #[arg(long, default_value_t = 20)]
        bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args, Debug)]
struct GkzArgs {
    /// Integer rows as JSON, e.g. `[[1,1],[0,1]]`.
    #[arg(long)]
    matrix: String,
    /// JSON array of rationals; defaults to zeros.
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta0: String,
}

#[derive(clap::Args, Debug)]
struct OptionalGkzArgs {
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta0: String,
}

fn parse_params(s: &str) -> Result<HypergeometricParams, Error> {
    s.parse()
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    Ok(s.parse::<Rat>()?)
}

fn parse_matrix(s: &str) -> Result<IntMat, Error> {
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(s).map_err(|e| Error::Syntax(format!("matrix must be a JSON array of integer rows: {e}")))?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Syntax("matrix rows have different lengths".into()));
    }
    Ok(IntMat::from_rows(cols, &rows))
}

fn parse_beta(s: Option<&str>, rows: usize) -> Result<Vec<Rat>, Error> {
    let Some(s) = s else {
        return Ok(vec![Rat::zero(); rows]);
    };
    let items: Vec<Value> =
        serde_json::from_str(s).map_err(|e| Error::Syntax(format!("beta must be a JSON array: {e}")))?;
    items
        .iter()
        .map(|v| match v {
            Value::String(s) => parse_rat(s),
            Value::Number(n) => parse_rat(&n.to_string()),
            other => Err(Error::Syntax(format!("beta entry {other} is not a rational"))),
        })
        .collect()
}

fn gkz_system(matrix: &str, beta: Option<&str>, beta0: &str) -> Result<GkzSystem, Error> {
    let a = parse_matrix(matrix)?;
    let beta = parse_beta(beta, a.rows())?;
    GkzSystem::new(a, beta, parse_rat(beta0)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

struct Outcome {
    value: Value,
    ok: bool,
}

fn success(value: Value) -> Result<Outcome, Error> {
    Ok(Outcome { value, ok: true })
}

fn dispatch(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::HyperInvariants { params } => success(to_value(&invariants_report(&parse_params(params)?)?)),
        Command::HodgeRegular { params } => {
            let spec = fedorov_numbers(&parse_params(params)?)?;
            success(to_value(&HodgeReport::new(&spec, None)))
        }
        Command::HodgeIrregular { params } => {
            let p = parse_params(params)?;
            let spec = irregular_hodge_numbers(&p)?;
            let filt = irregular_filtration(&p, 1)?;
            success(to_value(&HodgeReport::new(&spec, Some(&filt))))
        }
        Command::Filtration { params, window } => {
            let p = parse_params(params)?;
            let spec = irregular_hodge_numbers(&p)?;
            let filt = irregular_filtration(&p, *window)?;
            success(to_value(&HodgeReport::new(&spec, Some(&filt))))
        }
        Command::GkzCheck { gkz } => {
            let sys = gkz_system(&gkz.matrix, gkz.beta.as_deref(), &gkz.beta0)?;
            success(to_value(&gkz_check_report(&sys)?))
        }
        Command::GkzReduce { params, gkz } => {
            let sys = match (params, &gkz.matrix) {
                (Some(p), None) => matrix_for_hyper(&parse_params(p)?)?,
                (None, Some(m)) => gkz_system(m, gkz.beta.as_deref(), &gkz.beta0)?,
                _ => return Err(Error::Syntax("give either parameters or --matrix".into())),
            };
            success(to_value(&reduction_report(&sys)?))
        }
        Command::GkzVolume { matrix } => success(to_value(&volume_report(&parse_matrix(matrix)?)?)),
        Command::RescaleConnection { params } => success(to_value(&connection_report(&parse_params(params)?)?)),
        Command::RescaleVfilt { params, alpha } => {
            let p = parse_params(params)?;
            success(to_value(&vfiltration_report(&p, &parse_rat(alpha)?)?))
        }
        Command::Verify { bound, seed } => {
            let results = run_all(&VerifyConfig {
                bound: *bound,
                seed: *seed,
            });
            let ok = results.iter().all(|r| r.passed);
            Ok(Outcome {
                value: json!({ "passed": ok, "checks": to_value(&results) }),
                ok,
            })
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// One `path  value` line per leaf; arrays of scalars stay on one line.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        leaf => out.push((prefix.to_string(), scalar(leaf))),
    }
}

fn table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, x)| format!("{k:<width$}  {x}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => v.to_string(),
        Format::Table => table(v),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = json!({ "error": { "kind": "usage", "detail": e.kind().to_string() } });
            println!("{err}");
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            println!("{}", render(&out.value, cli.format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            println!("{}", render(&to_value(&ErrorReport::from(&e)), cli.format));
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}
