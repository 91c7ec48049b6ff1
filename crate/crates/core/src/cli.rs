//! The `maslov` command line: JSON files in, one JSON document out.
//!
//! Exit codes: 0 on success, 2 on invalid input (the output is then
//! `{"error": "..."}`). The binary maps panics to exit code 1.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bridge::{to_classical, to_idempotent};
use crate::counterexample::verify_counterexample;
use crate::density::{convergence_report, ContinuousTestFunction, DensityMeasure};
use crate::error::Error;
use crate::functor::{product, pushforward};
use crate::geometry::{
    approx_coefficients, approx_distance_closed_form, approx_toward_measure, approx_toward_point,
    segment_distance, SegmentPoint,
};
use crate::json::{
    convergence_to_json, counterexample_to_json, function_from_json, map_from_json,
    measure_from_json, measure_to_json, num, piecewise_from_json,
};
use crate::maxplus::MaxPlus;
use crate::measure::{IdempotentMeasure, Measure};

#[derive(Debug, Parser)]
#[command(
    name = "maslov",
    version,
    about = "Idempotent probability measures on finite spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Idempotent,
    Classical,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a measure on a function.
    Eval {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        function: PathBuf,
    },
    /// Push a measure forward along a map.
    Push {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Product of two measures of the same kind.
    Product {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        measure2: PathBuf,
    },
    /// Convert between classical and idempotent measures.
    Convert {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, value_enum)]
        to: Kind,
    },
    /// Distance from a measure to its approximation f_ε along their segment.
    Dist {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: f64,
    },
    /// Apply f_ε toward a point (--point) or a measure (--measure2).
    Approx {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(
            long,
            conflicts_with = "measure2",
            required_unless_present = "measure2"
        )]
        point: Option<String>,
        #[arg(long)]
        measure2: Option<PathBuf>,
    },
    /// Reproduce the three-point functor counterexample.
    VerifyCounterexample,
    /// Discretization error of a density measure on [0, 1] at several grid sizes.
    DensityConverge {
        #[arg(long)]
        density: PathBuf,
        #[arg(long)]
        function: PathBuf,
        #[arg(long = "grid", required = true)]
        grids: Vec<usize>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_json(flag: &str, path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("--{flag} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("--{flag} {}: {e}", path.display())))
}

fn load<T>(
    flag: &str,
    path: &Path,
    parse: impl Fn(&Value) -> crate::Result<T>,
) -> Result<T, Failure> {
    let v = read_json(flag, path)?;
    parse(&v).map_err(|e| Failure::Input(format!("--{flag} {}: {e}", path.display())))
}

fn idempotent(m: Measure, flag: &str) -> Result<IdempotentMeasure, Failure> {
    match m {
        Measure::Idempotent(m) => Ok(m),
        Measure::Classical(_) => Err(Failure::Input(format!(
            "--{flag}: expected an idempotent measure"
        ))),
    }
}

fn maxplus_json(w: MaxPlus) -> Value {
    match w {
        MaxPlus::Finite(x) => num(x),
        MaxPlus::Bottom => json!("-inf"),
    }
}

fn execute(command: Command) -> Result<Value, Failure> {
    Ok(match command {
        Command::Eval { measure, function } => {
            let mu = load("measure", &measure, measure_from_json)?;
            let phi = load("function", &function, function_from_json)?;
            json!({ "value": num(mu.evaluate(&phi)?) })
        }
        Command::Push { measure, map } => {
            let mu = load("measure", &measure, measure_from_json)?;
            let f = load("map", &map, map_from_json)?;
            measure_to_json(&pushforward(&f, &mu)?)
        }
        Command::Product { measure, measure2 } => {
            let mu = load("measure", &measure, measure_from_json)?;
            let nu = load("measure2", &measure2, measure_from_json)?;
            measure_to_json(&product(&mu, &nu)?)
        }
        Command::Convert { measure, to } => {
            let mu = load("measure", &measure, measure_from_json)?;
            let out: Measure = match (mu, to) {
                (Measure::Classical(m), Kind::Idempotent) => to_idempotent(&m).into(),
                (Measure::Idempotent(m), Kind::Classical) => to_classical(&m).into(),
                (same, _) => same,
            };
            measure_to_json(&out)
        }
        Command::Dist { epsilon } => {
            let c = approx_coefficients(epsilon)?;
            json!({
                "epsilon": num(epsilon),
                "coefficients": { "alpha": maxplus_json(c.alpha()), "beta": maxplus_json(c.beta()) },
                "distance": num(segment_distance(SegmentPoint::start(), c)),
                "closed_form": num(approx_distance_closed_form(epsilon)?),
            })
        }
        Command::Approx {
            measure,
            epsilon,
            point,
            measure2,
        } => {
            let mu = idempotent(load("measure", &measure, measure_from_json)?, "measure")?;
            let out = match (point, measure2) {
                (Some(x0), None) => approx_toward_point(&mu, &x0, epsilon)?,
                (None, Some(path)) => {
                    let nu = idempotent(load("measure2", &path, measure_from_json)?, "measure2")?;
                    approx_toward_measure(&mu, &nu, epsilon)?
                }
                _ => {
                    return Err(Failure::Input(
                        "give exactly one of --point and --measure2".into(),
                    ))
                }
            };
            measure_to_json(&out.into())
        }
        Command::VerifyCounterexample => counterexample_to_json(&verify_counterexample()?),
        Command::DensityConverge {
            density,
            function,
            grids,
        } => {
            if grids.contains(&0) {
                return Err(Failure::Input("--grid values must be at least 1".into()));
            }
            let d = load("density", &density, |v| {
                DensityMeasure::new(piecewise_from_json(v)?)
            })?;
            let phi = load("function", &function, |v| {
                piecewise_from_json(v).map(ContinuousTestFunction::new)
            })?;
            convergence_to_json(&convergence_report(&d, &phi, &grids)?)
        }
    })
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return Outcome {
                code: 0,
                output: e.to_string(),
            }
        }
        Err(e) => {
            let detail = e.to_string();
            let first = detail
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let first = first.trim_start_matches("error: ");
            return Outcome {
                code: 2,
                output: render(&json!({ "error": first })),
            };
        }
    };
    match execute(cli.command) {
        Ok(v) => Outcome {
            code: 0,
            output: render(&v),
        },
        Err(Failure::Input(msg)) => Outcome {
            code: 2,
            output: render(&json!({ "error": msg })),
        },
    }
}
