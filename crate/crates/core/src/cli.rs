//! Command-line driver. Every subcommand prints one JSON report on standard
//! output; the exit status is 0 when all checks pass, 1 when a check fails
//! and 2 when the input cannot be parsed or validated.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::monad_law_suite;
use crate::duality::roundtrip;
use crate::effect::{
    law_suite, make_effects, make_planted_bug, make_powerset, make_projections, make_unit_interval,
    DEFAULT_SAMPLES,
};
use crate::error::{Error, Result};
use crate::free::{iso_roundtrip, Which};
use crate::laws::LawReport;
use crate::linalg::{ComplexMatrix, DEFAULT_TOL};
use crate::operators::{classify, OperatorKind};
use crate::wp::{duality_residual, wp, Channel};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qduality", version, about = "Hilbert-Schmidt dualities, effect algebras and weakest preconditions")]
pub struct Cli {
    /// Numerical tolerance for membership and equality tests.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL, value_parser = positive_f64)]
    pub tol: f64,

    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Pretty-print the JSON report and write a one-line summary to stderr.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an operator read from a matrix JSON file (`-` for stdin).
    Classify {
        input: PathBuf,
        /// Fail unless the operator belongs to this family.
        #[arg(long)]
        expect: Option<OperatorKind>,
    },
    /// Round-trip seeded operators through hs and its inverse.
    DualityRoundtrip {
        #[arg(long)]
        kind: OperatorKind,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// Probe operators for the functional-side residual.
        #[arg(long, default_value_t = 50)]
        probes: usize,
        #[arg(long, default_value_t = 1e-8, value_parser = positive_f64)]
        threshold: f64,
    },
    /// Run an algebraic law suite.
    Laws {
        #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
        instance: Option<Instance>,
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Round trips of the free-construction isomorphisms.
    FreeIso {
        #[arg(long)]
        which: Which,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 1e-8, value_parser = positive_f64)]
        threshold: f64,
    },
    /// Weakest precondition of an effect under a channel.
    Wp {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        effect: PathBuf,
        /// Number of sampled densities for the duality residual.
        #[arg(long, default_value_t = 20)]
        check_duality: usize,
        #[arg(long, default_value_t = 1e-8, value_parser = positive_f64)]
        threshold: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Instance {
    Interval,
    Powerset,
    Effects,
    Projections,
    PlantedBug,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Monad,
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// A finished run: the report to print and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub report: Value,
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn law_outcome(report: LawReport) -> Outcome {
    Outcome {
        pass: report.pass,
        report: to_value(&report),
    }
}

/// Executes a parsed command. Errors are input or validation failures.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol;
    let seed = cli.seed;
    match &cli.command {
        Command::Classify { input, expect } => {
            let a: ComplexMatrix = parse_json(input)?;
            let r = classify(&a, tol);
            let pass = expect.is_none_or(|k| r.contains(k));
            Ok(Outcome {
                pass,
                report: json!({
                    "command": "classify",
                    "dim": a.dim(),
                    "tol": tol,
                    "kinds": r.kinds(),
                    "eigenvalues": r.eigenvalues,
                    "expect": expect,
                    "pass": pass,
                }),
            })
        }
        Command::DualityRoundtrip { kind, dim, seeds, probes, threshold } => {
            if kind.dual_domain().is_none() {
                return Err(Error::NotDualizable(*kind));
            }
            let dim = *dim as usize;
            let mut worst = (0.0f64, seed, 0.0f64, 0.0f64);
            for s in seed..seed.saturating_add(*seeds) {
                let r = roundtrip(*kind, dim, s, *probes, tol)?;
                if r.max() > worst.0 || s == seed {
                    worst = (r.max(), s, r.operator, r.functional);
                }
            }
            let pass = worst.0 <= *threshold;
            let mut report = json!({
                "command": "duality-roundtrip",
                "kind": kind,
                "dim": dim,
                "seed": seed,
                "seeds": seeds,
                "probes": probes,
                "tol": tol,
                "threshold": threshold,
                "max_residual": worst.0,
                "worst_seed": worst.1,
                "operator_residual": worst.2,
                "functional_residual": worst.3,
                "pass": pass,
            });
            if !pass {
                let a = crate::sampling::sample(*kind, dim, worst.1);
                report["counterexample"] = json!({ "seed": worst.1, "operator": a });
            }
            Ok(Outcome { pass, report })
        }
        Command::Laws { instance, suite, dim, samples } => {
            let dim = *dim as usize;
            match (instance, suite) {
                (_, Some(Suite::Monad)) => Ok(law_outcome(monad_law_suite())),
                (Some(inst), None) => Ok(law_outcome(match inst {
                    Instance::Interval => law_suite(&make_unit_interval(), *samples, seed, 0.0),
                    Instance::PlantedBug => law_suite(&make_planted_bug(), *samples, seed, 0.0),
                    Instance::Powerset => {
                        if dim > 16 {
                            return Err(Error::Parse("powerset universe limited to 16 points".into()));
                        }
                        law_suite(&make_powerset(dim as u32), *samples, seed, 0.0)
                    }
                    Instance::Effects => law_suite(&make_effects(dim, tol), *samples, seed, tol),
                    Instance::Projections => law_suite(&make_projections(dim, tol), *samples, seed, tol),
                })),
                (None, None) => Err(Error::Parse("one of --instance or --suite is required".into())),
            }
        }
        Command::FreeIso { which, dim, seeds, threshold } => {
            let dim = *dim as usize;
            let mut worst: Option<(u64, crate::free::IsoResidual)> = None;
            for s in seed..seed.saturating_add(*seeds) {
                let r = iso_roundtrip(*which, dim, s, tol)?;
                if worst.is_none_or(|(_, w)| r.max() > w.max()) {
                    worst = Some((s, r));
                }
            }
            let (worst_seed, w) = worst.map_or((seed, None), |(s, r)| (s, Some(r)));
            let max = w.map_or(0.0, |r| r.max());
            let pass = max <= *threshold;
            Ok(Outcome {
                pass,
                report: json!({
                    "command": "free-iso",
                    "which": which,
                    "dim": dim,
                    "seed": seed,
                    "seeds": seeds,
                    "tol": tol,
                    "threshold": threshold,
                    "max_residual": max,
                    "worst_seed": worst_seed,
                    "residuals": w,
                    "pass": pass,
                }),
            })
        }
        Command::Wp { channel, effect, check_duality, threshold } => {
            let f: Channel = parse_json(channel)?;
            f.validate(tol)?;
            let a: ComplexMatrix = parse_json(effect)?;
            let w = wp(&f, &a, tol)?;
            let residual = duality_residual(&f, &a, &w, *check_duality, seed)?;
            let pass = residual <= *threshold;
            Ok(Outcome {
                pass,
                report: json!({
                    "command": "wp",
                    "seed": seed,
                    "tol": tol,
                    "probes": check_duality,
                    "threshold": threshold,
                    "wp": w,
                    "duality_residual": residual,
                    "pass": pass,
                }),
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::DualityRoundtrip { .. } => "duality-roundtrip",
        Command::Laws { .. } => "laws",
        Command::FreeIso { .. } => "free-iso",
        Command::Wp { .. } => "wp",
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    s.unwrap_or_else(|_| "null".into())
}

/// Parses `args`, runs the command and writes the report. Returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let name = command_name(&cli.command);
    let (code, report) = match execute(&cli) {
        Ok(o) => (if o.pass { EXIT_PASS } else { EXIT_FAIL }, o.report),
        Err(e) => {
            let _ = writeln!(err, "qduality {name}: {e}");
            let report = json!({
                "command": name,
                "seed": cli.seed,
                "error": e.to_string(),
                "pass": false,
            });
            (EXIT_INPUT, report)
        }
    };
    let _ = writeln!(out, "{}", render(&report, cli.pretty));
    if cli.pretty {
        let verdict = match code {
            EXIT_PASS => "pass",
            EXIT_FAIL => "FAIL",
            _ => "error",
        };
        let _ = writeln!(err, "{name}: {verdict} (seed {})", cli.seed);
    }
    code
}
