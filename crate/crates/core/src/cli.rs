//! Command-line front end.
//!
//! Exit status is 0 on success, 1 when the library reports an error and 2
//! for malformed arguments.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::diagram::{brute_force_matrix_with_limit, diagram_matrix, diagram_matrix_ramped};
use crate::enumeration::{
    bounds, count_by_filter_with_limit, count_configurations, serialize_big, serialize_big_opt,
};
use crate::error::{Error, Result};
use crate::flag::{
    is_flag_matroid_with_limit, reachable_with_limit, realize, FlagBasisFamily, FlagVerdict,
    FlagViolation, OrderedPartition,
};
use crate::lattice::{BinSpec, StepSequence};
use crate::limits;
use crate::matroid::{elements, ExchangeVerdict, Matroid, NestedMatroid};
use crate::selfcheck;

#[derive(Debug, Parser)]
#[command(
    name = "flagpath",
    version,
    about = "Tennis-ball flag matroids and nested matroids"
)]
struct Cli {
    /// Ceiling on brute-force sizes; overrides FLAGPATH_LIMIT.
    #[arg(long, global = true)]
    limit: Option<usize>,
    /// Write the payload here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct SpecArgs {
    /// Bin sizes, comma separated.
    #[arg(long, value_parser = parse_l)]
    l: BinSizes,
    /// Number of turns.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
}

impl SpecArgs {
    fn spec(&self) -> Result<BinSpec> {
        BinSpec::new(self.l.0.clone(), self.n as usize)
    }
}

#[derive(Debug, Clone)]
struct BinSizes(Vec<usize>);

fn parse_l(text: &str) -> std::result::Result<BinSizes, String> {
    let parts: std::result::Result<Vec<usize>, _> =
        text.split(',').map(|p| p.trim().parse::<usize>()).collect();
    match parts {
        Ok(l) if !l.is_empty() && l.iter().all(|&x| x > 0) => Ok(BinSizes(l)),
        _ => Err(format!(
            "expected positive integers separated by commas, got {text:?}"
        )),
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Dp,
    Filter,
    Bfs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    /// Block recursion `A_n = M_{n-1}`.
    Recursion,
    /// Block recursion with cut-off ramps continued.
    Ramped,
    /// Forward and backward feasibility over lattice points.
    Feasibility,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Ascii,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of n-configurations.
    Count {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "dp")]
        method: Method,
        /// Include the multinomial, hook and product bounds.
        #[arg(long)]
        bounds: bool,
    },
    /// Minimum-height matrix of the three-bin diagram.
    Diagram {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(long, value_enum, default_value = "recursion")]
        construction: Construction,
    },
    /// Check the flag-matroid axioms for a family read from JSON.
    Verify {
        /// JSON file with ground_size, flag_rank and flags; `-` for stdin.
        #[arg(long)]
        input: String,
    },
    /// Greedy move schedule producing a target configuration.
    Realize {
        #[command(flatten)]
        spec: SpecArgs,
        /// Blocks as a JSON array of arrays, or @file.
        target: String,
    },
    /// Bases of the nested matroid of an N/E word.
    Bases {
        #[arg(long)]
        path: String,
        /// Print only the number of bases.
        #[arg(long)]
        count: bool,
    },
    /// Bounds report with the exact count.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
        /// Leave out the exact count.
        #[arg(long)]
        no_exact: bool,
    },
    /// Cross-check closed forms against brute force.
    Selfcheck,
}

/// Parses `args` (program name first) and runs the command.
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
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let limit = |default: usize| cli.limit.unwrap_or_else(|| limits::resolve(default));
    let outcome = match &cli.command {
        Command::Selfcheck => {
            let outcomes = selfcheck::run();
            let text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            let ok = outcomes.iter().all(|o| o.passed());
            emit(&cli, out, &text).map(|()| if ok { 0 } else { 1 })
        }
        command => execute(command, &limit).and_then(|text| emit(&cli, out, &text).map(|()| 0)),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

#[derive(Serialize)]
struct CountReport {
    #[serde(serialize_with = "serialize_big")]
    count: BigUint,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(serialize_with = "serialize_big_opt")]
    upper: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower_hook: Option<Option<HookValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(serialize_with = "serialize_big_opt")]
    lower_product: Option<BigUint>,
}

#[derive(Serialize)]
#[serde(transparent)]
struct HookValue(#[serde(serialize_with = "serialize_big")] BigUint);

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("plain data");
    text.push('\n');
    text
}

fn execute(command: &Command, limit: &dyn Fn(usize) -> usize) -> Result<String> {
    match command {
        Command::Count {
            spec,
            method,
            bounds: with_bounds,
        } => {
            let spec = spec.spec()?;
            let count = match method {
                Method::Dp => count_configurations(&spec),
                Method::Filter => count_by_filter_with_limit(&spec, limit(limits::EXPLICIT_BALLS))?,
                Method::Bfs => BigUint::from(
                    reachable_with_limit(&spec, limit(limits::REACHABLE_BALLS))?
                        .family
                        .len(),
                ),
            };
            let mut report = CountReport {
                count,
                upper: None,
                lower_hook: None,
                lower_product: None,
            };
            if *with_bounds {
                let b = bounds(&spec, false);
                report.upper = Some(b.upper_multinomial);
                report.lower_hook = Some(b.lower_hook.map(HookValue));
                report.lower_product = Some(b.lower_product);
            }
            Ok(to_json(&report))
        }
        Command::Diagram {
            spec,
            format,
            construction,
        } => {
            let spec = spec.spec()?;
            let l: [usize; 3] = spec.l().try_into().map_err(|_| Error::DimensionMismatch {
                expected: 3,
                found: spec.k(),
            })?;
            let d = match construction {
                Construction::Recursion => diagram_matrix(l, spec.n())?,
                Construction::Ramped => diagram_matrix_ramped(l, spec.n())?,
                Construction::Feasibility => {
                    brute_force_matrix_with_limit(&spec, limit(limits::DIAGRAM_BALLS))?
                }
            };
            Ok(match format {
                Format::Json => format!("{}\n", d.to_json()),
                Format::Csv => d.to_csv(),
                Format::Ascii => d.to_ascii(),
            })
        }
        Command::Verify { input } => {
            let text = if input == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Io(e.to_string()))?
            } else {
                read_file(input)?
            };
            let family: FlagBasisFamily =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let verdict = is_flag_matroid_with_limit(&family, limit(limits::BRUTE_FORCE_GROUND))?;
            Ok(to_json(&verdict_json(&verdict)))
        }
        Command::Realize { spec, target } => {
            let spec = spec.spec()?;
            let text = match target.strip_prefix('@') {
                Some(path) => read_file(path)?,
                None => target.clone(),
            };
            let target: OrderedPartition =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(to_json(&realize(&spec, &target)?))
        }
        Command::Bases { path, count } => {
            let path = StepSequence::parse(path, Some(2))?;
            let m = NestedMatroid::from_path(&path)?;
            if *count {
                return Ok(to_json(&CountReport {
                    count: m.basis_count(),
                    upper: None,
                    lower_hook: None,
                    lower_product: None,
                }));
            }
            limits::check(m.ground_size(), limit(limits::EXPLICIT_BALLS))?;
            let bases: Vec<Vec<usize>> = m.bases()?.into_iter().map(elements).collect();
            Ok(to_json(&json!({
                "ground_size": m.ground_size(),
                "rank": m.full_rank(),
                "bases": bases,
            })))
        }
        Command::Bounds { spec, no_exact } => Ok(to_json(&bounds(&spec.spec()?, !no_exact))),
        Command::Selfcheck => unreachable!("handled by run"),
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn verdict_json(verdict: &FlagVerdict) -> serde_json::Value {
    match verdict {
        FlagVerdict::Ok(flag) => json!({
            "ok": true,
            "constituent_ranks": flag.constituents.iter().map(|m| m.full_rank()).collect::<Vec<_>>(),
            "constituent_bases": flag.constituents.iter().map(|m| m.bases().len()).collect::<Vec<_>>(),
        }),
        FlagVerdict::Violation(v) => {
            let detail = match v {
                FlagViolation::F1 { index, witness } => {
                    let mut d = json!({"axiom": "F1", "index": index});
                    match witness {
                        ExchangeVerdict::Unequal { first, second } => {
                            d["first"] = json!(first);
                            d["second"] = json!(second);
                        }
                        ExchangeVerdict::NoExchange { first, second, x } => {
                            d["first"] = json!(first);
                            d["second"] = json!(second);
                            d["x"] = json!(x);
                        }
                        ExchangeVerdict::Ok => {}
                    }
                    d
                }
                FlagViolation::F2 { index, flat } => {
                    json!({"axiom": "F2", "index": index, "flat": flat})
                }
                FlagViolation::F3 { missing } => json!({"axiom": "F3", "missing": missing}),
            };
            json!({"ok": false, "violation": detail, "message": v.to_string()})
        }
    }
}
