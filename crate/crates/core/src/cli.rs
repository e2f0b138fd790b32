//! The `lnec` command-line front end.
//!
//! Exit status: 0 on success, 1 when a construction or decoding attempt
//! fails (field too small, ambiguous or undecodable word), 2 on invalid input.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{code_report, render_reports};
use crate::codec::{self, ErrorVector, MessageVector, Outcome};
use crate::construct::{auto_field, construct_code, BetaSpec, Code, ConstructError};
use crate::galois::Field;
use crate::generators;
use crate::netgraph::{parse_network, Network};
use crate::patterns::{family_sizes, FamilySizes};
use crate::randomcode::{
    estimate_failures, field_size_recommendation, FieldRecommendation, TrialConfig,
};

#[derive(Debug, Parser)]
#[command(
    name = "lnec",
    version,
    about = "Linear network error-correction codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NetworkKind {
    Combination,
    G1,
    G2,
    G3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a standard network document.
    Gen {
        kind: NetworkKind,
        /// Number of relays (combination only).
        #[arg(long, short = 'n')]
        n: Option<usize>,
        /// Relays per sink (combination only).
        #[arg(long, short = 'k')]
        k: Option<usize>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Capacities, redundancies, pattern counts and field-size bounds.
    Analyze {
        network: PathBuf,
        #[arg(long)]
        rate: usize,
        /// Uniform value, `max`, or `t1=2,t2=1`.
        #[arg(long, default_value = "max")]
        beta: String,
        /// Also report the field size needed for degradation at most this.
        #[arg(long)]
        degradation: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build a code with minimum distance at least beta + 1 at every sink.
    Construct {
        network: PathBuf,
        #[arg(long)]
        rate: usize,
        #[arg(long, default_value = "max")]
        beta: String,
        /// A prime, or `auto`.
        #[arg(long, default_value = "auto")]
        field: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Per-sink regularity, minimum distance and MDS verdict of a code file.
    Verify {
        code: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo failure rates of random codes against their bounds.
    Random {
        network: PathBuf,
        #[arg(long)]
        rate: usize,
        #[arg(long)]
        field: u64,
        #[arg(long, default_value = "max")]
        beta: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Encode a message, inject errors and decode at every sink.
    Simulate {
        code: PathBuf,
        /// Comma-separated message symbols.
        #[arg(long)]
        message: String,
        /// Explicit errors, `channel=value,...`.
        #[arg(long, conflicts_with = "pattern")]
        errors: Option<String>,
        /// Channels receiving random nonzero errors.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Failed(m) => m,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_network(path: &Path) -> Result<Network, CliError> {
    parse_network(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<Code, CliError> {
    Code::from_json(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => {
            fs::write(p, format!("{text}\n")).map_err(|e| invalid(format!("{}: {e}", p.display())))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn construct_failure(e: ConstructError) -> CliError {
    match e {
        ConstructError::FieldTooSmall { .. } => CliError::Failed(e.to_string()),
        other => invalid(other),
    }
}

fn betas(net: &Network, rate: usize, spec: &str) -> Result<Vec<usize>, CliError> {
    BetaSpec::parse(spec)
        .and_then(|b| b.resolve(net, rate))
        .map_err(invalid)
}

#[derive(Serialize)]
struct AnalyzeReport {
    sinks: Vec<AnalyzeSink>,
    patterns: FamilySizes,
    recommendation: Option<FieldRecommendation>,
}

#[derive(Serialize)]
struct AnalyzeSink {
    sink: String,
    capacity: usize,
    redundancy: usize,
    connective: usize,
}

fn parse_symbols(field: Field, s: &str) -> Result<Vec<crate::galois::Scalar>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let v: u64 = p
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad symbol `{p}`")))?;
            field
                .checked_elem(v)
                .ok_or_else(|| invalid(format!("symbol {v} is not a residue of {field}")))
        })
        .collect()
}

/// Runs one parsed command.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { kind, n, k, output } => {
            let doc = match kind {
                NetworkKind::Combination => {
                    let (n, k) = n
                        .zip(k)
                        .ok_or_else(|| invalid("combination needs -n and -k"))?;
                    generators::combination_document(n, k).map_err(invalid)?
                }
                NetworkKind::G1 => generators::g1_document(),
                NetworkKind::G2 => generators::g2_document(),
                NetworkKind::G3 => generators::g3_document(),
            };
            emit(output.as_deref(), &doc.to_json())
        }
        Command::Analyze {
            network,
            rate,
            beta,
            degradation,
            json,
        } => {
            let net = load_network(&network)?;
            let betas = betas(&net, rate, &beta)?;
            let patterns = family_sizes(&net, rate, &betas).map_err(invalid)?;
            let recommendation = degradation
                .map(|d| field_size_recommendation(&net, rate, d))
                .transpose()
                .map_err(invalid)?;
            let sinks = net
                .sinks()
                .iter()
                .map(|&t| {
                    let capacity = net.sink_capacity(t);
                    AnalyzeSink {
                        sink: net.node_name(t).to_string(),
                        capacity,
                        redundancy: capacity - rate,
                        connective: net.connective_set(t).len(),
                    }
                })
                .collect::<Vec<_>>();
            let report = AnalyzeReport {
                sinks,
                patterns,
                recommendation,
            };
            if json {
                return emit(
                    None,
                    &serde_json::to_string_pretty(&report).expect("serializable"),
                );
            }
            println!(
                "{net}, rate {rate}, {} internal nodes",
                net.internal_node_count()
            );
            println!(
                "{:<6}  {:>3}  {:>5}  {:>5}",
                "sink", "C_t", "delta", "|E_t|"
            );
            for s in &report.sinks {
                println!(
                    "{:<6}  {:>3}  {:>5}  {:>5}",
                    s.sink, s.capacity, s.redundancy, s.connective
                );
            }
            println!("{}", report.patterns);
            if let Some(r) = &report.recommendation {
                println!(
                    "degradation {}: branches {:.4} and {:.4}, minimum {:.4}, prime {}",
                    r.degradation, r.first_branch, r.second_branch, r.minimum, r.prime
                );
            }
            Ok(())
        }
        Command::Construct {
            network,
            rate,
            beta,
            field,
            output,
        } => {
            let net = load_network(&network)?;
            let betas = betas(&net, rate, &beta)?;
            let field = if field == "auto" {
                auto_field(&net, &betas).map_err(invalid)?
            } else {
                let q: u64 = field
                    .parse()
                    .map_err(|_| invalid(format!("bad field `{field}`")))?;
                Field::new(q).map_err(invalid)?
            };
            let code = construct_code(&net, rate, &betas, field).map_err(construct_failure)?;
            emit(output.as_deref(), &code.to_json())
        }
        Command::Verify { code, json } => {
            let code = load_code(&code)?;
            let reports = code_report(&code);
            if json {
                emit(
                    None,
                    &serde_json::to_string_pretty(&reports).expect("serializable"),
                )
            } else {
                print!("{}", render_reports(&reports));
                Ok(())
            }
        }
        Command::Random {
            network,
            rate,
            field,
            beta,
            trials,
            seed,
            json,
        } => {
            let net = load_network(&network)?;
            let betas = betas(&net, rate, &beta)?;
            let field = Field::new(field).map_err(invalid)?;
            let cfg = TrialConfig {
                network: net,
                rate,
                field,
                betas,
                trials,
                seed,
            };
            let report = estimate_failures(&cfg).map_err(invalid)?;
            if json {
                emit(None, &report.to_json())
            } else {
                print!("{report}");
                Ok(())
            }
        }
        Command::Simulate {
            code,
            message,
            errors,
            pattern,
            seed,
        } => {
            let code = load_code(&code)?;
            let x = MessageVector(parse_symbols(code.field, &message)?);
            let verdicts = if let Some(p) = pattern {
                let ids: Vec<&str> = p
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect();
                let rho = code.network.pattern(&ids).map_err(invalid)?;
                codec::roundtrip(&code, &x, &rho, seed).map_err(invalid)?
            } else {
                let mut z = ErrorVector::zero(&code);
                for part in errors
                    .iter()
                    .flat_map(|s| s.split(','))
                    .filter(|s| !s.trim().is_empty())
                {
                    let (id, v) = part.split_once('=').ok_or_else(|| {
                        invalid(format!("bad error `{part}`, expected channel=value"))
                    })?;
                    let e = code.network.channel_by_id(id.trim()).map_err(invalid)?;
                    z.0[e] = parse_symbols(code.field, v)?
                        .first()
                        .copied()
                        .ok_or_else(|| invalid(format!("bad error `{part}`")))?;
                }
                codec::simulate(&code, &x, &z).map_err(invalid)?
            };
            emit(
                None,
                &serde_json::to_string_pretty(&verdicts).expect("serializable"),
            )?;
            let failed: Vec<&str> = verdicts
                .iter()
                .filter(|v| v.outcome != Outcome::Decoded)
                .map(|v| v.sink.as_str())
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failed(format!(
                    "decoding failed at {}",
                    failed.join(", ")
                )))
            }
        }
    }
}

/// Parses arguments, runs, and reports errors on standard error.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
