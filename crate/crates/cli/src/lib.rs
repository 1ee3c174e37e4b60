//! `rhocheck`: check single pairs, run preset scans, run the volume
//! experiments and recheck serialized evidence.
//!
//! Exit codes: 0 success, 1 verification or scan mismatch, 2 input error,
//! 3 domain error. Temperedness itself is reported in the JSON payload.

mod args;
pub mod spec;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rho_core::temper::{check_with, run_scan, ScanFamily};
use rho_core::verify::{recheck_certificate, recheck_witness, CheckOptions, Evidence};
use rho_core::wire::{from_json, to_json, EvidenceDoc, EvidenceFile, VerdictDoc, WitnessDoc, SCHEMA_VERSION};
use rho_core::Error;
use rho_volume::{translate_suite, verify_decay, DecayOptions, SplitMatrix, VolumeError};

pub use spec::{FamilyDoc, SpecFile, TorusChoice};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rhocheck", version, about = "Decide temperedness of L^2(G/H) from restricted weights")]
pub struct Cli {
    /// Worker threads for scans and sampling (default: all cores).
    #[arg(long, global = true, env = "RHOCHECK_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide one pair given by a spec file; prints the verdict as JSON.
    Check {
        spec: PathBuf,
        /// Print only the witness (null when tempered).
        #[arg(long)]
        witness_only: bool,
        /// Search only a fundamental domain of the detected coordinate symmetries.
        #[arg(long)]
        dominant_chamber: bool,
    },
    /// Print the weight data of a spec file as a raw pair spec file.
    Pair { spec: PathBuf },
    /// Run a preset family against its closed-form predicate.
    Scan(ScanArgs),
    /// Monte Carlo volume experiments.
    #[command(subcommand)]
    Volume(VolumeCommand),
    /// Re-evaluate a certificate or witness (an evidence file or a verdict).
    Recheck { evidence: PathBuf },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// table1, table2, example51, example52-sl, example52-sp, example52-so, prop59
    pub family: String,
    #[arg(long, default_value_t = 6)]
    pub pmax: usize,
    #[arg(long, default_value_t = 6)]
    pub qmax: usize,
    /// Bound on p, q, r for table2.
    #[arg(long, default_value_t = 4)]
    pub max: usize,
    /// n for the partition families and prop59.
    #[arg(long)]
    pub n: Option<usize>,
    /// Bound on p + q for example52-so and on p + q in example51.
    #[arg(long, default_value_t = 6)]
    pub total_max: usize,
    /// Bound on m for sp(m) in sl(2m) (example51).
    #[arg(long, default_value_t = 3)]
    pub max_m: usize,
    /// Bound on the factor ranks of the complex pairs (example51).
    #[arg(long, default_value_t = 4)]
    pub max_rank: usize,
    /// Enumerate every chamber instead of a symmetry-reduced region.
    #[arg(long)]
    pub full_enumeration: bool,
    #[arg(long, value_enum, default_value_t = ScanFormat::Both)]
    pub format: ScanFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ScanFormat {
    Table,
    Json,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum VolumeCommand {
    /// Fit the decay rate of vol(e^{tA} C ∩ C) and compare with -rho(A).
    Decay {
        /// `diag(a,b,...)` or a JSON array of rows.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// box<d> or ball<d>
        #[arg(long)]
        body: String,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long, default_value_t = 3.0)]
        t_max: f64,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        tolerance: f64,
        /// Also write `t log-volume stderr` rows to this file.
        #[arg(long)]
        gnuplot: Option<PathBuf>,
    },
    /// Random symmetric polytopes B, B' and shifts v: vol((B+v) ∩ B') <= vol(B ∩ B').
    Translate {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

/// What a command printed and how it wants to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Malformed(_) | Error::UnknownFamily(_) => EXIT_INPUT,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<VolumeError> for Failure {
    fn from(e: VolumeError) -> Self {
        let code = match e {
            VolumeError::InvalidParameters(_) | VolumeError::DimensionMismatch(_) | VolumeError::InvalidBody(_) => {
                EXIT_INPUT
            }
            VolumeError::TooFewHits { .. } => {
                return Failure {
                    code: EXIT_DOMAIN,
                    message: format!("{e}; shrink the t range"),
                }
            }
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Output, Failure>;

fn ok(stdout: String) -> CmdResult {
    Ok(Output { code: EXIT_OK, stdout })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

pub fn run(cli: Cli) -> CmdResult {
    if let Some(n) = cli.threads {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Check {
            spec,
            witness_only,
            dominant_chamber,
        } => cmd_check(&read(&spec)?, witness_only, dominant_chamber),
        Command::Pair { spec } => cmd_pair(&read(&spec)?),
        Command::Scan(args) => cmd_scan(&args),
        Command::Volume(v) => cmd_volume(v),
        Command::Recheck { evidence } => cmd_recheck(&read(&evidence)?),
    }
}

pub fn load_spec(text: &str) -> Result<SpecFile, Failure> {
    let spec: SpecFile = from_json(text)?;
    spec.validate()?;
    Ok(spec)
}

pub fn cmd_check(text: &str, witness_only: bool, dominant_chamber: bool) -> CmdResult {
    let pair = load_spec(text)?.build()?;
    let options = CheckOptions {
        dominant_chamber,
        ..CheckOptions::full()
    };
    let verdict = check_with(&pair, options)?;
    if witness_only {
        return ok(match &verdict.evidence {
            Evidence::Witness(w) => to_json(&WitnessDoc::from_witness(w)),
            Evidence::Certificate(_) => "null".to_string(),
        } + "\n");
    }
    ok(to_json(&VerdictDoc::from_verdict(&verdict)) + "\n")
}

pub fn cmd_pair(text: &str) -> CmdResult {
    let pair = load_spec(text)?.build()?;
    ok(to_json(&SpecFile::from_pair(&pair)) + "\n")
}

fn scan_family(args: &ScanArgs) -> Result<ScanFamily, Failure> {
    Ok(match args.family.as_str() {
        "table1" => ScanFamily::Table1 {
            pmax: args.pmax,
            qmax: args.qmax,
        },
        "table2" => ScanFamily::Table2 { max: args.max },
        "example52-sl" => ScanFamily::Example52Sl { n: args.n.unwrap_or(8) },
        "example52-sp" => ScanFamily::Example52Sp { n: args.n.unwrap_or(4) },
        "example52-so" => ScanFamily::Example52So {
            total_max: args.total_max,
        },
        "example51" => ScanFamily::Example51 {
            max_total: args.total_max,
            max_m: args.max_m,
            max_rank: args.max_rank,
        },
        "prop59" => ScanFamily::Prop59 { n: args.n.unwrap_or(8) },
        other => return Err(Error::UnknownFamily(other.to_string()).into()),
    })
}

pub fn cmd_scan(args: &ScanArgs) -> CmdResult {
    let family = scan_family(args)?;
    let options = if args.full_enumeration {
        CheckOptions::full()
    } else {
        CheckOptions::reduced()
    };
    let report = run_scan(family, options)?;
    let mut out = String::new();
    if args.format != ScanFormat::Json {
        out.push_str(&report.render_text());
        out.push('\n');
    }
    if args.format != ScanFormat::Table {
        out.push_str(&to_json(&report));
        out.push('\n');
    }
    let code = if report.mismatches.is_empty() { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Output { code, stdout: out })
}

#[derive(Serialize)]
struct TranslateSummary {
    dim: usize,
    trials: usize,
    passes: usize,
    failures: Vec<rho_volume::TranslateCheck>,
}

pub fn cmd_volume(cmd: VolumeCommand) -> CmdResult {
    match cmd {
        VolumeCommand::Decay {
            matrix,
            body,
            t_min,
            t_max,
            points,
            samples,
            seed,
            tolerance,
            gnuplot,
        } => {
            let m = args::parse_matrix(&matrix).map_err(Failure::input)?;
            let body = args::parse_body(&body).map_err(Failure::input)?;
            let a = SplitMatrix::new(m)?;
            let opts = DecayOptions {
                t_min,
                t_max,
                points,
                samples,
                seed,
                tolerance,
            };
            let fit = verify_decay(&a, &body, &opts)?;
            if let Some(path) = gnuplot {
                std::fs::write(&path, fit.gnuplot_data())
                    .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            }
            let code = if fit.pass { EXIT_OK } else { EXIT_MISMATCH };
            Ok(Output {
                code,
                stdout: to_json(&fit) + "\n",
            })
        }
        VolumeCommand::Translate {
            dim,
            trials,
            samples,
            seed,
        } => {
            let report = translate_suite(dim, trials, samples, seed)?;
            let summary = TranslateSummary {
                dim,
                trials,
                passes: report.passes,
                failures: report.checks.into_iter().filter(|c| !c.pass).collect(),
            };
            let code = if summary.failures.is_empty() { EXIT_OK } else { EXIT_MISMATCH };
            Ok(Output {
                code,
                stdout: to_json(&summary) + "\n",
            })
        }
    }
}

#[derive(Debug, Serialize)]
struct RecheckReport {
    consistent: bool,
    kind: &'static str,
    tempered: bool,
}

/// Accepts an evidence file or a full verdict document. Evaluation only:
/// nothing is re-enumerated.
pub fn cmd_recheck(text: &str) -> CmdResult {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure::input(format!("invalid JSON: {e}")))?;
    let (evidence, claimed): (EvidenceDoc, Option<bool>) = if value.get("tempered").is_some() {
        let v: VerdictDoc = from_json(text)?;
        if v.schema_version != SCHEMA_VERSION {
            return Err(Failure::input(format!("unsupported schema_version {}", v.schema_version)));
        }
        (v.evidence, Some(v.tempered))
    } else {
        let f: EvidenceFile = from_json(text)?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(Failure::input(format!("unsupported schema_version {}", f.schema_version)));
        }
        (f.evidence, None)
    };
    let evidence = evidence.to_evidence()?;
    let (kind, tempered) = match &evidence {
        Evidence::Certificate(c) => {
            recheck_certificate(c).map_err(|e| Failure::mismatch(format!("certificate rejected: {e}")))?;
            ("certificate", true)
        }
        Evidence::Witness(w) => {
            recheck_witness(w).map_err(|e| Failure::mismatch(format!("witness rejected: {e}")))?;
            ("witness", false)
        }
    };
    if claimed.is_some_and(|t| t != tempered) {
        return Err(Failure::mismatch("verdict disagrees with its evidence"));
    }
    ok(to_json(&RecheckReport {
        consistent: true,
        kind,
        tempered,
    }) + "\n")
}

/// Serializes evidence as a standalone file for `recheck`.
pub fn evidence_file(evidence: &Evidence) -> String {
    to_json(&EvidenceFile {
        schema_version: SCHEMA_VERSION,
        evidence: EvidenceDoc::from_evidence(evidence),
    })
}
