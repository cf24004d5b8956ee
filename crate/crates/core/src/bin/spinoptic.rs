//! Command-line front end: classification, representation audits, the
//! Dirac/Fourier suites, and CR/optical checks, with JSON reports.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 malformed JSON input.

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use spinoptic::audit;
use spinoptic::jsonio::{CrDataJson, RtChartJson, TripleJson, WavesJson};
use spinoptic::report::AuditReport;
use spinoptic::spinor::{build_gamma, paper8_rep};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "spinoptic", version, about = "Exact audits for Clifford, spinor and CR/optical structures")]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sweeps; overrides SPINOPTIC_SEED; default 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Matrix-algebra type of Cl(k,l) on the spinorial clock.
    Classify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    /// Gamma representation and intertwiner audit for one signature.
    Rep {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        /// Named preset instead of the recursive construction.
        #[arg(long)]
        preset: Option<String>,
        /// Run the full identity audit (default prints dimensions only).
        #[arg(long)]
        audit: bool,
    },
    /// Plane-wave current suite for a Lorentzian signature.
    DiracAudit {
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        l: u32,
        /// Explicit wave input (JSON); default runs the random sweep.
        #[arg(long)]
        waves: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
    /// Circle complex structure identities at truncation N.
    FourierJ {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long)]
        audit: bool,
    },
    /// CR frame and section checks (default: Heisenberg examples).
    CrAudit {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Optical metric checks (default: seeded random charts).
    RtAudit {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        rounds: usize,
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
    /// Verify one candidate triple (F, z, w) for the gradient conjecture.
    ConjectureVerify {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Every suite, prefixed ids, one report.
    FullAudit,
}

enum Failure {
    Usage(String),
    BadInput(String),
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::BadInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::BadInput(format!(
            "malformed JSON in {} at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn emit(report: &AuditReport, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli, seed: u64) -> Result<ExitCode, Failure> {
    match cli.cmd {
        Cmd::Classify { k, l } => {
            if k + l > 8 {
                return Err(Failure::Usage(format!(
                    "k + l = {} exceeds the dimension cap 8",
                    k + l
                )));
            }
            if cli.json {
                let v = serde_json::json!({
                    "schema": 1,
                    "k": k,
                    "l": l,
                    "algebra": spinoptic::clock::classify(k, l).to_string(),
                    "hour": spinoptic::clock::hour(k, l),
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            } else {
                println!("{}", audit::classify_line(k, l));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rep { k, l, preset, audit: do_audit } => {
            let preset8 = match preset.as_deref() {
                None => false,
                Some("paper8") => true,
                Some(other) => {
                    return Err(Failure::Usage(format!("unknown preset {other:?}")));
                }
            };
            if !do_audit {
                let rep = if preset8 {
                    paper8_rep()
                } else {
                    build_gamma(k, l).map_err(|e| Failure::Usage(format!("{e}")))?
                };
                println!(
                    "Cl({k},{l}) representation on C^{}, iota = {}",
                    rep.spinor_dim(),
                    spinoptic::scalar::format_gauss(rep.iota())
                );
                return Ok(ExitCode::SUCCESS);
            }
            let report =
                audit::rep_suite(k, l, preset8).map_err(|e| Failure::Usage(format!("{e}")))?;
            Ok(emit(&report, cli.json))
        }
        Cmd::DiracAudit { k, l, waves, rounds } => {
            if l != 1 || (k + l) % 2 != 0 {
                return Err(Failure::Usage(format!(
                    "dirac-audit needs a signature (2n-1, 1); got ({k},{l})"
                )));
            }
            let report = match waves {
                Some(path) => {
                    let spec: WavesJson = read_json(&path)?;
                    let rep = build_gamma(k, l).map_err(|e| Failure::Usage(format!("{e}")))?;
                    let psi = audit::waves_from_json(&rep, &spec)
                        .map_err(|e| Failure::BadInput(format!("{e}")))?;
                    audit::dirac_wave_suite(&rep, &psi, seed)
                }
                None => {
                    if (k, l) != (3, 1) && (k, l) != (7, 1) {
                        return Err(Failure::Usage(
                            "the random sweep runs signatures (3,1) and (7,1)".into(),
                        ));
                    }
                    audit::dirac_suite(seed, rounds)
                }
            };
            Ok(emit(&report, cli.json))
        }
        Cmd::FourierJ { n, audit: _ } => {
            if n == 0 || n > 64 {
                return Err(Failure::Usage("truncation N must be in 1..=64".into()));
            }
            Ok(emit(&audit::fourier_suite(n), cli.json))
        }
        Cmd::CrAudit { file } => {
            let report = match file {
                Some(path) => {
                    let data: CrDataJson = read_json(&path)?;
                    let cr = data
                        .to_cr_data()
                        .map_err(|e| Failure::BadInput(format!("{e}")))?;
                    audit::cr_suite(Some(&cr))
                }
                None => audit::cr_suite(None),
            };
            Ok(emit(&report, cli.json))
        }
        Cmd::RtAudit { file, rounds, points } => {
            let report = match file {
                Some(path) => {
                    let chart: RtChartJson = read_json(&path)?;
                    let parts = chart
                        .to_parts()
                        .map_err(|e| Failure::BadInput(format!("{e}")))?;
                    audit::rt_suite(Some(&parts), seed, rounds, points)
                }
                None => audit::rt_suite(None, seed, rounds, points),
            };
            Ok(emit(&report, cli.json))
        }
        Cmd::ConjectureVerify { file } => {
            let report = match file {
                Some(path) => {
                    let triple: TripleJson = read_json(&path)?;
                    let parts = triple
                        .to_parts()
                        .map_err(|e| Failure::BadInput(format!("{e}")))?;
                    audit::conjecture_suite(Some(&parts))
                }
                None => audit::conjecture_suite(None),
            };
            Ok(emit(&report, cli.json))
        }
        Cmd::FullAudit => Ok(emit(&audit::full_audit(seed), cli.json)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or_else(|| {
        std::env::var("SPINOPTIC_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0)
    });
    match run(cli, seed) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::BadInput(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
