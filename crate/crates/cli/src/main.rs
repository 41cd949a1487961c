use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qci_cli::jobs::{self, EzdMode, Report};
use qci_cli::paper;
use qci_core::monomial::MonomialOrder;

/// Exact-arithmetic commutative algebra: artinian quotients, Koszul
/// homology, quasi-complete-intersection certificates, exact zero-divisor
/// searches, and the generic-quadrics experiments.
#[derive(Parser)]
#[command(name = "qci", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Monomial order: grevlex or lex
    #[arg(long, default_value = "grevlex", global = true)]
    order: String,
    /// Emit a structured JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Exit with code 1 when the mathematical outcome is negative
    #[arg(long, global = true)]
    assert: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert series of the ring (and of R/I with --ideal)
    Hilbert {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced Groebner basis, staircase, and standard monomials
    Gb {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: Common,
    },
    /// Koszul homology of the sequence generating --ideal
    Koszul {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        common: Common,
    },
    /// Quasi-complete-intersection certificate or refutation
    Qci {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        common: Common,
    },
    /// Exact zero-divisor search (enumerative and/or symbolic)
    Ezd {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: Option<String>,
        /// Candidate degree bound for enumeration
        #[arg(long, default_value_t = 2)]
        deg_bound: u32,
        /// Search mode: enumerate, symbolic, or both
        #[arg(long, default_value = "both")]
        mode: String,
        #[command(flatten)]
        common: Common,
    },
    /// Quadratic dual dimensions and degree-2 commutant
    Dual {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal free resolution betti table of R/I (default: of k)
    Resolve {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 5)]
        hd_bound: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Betti numbers of R over its polynomial ambient
    BettiAmbient {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded generic-quadrics experiment
    Quadrics {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 101)]
        prime: u64,
        #[arg(long, default_value_t = 25)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Witness-matrix primality check I_3(W_n)
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 101)]
        prime: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Run the pinned regression ledger and print pass/fail per criterion
    Paper {
        #[arg(long, default_value_t = 101)]
        prime: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_order(name: &str) -> Result<MonomialOrder, String> {
    match name {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(format!("unknown order `{other}` (expected grevlex or lex)")),
    }
}

fn emit(report: &Report, common: &Common) -> ExitCode {
    if common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report.json).expect("serializable")
        );
    } else {
        print!("{}", report.text);
    }
    if report.inconsistent {
        ExitCode::from(3)
    } else if report.negative && common.assert {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run() -> Result<ExitCode, (String, u8)> {
    let cli = Cli::parse();
    let input_err = |e: anyhow::Error| (format!("{e}"), 2u8);
    match cli.command {
        Command::Hilbert {
            ring,
            ideal,
            common,
        } => {
            let order = parse_order(&common.order).map_err(|e| (e, 2))?;
            let r = jobs::run_command(
                "hilbert",
                Some(&ring),
                ideal.as_deref(),
                order,
                2,
                5,
                EzdMode::Both,
            )
            .map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Gb { ring, common } => {
            let order = parse_order(&common.order).map_err(|e| (e, 2))?;
            let r = jobs::run_command("gb", Some(&ring), None, order, 2, 5, EzdMode::Both)
                .map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Koszul {
            ring,
            ideal,
            common,
        } => {
            let order = parse_order(&common.order).map_err(|e| (e, 2))?;
            let r = jobs::run_command(
                "koszul",
                Some(&ring),
                Some(&ideal),
                order,
                2,
                5,
                EzdMode::Both,
            )
            .map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Qci {
            ring,
            ideal,
            common,
        } => {
            let order = parse_order(&common.order).map_err(|e| (e, 2))?;
            let r = jobs::run_command("qci", Some(&ring), Some(&ideal), order, 2, 5, EzdMode::Both)
                .map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Ezd {
            ring,
            ideal,
            deg_bound,
            mode,
            common,
        } => {
            let order = parse_order(&common.order).map_err(|e| (e, 2))?;
            let mode = match mode.as_str() {
                "enumerate" => EzdMode::Enumerate,
                "symbolic" => EzdMode::Symbolic,
                "both" => EzdMode::Both,
                other => return Err((format!("unknown mode `{other}`"), 2)),
            };
            let r = jobs::run_command(
                "ezd",
                Some(&ring),
                ideal.as_deref(),
                order,
                deg_bound,
                5,
                mode,
            )
            .map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Dual { ring, common } => {
            let order = parse_order(&common.order).map_err(|e| (e, 2))?;
            let r = jobs::run_command("dual", Some(&ring), None, order, 2, 5, EzdMode::Both)
                .map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Resolve {
            ring,
            ideal,
            hd_bound,
            common,
        } => {
            let order = parse_order(&common.order).map_err(|e| (e, 2))?;
            let r = jobs::run_command(
                "resolve",
                Some(&ring),
                ideal.as_deref(),
                order,
                2,
                hd_bound,
                EzdMode::Both,
            )
            .map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::BettiAmbient { ring, common } => {
            let order = parse_order(&common.order).map_err(|e| (e, 2))?;
            let r = jobs::run_command(
                "betti-ambient",
                Some(&ring),
                None,
                order,
                2,
                5,
                EzdMode::Both,
            )
            .map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Quadrics {
            n,
            prime,
            trials,
            seed,
            common,
        } => {
            let r = jobs::quadrics_report(n, prime, trials, seed).map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Witness { n, prime, common } => {
            let r = jobs::witness_report(n, prime).map_err(input_err)?;
            Ok(emit(&r, &common))
        }
        Command::Paper {
            prime,
            seed,
            common,
        } => {
            let results = paper::run_paper(prime, seed);
            if common.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&paper::ledger_json(&results, prime, seed))
                        .expect("serializable")
                );
            } else {
                print!("{}", paper::ledger_text(&results));
            }
            if results.iter().all(|r| r.passed) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err((message, code)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
