//! `arcval`: order-of-vanishing computations, Hamburger-Noether reports,
//! ideal generators, reparametrization, and the five-set membership
//! verifier, over arc documents in JSON.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use arcval_cli::document::{parse_document, LoadedArc};
use arcval_cli::run::{self, CmdOutput, GridOptions};
use arcval_cli::CmdError;

#[derive(Parser)]
#[command(
    name = "arcval",
    version,
    about = "Arc valuations on affine n-space: orders, blowup centers, desingularization, valuation and jet ideals, reparametrization, and an exhaustive membership verifier"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order of vanishing of a polynomial along an arc.
    Ord {
        arc_file: PathBuf,
        /// Polynomial in x1..xn, e.g. "x1^3 - x2^2".
        poly: String,
        /// Truncate the document to this precision first.
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Desingularize an arc and report depth, iteration orders, and the
    /// expansion series.
    Hne {
        arc_file: PathBuf,
        #[arg(long)]
        precision: Option<usize>,
    },
    /// The sequence of blowup centers of an arc, one chart per step.
    Centers {
        arc_file: PathBuf,
        /// Number of blowups to perform.
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Generators of the valuation ideal and the jet ideal at one level.
    Ideals {
        arc_file: PathBuf,
        /// Ideal level.
        #[arg(short, long, default_value_t = 5)]
        q: usize,
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Decide whether the second arc reparametrizes the first.
    Reparam {
        alpha_file: PathBuf,
        gamma_file: PathBuf,
    },
    /// Exhaustively verify the five-set membership equivalence around an
    /// arc. Exit code 1 signals a disagreement.
    Check {
        alpha_file: PathBuf,
        /// Comma-separated coefficient menu for the candidate grid.
        #[arg(long, default_value = "-1,0,1")]
        coeffs: String,
        /// Candidate support bound: degrees 1..=degree carry coefficients.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Deepest ideal level to test.
        #[arg(long, default_value_t = 5)]
        qmax: usize,
        /// Refuse to enumerate more candidates than this.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u128,
        /// Precision of the enumerated candidates.
        #[arg(long, default_value_t = 16)]
        precision: usize,
    },
    /// Consistency checks for a nonsingular arc: the valuation formula on
    /// random polynomials, contact vs jet-ideal membership on the grid, and
    /// member orders dominating the valuation.
    BaseCase {
        alpha_file: PathBuf,
        /// Number of random polynomials to sample.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value = "-1,0,1")]
        coeffs: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 5)]
        qmax: usize,
        #[arg(long, default_value_t = 1_000_000)]
        cap: u128,
        #[arg(long, default_value_t = 16)]
        precision: usize,
    },
}

fn load(path: &PathBuf) -> Result<LoadedArc, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::usage(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

fn dispatch(cli: &Cli) -> Result<CmdOutput, CmdError> {
    match &cli.command {
        Command::Ord {
            arc_file,
            poly,
            precision,
        } => {
            let arc = run::apply_precision(load(arc_file)?, *precision)?;
            run::cmd_ord(&arc, poly)
        }
        Command::Hne {
            arc_file,
            precision,
        } => {
            let arc = run::apply_precision(load(arc_file)?, *precision)?;
            run::cmd_hne(&arc)
        }
        Command::Centers {
            arc_file,
            depth,
            precision,
        } => {
            let arc = run::apply_precision(load(arc_file)?, *precision)?;
            run::cmd_centers(&arc, *depth)
        }
        Command::Ideals {
            arc_file,
            q,
            precision,
        } => {
            if *q == 0 {
                return Err(CmdError::usage("level q must be positive"));
            }
            let arc = run::apply_precision(load(arc_file)?, *precision)?;
            run::cmd_ideals(&arc, *q)
        }
        Command::Reparam {
            alpha_file,
            gamma_file,
        } => run::cmd_reparam(&load(alpha_file)?, &load(gamma_file)?),
        Command::Check {
            alpha_file,
            coeffs,
            degree,
            qmax,
            cap,
            precision,
        } => {
            if *qmax == 0 {
                return Err(CmdError::usage("--qmax must be positive"));
            }
            let opts = GridOptions {
                coeffs: coeffs.clone(),
                degree: *degree,
                precision: *precision,
                cap: *cap,
                q_max: *qmax,
            };
            run::cmd_check(&load(alpha_file)?, &opts)
        }
        Command::BaseCase {
            alpha_file,
            samples,
            coeffs,
            degree,
            qmax,
            cap,
            precision,
        } => {
            if *qmax == 0 {
                return Err(CmdError::usage("--qmax must be positive"));
            }
            let opts = GridOptions {
                coeffs: coeffs.clone(),
                degree: *degree,
                precision: *precision,
                cap: *cap,
                q_max: *qmax,
            };
            run::cmd_base_case(&load(alpha_file)?, *samples, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("reports serialize")
                );
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.outcome as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.outcome as u8)
        }
    }
}
