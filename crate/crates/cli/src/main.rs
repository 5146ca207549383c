//! `zcc`: point counts, lattices, Betti numbers and stabilization reports
//! for spaces of 0-cycles on the affine line over finite fields.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "zcc", version, about = "Exact point counts and statistics for 0-cycle spaces over finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true, env = "ZCC_THREADS")]
    pub threads: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON file with default parameter values (a sweep config for `report`)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Lift the size guards for deliberate large runs
    #[arg(long, global = true)]
    pub unsafe_guard: bool,
    /// Include wall time in census output (breaks byte-identical reruns)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Parameters shared by the census-style subcommands. Each may also come
/// from the `--config` file; flags win.
#[derive(Args, Debug, Clone, Default)]
pub struct SpaceArgs {
    /// Degree vector, comma separated, e.g. 2,2
    #[arg(long)]
    pub d: Option<String>,
    /// Multiplicity threshold n >= 1
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count F_q-points
    Count {
        #[command(flatten)]
        space: SpaceArgs,
        /// Field size: p, q or p^e
        #[arg(long)]
        q: Option<String>,
        /// ordered | unordered | burnside
        #[arg(long)]
        mode: Option<String>,
    },
    /// Sum a character-polynomial statistic over F_q-points
    Weighted {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        q: Option<String>,
        /// Statistic, e.g. "X[1,1]^2 - X[1,2]"
        #[arg(long)]
        poly: Option<String>,
        /// unordered | burnside
        #[arg(long)]
        mode: Option<String>,
        /// coset | multiplicity
        #[arg(long)]
        weighting: Option<String>,
    },
    /// Build the n-equals lattice and export it
    Lattice {
        #[command(flatten)]
        space: SpaceArgs,
        /// Dimension of the affine space the points live in
        #[arg(long)]
        dim: Option<u32>,
    },
    /// Betti numbers of the complex complement with per-interval contributions
    Betti {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        dim: Option<u32>,
    },
    /// Interpolate values in q, from explicit samples or from censuses
    Interpolate {
        /// Samples as q:value pairs, e.g. 2:2,3:6,5:20
        #[arg(long)]
        samples: Option<String>,
        /// Expected degree; extra samples must lie on the fitted polynomial
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        poly: Option<String>,
        /// Field sizes for census samples, comma separated
        #[arg(long)]
        q_list: Option<String>,
    },
    /// Stabilization sweep over degree vectors
    Report {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<u32>,
        /// Degrees, `;` between vectors, e.g. "1;2;3" or "1,2;2,2"
        #[arg(long)]
        d_list: Option<String>,
        #[arg(long)]
        q_list: Option<String>,
        /// Statistics separated by `;`
        #[arg(long)]
        polys: Option<String>,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Run the oracle triangle over a grid of small cases
    Verify {
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        max_total: Option<u32>,
        #[arg(long)]
        n_list: Option<String>,
        #[arg(long)]
        q_list: Option<String>,
    },
}

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_GUARD: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.global, &outcome.body) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INVALID);
            }
            if let Some(note) = &outcome.stderr {
                eprint!("{note}");
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(global: &GlobalOpts, body: &str) -> std::io::Result<()> {
    match &global.output {
        Some(path) => std::fs::write(path, body),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()
        }
    }
}
