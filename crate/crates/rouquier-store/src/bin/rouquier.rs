use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rouquier_store::cli::{self, BlockPath, Display, Outcome};
use rouquier_store::db::default_dir;

/// Essential hyperplanes and Rouquier blocks of cyclotomic Hecke algebras.
#[derive(Parser)]
#[command(name = "rouquier", version)]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Essential hyperplanes for a prime, or for all primes with --prime 0.
    EssentialHyperplanes {
        group: String,
        #[arg(long, default_value_t = 0)]
        prime: u64,
    },
    /// Every stored block table.
    AllBlocks {
        group: String,
        #[arg(long, default_value = "name")]
        display: Display,
    },
    /// Blocks of the specialization u_{C,j} -> zeta_e^j y^{n_{C,j}}.
    RouquierBlocks {
        group: String,
        /// Comma separated, one per parameter slot.
        #[arg(long, allow_hyphen_values = true)]
        exponents: String,
        #[arg(long, default_value = "tables")]
        path: BlockPath,
        #[arg(long, default_value = "name")]
        display: Display,
    },
    /// Runs every validator; defaults to the database directory.
    VerifyDb { paths: Vec<PathBuf> },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let dir = default_dir();
    let out: Outcome = match args.cmd {
        Cmd::EssentialHyperplanes { group, prime } => cli::essential_hyperplanes_cmd(&dir, &group, prime),
        Cmd::AllBlocks { group, display } => cli::all_blocks_cmd(&dir, &group, display),
        Cmd::RouquierBlocks { group, exponents, path, display } => {
            cli::rouquier_blocks_cmd(&dir, &group, &exponents, path, display)
        }
        Cmd::VerifyDb { paths } => {
            let paths = if paths.is_empty() { vec![dir] } else { paths };
            cli::verify_db_cmd(&paths)
        }
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
