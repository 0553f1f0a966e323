use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use matropoly::verify::GeometricOracle;
use matropoly::{cmd_decompose, cmd_invariants, cmd_verify, cmd_volume, CliError, Polytope, Report};

#[derive(Parser)]
#[command(name = "matropoly", version, about = "Signed Minkowski decompositions and exact volumes of matroid polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the simplex coefficients of a polytope's signed Minkowski decomposition.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "base")]
        polytope: Polytope,
    },
    /// Print the exact volume of a polytope.
    Volume {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "base")]
        polytope: Polytope,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Also print (n-1)! times the volume (base polytope only).
        #[arg(long)]
        degree: bool,
    },
    /// Print rank, connectivity, Tutte coefficients, beta and gamma invariants.
    Invariants { file: PathBuf },
    /// Check formulas against the geometric oracle.
    Verify {
        #[arg(required_unless_present = "catalog")]
        file: Option<PathBuf>,
        /// Verify the built-in catalog instead of a file.
        #[arg(long, conflicts_with = "file")]
        catalog: bool,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Decompose { file, polytope } => cmd_decompose(&read(&file)?, polytope),
        Command::Volume { file, polytope, threads, degree } => {
            cmd_volume(&read(&file)?, polytope, threads.max(1), degree)
        }
        Command::Invariants { file } => cmd_invariants(&read(&file)?),
        Command::Verify { file, catalog, max_n, threads } => {
            let text = match (catalog, file) {
                (true, _) => None,
                (false, Some(f)) => Some(read(&f)?),
                (false, None) => return Err(CliError::Usage("give a file or --catalog".into())),
            };
            cmd_verify(text.as_deref(), max_n, threads.max(1), &GeometricOracle)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{}", report.text());
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
