use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tricochain::cli::{self, CliError, Options};
use tricochain::report::RunReport;

#[derive(Parser)]
#[command(
    name = "tricochain",
    version,
    about = "Exact verification and cohomology of tri-dendriform algebras"
)]
struct Args {
    /// Emit the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true, env = "TRICOCHAIN_THREADS")]
    threads: Option<usize>,

    /// Lift the cochain degree cap.
    #[arg(long, global = true)]
    allow_large: bool,

    /// Include wall time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the seven tri-dendriform identities and associativity of the total product.
    Verify { file: PathBuf },
    /// Check associativity of A ⊗ B on generator and seeded random triples.
    AssocCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 200)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that Ψ intertwines the differentials in the given degree.
    CochainCheck {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Compute cohomology dimensions up to the given degree.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        emit_cocycles: bool,
    },
}

fn run(args: &Args) -> Result<RunReport, CliError> {
    let opts = Options {
        allow_large: args.allow_large,
        timing: args.timing,
    };
    match &args.command {
        Command::Verify { file } => cli::cmd_verify(file, opts),
        Command::AssocCheck {
            file,
            max_degree,
            random,
            seed,
        } => cli::cmd_assoc_check(file, *max_degree, *random, *seed, opts),
        Command::CochainCheck { file, degree } => cli::cmd_cochain_check(file, *degree, opts),
        Command::Cohomology {
            file,
            max_degree,
            emit_cocycles,
        } => cli::cmd_cohomology(file, *max_degree, *emit_cocycles, opts),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool is configured once");
    }
    match run(&args) {
        Ok(report) => {
            if args.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
