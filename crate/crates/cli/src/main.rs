use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use speclab_cli::{config, run_config, Verb, EXIT_ERROR};

/// Spectral experiments on intervals, rectangles, disks, caps and grid domains.
#[derive(Parser)]
#[command(name = "speclab", version)]
struct Cli {
    #[command(subcommand)]
    verb: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute spectra only.
    Spectrum(Common),
    /// Run the inequality, counting, heat and decomposition checks.
    Verify(Common),
    /// Run the Weyl fits.
    Weyl(Common),
    /// Run everything.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Experiment configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Experiments run concurrently (0 = one per core).
    #[arg(long, env = "SPECLAB_JOBS", default_value_t = 0)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verb, args) = match cli.verb {
        Command::Spectrum(a) => (Verb::Spectrum, a),
        Command::Verify(a) => (Verb::Verify, a),
        Command::Weyl(a) => (Verb::Weyl, a),
        Command::Report(a) => (Verb::Report, a),
    };
    let result = config::load(&args.config).and_then(|c| run_config(&c, verb, &args.out, args.jobs));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("speclab: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
