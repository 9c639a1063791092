use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pdm_spectra::cli::{execute, Mode, RunConfig, EXIT_CONFIG};
use pdm_spectra::model::UnitMode;

/// Bound-state spectra for a particle with mass m(x) = m (1 + gamma x)^-2
/// in V(x) = A/x^2 - B/x.
#[derive(Parser)]
#[command(name = "pdm-spectra", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energies for n = 0..levels at each gamma.
    Spectrum(Flags),
    /// Normalized wavefunction samples for one level.
    Wavefunction(Flags),
    /// Finite-difference eigenvalues against the closed form.
    Verify(Flags),
    /// Regenerate a preset's energy table.
    Table(Flags),
    /// One level across a gamma range.
    Sweep(Flags),
}

#[derive(Args)]
struct Flags {
    /// Comma list or start:stop:count.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long)]
    preset: Option<String>,
    /// atomic or molecular.
    #[arg(long)]
    units: Option<UnitMode>,
    #[arg(long)]
    levels: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    verbose: bool,
    /// Mass in units of m (atomic) or amu (molecular).
    #[arg(long)]
    mu: Option<f64>,
    /// Coarsest verifier grid size.
    #[arg(long)]
    points: Option<usize>,
    /// key = value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, f) = match cli.command {
        Command::Spectrum(f) => (Mode::Spectrum, f),
        Command::Wavefunction(f) => (Mode::Wavefunction, f),
        Command::Verify(f) => (Mode::Verify, f),
        Command::Table(f) => (Mode::Table, f),
        Command::Sweep(f) => (Mode::Sweep, f),
    };
    let flags = RunConfig {
        mode: Some(mode),
        units: f.units,
        gamma: f.gamma,
        a: f.a,
        b: f.b,
        preset: f.preset,
        levels: f.levels,
        n: f.n,
        out: f.out,
        tol: f.tol,
        verbose: f.verbose,
        mu: f.mu,
        points: f.points,
    };
    let config = match &f.config {
        None => flags,
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|text| RunConfig::parse_config(&text).map_err(|e| e.to_string()))
        {
            Ok(file) => file.merge(flags),
            Err(e) => {
                eprintln!("error: config {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        },
    };
    let code = execute(&config, &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
