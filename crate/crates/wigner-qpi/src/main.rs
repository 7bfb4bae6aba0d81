use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wigner_qpi::cli::{
    cmd_bounds, cmd_qpi, cmd_scale_check, cmd_spectrum, cmd_wigner_grid, CliError, OutputFormat,
    Tolerances,
};
use wigner_qpi::spectra::RegionKind;
use wigner_qpi::wigner::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Region {
    Disk,
    Circle,
}

impl From<Region> for RegionKind {
    fn from(r: Region) -> Self {
        match r {
            Region::Disk => RegionKind::Disk,
            Region::Circle => RegionKind::Circle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

/// Spectra, QPI bounds, Wigner grids and dilation checks for phase-space
/// disk and circle operators.
#[derive(Parser)]
#[command(name = "wigner-qpi", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    abs_tol: f64,

    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    rel_tol: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues λ_0 … λ_nmax of a region/contour operator.
    Spectrum {
        #[arg(long, value_enum)]
        region: Region,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        nmax: usize,
    },
    /// Extremal eigenvalues (QPI bounds) from a truncated spectrum scan.
    Bounds {
        #[arg(long, value_enum)]
        region: Region,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 128)]
        nmax: usize,
    },
    /// Quasiprobability integral of a state over a region or contour.
    Qpi {
        #[arg(long, value_enum)]
        region: Region,
        #[arg(long)]
        radius: f64,
        /// JSON file with exactly one of `fock_weights` or `hermite_coeffs`.
        #[arg(long)]
        state: PathBuf,
    },
    /// Verify the Meixner scaling identity against direct eigenvalues.
    ScaleCheck {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        xi: f64,
        #[arg(long, default_value_t = 4)]
        mmax: usize,
        /// Series truncation; defaults to the automatic geometric-tail choice.
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Wigner function on a rectangular grid, with bound containment check.
    WignerGrid {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        q_min: f64,
        #[arg(long)]
        q_max: f64,
        #[arg(long)]
        p_min: f64,
        #[arg(long)]
        p_max: f64,
        #[arg(long)]
        step: f64,
    },
}

fn read_state(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read state file {}: {e}", path.display())))
}

fn run(args: Args) -> Result<(), CliError> {
    let tols = Tolerances {
        abs_tol: args.abs_tol,
        rel_tol: args.rel_tol,
    };
    let format: OutputFormat = args.format.into();
    match args.command {
        Command::Spectrum {
            region,
            radius,
            nmax,
        } => {
            print!(
                "{}",
                cmd_spectrum(region.into(), radius, nmax, tols, format)?
            );
        }
        Command::Bounds {
            region,
            radius,
            nmax,
        } => {
            print!("{}", cmd_bounds(region.into(), radius, nmax, tols, format)?);
        }
        Command::Qpi {
            region,
            radius,
            state,
        } => {
            let json = read_state(&state)?;
            print!("{}", cmd_qpi(region.into(), radius, &json, tols, format)?);
        }
        Command::ScaleCheck {
            radius,
            xi,
            mmax,
            trunc,
        } => {
            print!(
                "{}",
                cmd_scale_check(radius, xi, mmax, trunc, tols, format)?
            );
        }
        Command::WignerGrid {
            state,
            q_min,
            q_max,
            p_min,
            p_max,
            step,
        } => {
            let json = read_state(&state)?;
            let grid = GridSpec {
                q_min,
                q_max,
                p_min,
                p_max,
                step,
            };
            let out = cmd_wigner_grid(&json, grid, format)?;
            print!("{}", out.payload);
            eprintln!("{}", out.summary);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
