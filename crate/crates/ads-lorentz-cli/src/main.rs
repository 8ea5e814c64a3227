use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ads_lorentz_cli::commands::{
    run_dist, run_grid, run_stream, run_traj, GridSpec, GridWhat, TrajFormat, EXIT_USAGE,
};
use ads_lorentz_cli::selftest;
use ads_lorentz_cli::Config;

/// Lorentzian geometry of the anti-de Sitter plane: optimal trajectories,
/// distances, reachability grids, and Killing-field stream data.
///
/// Coordinates are plain radians on the universal cover (no reduction mod
/// 2π, no degree mode). Exit codes: 0 success, 1 usage error, 2 requested
/// trajectory does not exist. The environment variable ADS_LORENTZ_STEP
/// overrides the RK4 step used for Killing flows (default 1e-3).
#[derive(Parser)]
#[command(name = "ads-lorentz", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    /// Distance from the origin per cell
    Dist,
    /// Reachability classification per cell
    Reach,
}

#[derive(clap::Args, Clone, Copy)]
struct BoundsArgs {
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    theta_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    theta_max: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi_min: f64,
    #[arg(long, default_value_t = std::f64::consts::PI, allow_hyphen_values = true)]
    phi_max: f64,
    /// Samples along theta
    #[arg(long, default_value_t = 50)]
    nx: usize,
    /// Samples along phi
    #[arg(long, default_value_t = 50)]
    ny: usize,
}

impl BoundsArgs {
    fn spec(&self) -> GridSpec {
        GridSpec {
            theta_min: self.theta_min,
            theta_max: self.theta_max,
            phi_min: self.phi_min,
            phi_max: self.phi_max,
            nx: self.nx,
            ny: self.ny,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Optimal trajectory from the origin to a target point (CSV rows
    /// t,theta,phi,u1,u2 or a JSON object)
    Traj {
        #[arg(allow_hyphen_values = true)]
        theta: f64,
        #[arg(allow_hyphen_values = true)]
        phi: f64,
        /// Number of samples along the trajectory
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Lorentzian distance to a target, from the origin or from --from
    /// (one JSON object: class, distance, time_attained)
    Dist {
        #[arg(allow_hyphen_values = true)]
        theta: f64,
        #[arg(allow_hyphen_values = true)]
        phi: f64,
        /// Base point; the distance is computed by Killing transport
        #[arg(long, num_args = 2, value_names = ["THETA0", "PHI0"], allow_hyphen_values = true)]
        from: Option<Vec<f64>>,
    },
    /// CSV grid of distance or reachability over a rectangle (row-major,
    /// theta slow)
    Grid {
        #[arg(long, value_enum)]
        what: WhatArg,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Killing-field samples over a rectangle for stream plots
    Stream {
        /// Field index: 1, 2 or 3
        #[arg(long)]
        field: u8,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Run the built-in acceptance checks and print a pass/fail table
    Selftest,
}

fn dispatch(cli: Cli, cfg: &Config) -> io::Result<u8> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let stderr = io::stderr();
    let mut err = stderr.lock();
    let code = match cli.command {
        Cmd::Traj {
            theta,
            phi,
            samples,
            format,
        } => {
            let format = match format {
                FormatArg::Csv => TrajFormat::Csv,
                FormatArg::Json => TrajFormat::Json,
            };
            run_traj(theta, phi, samples, format, &mut out, &mut err)?
        }
        Cmd::Dist { theta, phi, from } => {
            let from = from.map(|v| (v[0], v[1]));
            run_dist(theta, phi, from, cfg, &mut out, &mut err)?
        }
        Cmd::Grid { what, bounds } => {
            let what = match what {
                WhatArg::Dist => GridWhat::Dist,
                WhatArg::Reach => GridWhat::Reach,
            };
            run_grid(what, bounds.spec(), &mut out, &mut err)?
        }
        Cmd::Stream { field, bounds } => run_stream(field, bounds.spec(), &mut out, &mut err)?,
        Cmd::Selftest => {
            let results = selftest::run_all(cfg);
            selftest::print_report(&results, &mut out)?
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    let cfg = match Config::from_env() {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match dispatch(cli, &cfg) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
