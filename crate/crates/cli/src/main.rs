//! `cosphere` — scriptable runs of the workbench with machine-readable
//! output.
//!
//! Exit codes: 0 ok, 2 parse error, 3 validation error, 4 refusal or
//! ambiguity, 5 numerical guard.

mod commands;
mod problem;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cosphere", version, about = "K-theory of the cosphere bundle of S² and the Chern character pairing", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix file: prints S, U, V with U·M·V = S.
    Snf {
        /// Matrix file: whitespace-separated rows, or a bracketed literal like [[0,-2],[-1,-1]]
        file: String,
    },
    /// Solve the unknown corners of a six-term diagram file.
    Solve {
        /// Diagram file ([node i] / [arrow i] sections)
        file: String,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        json: Option<String>,
    },
    /// Winding number of a sampled loop (CSV lines `re,im`).
    Winding {
        /// Loop sample file
        file: String,
    },
    /// Derive the torus transition map from a chart change and print its
    /// sampled values and K₁ matrix.
    Transition {
        /// Chart change to use
        #[arg(long, default_value = "stereographic")]
        chart: String,
        /// Validation grid resolution
        #[arg(long, default_value_t = 100)]
        grid: usize,
        /// Loop samples per winding number
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        json: Option<String>,
    },
    /// Chern character of a projection from a JSON problem description.
    Chern {
        /// Problem file (structure constants, representation, projection, trace)
        file: String,
        /// Construction-time validation tolerance
        #[arg(long, default_value_t = 1e-12)]
        validation_tol: f64,
        /// Tolerance for derived identities (closedness, reality)
        #[arg(long, default_value_t = 1e-10)]
        identity_tol: f64,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        json: Option<String>,
    },
    /// Full pipeline: cosphere and operator-algebra K-theory, the invariant
    /// trace, and the character image.
    #[command(name = "sphere-report")]
    SphereReport {
        /// Quadrature orders L,M,F
        #[arg(long, value_name = "L,M,F")]
        quad: Option<String>,
        /// Trace normalization constant (default 1: τ(I) = 8π²)
        #[arg(long)]
        normalization: Option<f64>,
        /// Supply an input fact by name (may repeat); the solver needs
        /// `index_map_surjective` for the operator-algebra groups
        #[arg(long = "fact", value_name = "NAME")]
        facts: Vec<String>,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        json: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Snf { file } => commands::cmd_snf(&file),
        Command::Solve { file, json } => commands::cmd_solve(&file, json.as_deref()),
        Command::Winding { file } => commands::cmd_winding(&file),
        Command::Transition {
            chart,
            grid,
            samples,
            json,
        } => commands::cmd_transition(&chart, grid, samples, json.as_deref()),
        Command::Chern {
            file,
            validation_tol,
            identity_tol,
            json,
        } => commands::cmd_chern(&file, validation_tol, identity_tol, json.as_deref()),
        Command::SphereReport {
            quad,
            normalization,
            facts,
            json,
        } => commands::cmd_sphere_report(
            quad.as_deref(),
            normalization,
            &facts,
            json.as_deref(),
        ),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
