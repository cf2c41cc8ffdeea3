mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Word metric, horofunctions and boundary action of the lamplighter group L2
/// (generating set {t, at}).
#[derive(Debug, Parser)]
#[command(name = "lamplighter", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit line-delimited JSON records instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Largest ball radius any command may enumerate.
    #[arg(
        long,
        global = true,
        env = "LAMPLIGHTER_MAX_RADIUS",
        default_value_t = 12
    )]
    pub max_radius: u32,

    /// Largest sequence horizon any command may inspect.
    #[arg(
        long,
        global = true,
        env = "LAMPLIGHTER_MAX_HORIZON",
        default_value_t = 64
    )]
    pub max_horizon: usize,

    /// Largest iteration budget any command may spend.
    #[arg(
        long,
        global = true,
        env = "LAMPLIGHTER_MAX_BUDGET",
        default_value_t = 64
    )]
    pub max_budget: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two lamp stands, with the terms of the closed form.
    Dist { g1: String, g2: String },

    /// A geodesic word from the first lamp stand to the second.
    Geodesic { g1: String, g2: String },

    /// Every element of the BFS ball, by distance.
    Ball {
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },

    /// Sphere and ball sizes as CSV.
    Growth {
        #[arg(long, default_value_t = 8)]
        radius: u32,
    },

    /// The BFS ball as a Graphviz digraph.
    ExportDot {
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },

    /// Evaluate a horofunction literal at lamp stands.
    HoroEval {
        horofunction: String,
        #[arg(required = true)]
        points: Vec<String>,
    },

    /// Empirical limit of a sequence spec on a closed ball.
    HoroLimit {
        spec: String,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
        #[arg(long, default_value_t = 8)]
        window: usize,
    },

    /// Which horofunction a sequence spec converges to, if any.
    Classify {
        spec: String,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
    },

    /// Image of a horofunction under left multiplication.
    Act { g: String, horofunction: String },

    /// Iterates of a horofunction under repeated action.
    Orbit {
        g: String,
        horofunction: String,
        #[arg(long, default_value_t = 8)]
        budget: usize,
    },

    /// Fixed rays of an element and, given a start, the orbit's pole.
    Dynamics {
        g: String,
        horofunction: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = 32)]
        budget: usize,
        #[arg(long, default_value_t = 16)]
        window: i64,
    },

    /// Check convergence of a horofunction family on a basis neighborhood.
    TopologyLimit {
        family: String,
        #[arg(long, default_value_t = 3, conflicts_with = "points")]
        radius: u32,
        /// Explicit evaluation points, whitespace separated.
        #[arg(long)]
        points: Option<String>,
        /// Limit literal; defaults to the family's own limit.
        #[arg(long)]
        limit: Option<String>,
        #[arg(long, default_value_t = 32)]
        budget: usize,
    },

    /// Positive ribs of height l whose lowest lamp is k (`inf` for none).
    #[command(allow_negative_numbers = true)]
    RibEnum {
        l: i64,
        k: String,
        /// Only print the class size.
        #[arg(long)]
        count: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match commands::run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, out.as_bytes()),
        None => std::io::stdout().lock().write_all(out.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
