//! `aurea` — golden-ratio generative geometry from the command line.
//!
//! Subcommands map one-to-one onto the library pillars: exact Fibonacci
//! arithmetic, golden tilings and spirals, substitution chains, iterated
//! function systems, cubist projections, scenes, frame analysis, and the
//! layout composer. Reports print to stdout as JSON; artifacts (SVG, PGM,
//! CSV, JSON) go wherever the flags point. Exit codes: 0 on success, 2 on
//! validation errors, 3 on I/O errors.

mod commands;
mod config;
mod emit;
mod error;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::Config;
use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(
    name = "aurea",
    version,
    about = "Golden-ratio generative geometry toolkit"
)]
struct Cli {
    /// JSON file supplying default values for flags (flags win).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fibonacci/Lucas tables, modular reduction, Pisano periods.
    Fib(commands::fib::FibArgs),
    /// Fibonacci square tiling.
    Tiling(commands::golden::TilingArgs),
    /// Quarter-arc or logarithmic golden spiral.
    Spiral(commands::golden::SpiralArgs),
    /// φ-guides, thirds, diagonals, nested golden rectangles.
    Guides(commands::golden::GuidesArgs),
    /// Fit an exponential luminance decay to samples.
    DecayFit(commands::seq::DecayFitArgs),
    /// Score coordinate spacing against Fibonacci ratios.
    Spacing(commands::seq::SpacingArgs),
    /// Fibonacci substitution word and quasicrystal chain.
    Word(commands::seq::WordArgs),
    /// Iterated function systems and Moran dimensions.
    Ifs(commands::ifs::IfsArgs),
    /// Superposed hypercube projections.
    Cubist(commands::figures::CubistArgs),
    /// Vector scene rendering and rasterization.
    Scene(commands::figures::SceneArgs),
    /// Frame analysis over scene atoms.
    Frame(commands::figures::FrameArgs),
    /// Compose the full Fibonacci layout document.
    Layout(commands::golden::LayoutArgs),
}

fn run(cli: Cli) -> CliResult {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Fib(args) => commands::fib::run(args, &cfg),
        Command::Tiling(args) => commands::golden::run_tiling(args, &cfg),
        Command::Spiral(args) => commands::golden::run_spiral(args, &cfg),
        Command::Guides(args) => commands::golden::run_guides(args, &cfg),
        Command::DecayFit(args) => commands::seq::run_decay_fit(args, &cfg),
        Command::Spacing(args) => commands::seq::run_spacing(args, &cfg),
        Command::Word(args) => commands::seq::run_word(args, &cfg),
        Command::Ifs(args) => commands::ifs::run(args, &cfg),
        Command::Cubist(args) => commands::figures::run_cubist(args, &cfg),
        Command::Scene(args) => commands::figures::run_scene(args, &cfg),
        Command::Frame(args) => commands::figures::run_frame(args, &cfg),
        Command::Layout(args) => commands::golden::run_layout(args, &cfg),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.code());
    }
}
