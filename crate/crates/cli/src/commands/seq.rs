use std::path::PathBuf;

use clap::Args;
use serde_json::json;

use aurea::golden::{fibonacci_spacing_score, fit_exponential_decay};
use aurea::substitution::{build_chain, inflation_residual, iterate_substitution, letter_ratio};

use crate::config::Config;
use crate::emit::{parse_f64_list, parse_xy_csv, print_json, read_file, to_value, write_bytes};
use crate::error::{CliError, CliResult};

/// Fibonacci substitution word and quasicrystal chain.
#[derive(Debug, Args)]
pub struct WordArgs {
    /// Substitution iterations applied to the seed "a".
    #[arg(long)]
    iters: Option<u32>,
    /// Emit the chain as CSV (index,type,left_endpoint) instead of text.
    #[arg(long)]
    chain: bool,
    /// Write the chain CSV to this file.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Verify the inflation self-similarity and report as JSON.
    #[arg(long)]
    check_inflation: bool,
    /// Matching tolerance for --check-inflation.
    #[arg(long)]
    tol: Option<f64>,
}

pub fn run_word(args: WordArgs, cfg: &Config) -> CliResult {
    let iters = cfg.u32(args.iters, "iters", 10)?;
    if args.check_inflation {
        let tol = cfg.f64(args.tol, "tol", 1e-9)?;
        let chain = build_chain(iters)?;
        let report = inflation_residual(&chain, tol)?;
        if let Some(path) = &args.csv {
            write_bytes(path, chain_csv(&chain).as_bytes())?;
        }
        print_json(&to_value(&report));
        return Ok(());
    }
    if args.chain || args.csv.is_some() {
        let chain = build_chain(iters)?;
        let table = chain_csv(&chain);
        match &args.csv {
            Some(path) => {
                write_bytes(path, table.as_bytes())?;
                print_json(&json!({
                    "order": iters,
                    "tiles": chain.tiles.len(),
                    "total_length": chain.total_length(),
                    "csv": path,
                }));
            }
            None => print!("{table}"),
        }
        return Ok(());
    }
    let word = iterate_substitution(iters)?;
    println!("{word}");
    eprintln!(
        "length = {}, a:b = {}:{} (ratio {})",
        word.len(),
        word.count_a(),
        word.count_b(),
        letter_ratio(&word)
            .map(|r| r.to_string())
            .unwrap_or_else(|_| "undefined".into())
    );
    Ok(())
}

fn chain_csv(chain: &aurea::substitution::Chain) -> String {
    let mut out = String::from("index,type,left_endpoint\n");
    for (i, (tile, point)) in chain.tiles.iter().zip(&chain.points).enumerate() {
        let letter = match tile {
            aurea::substitution::Letter::A => 'a',
            aurea::substitution::Letter::B => 'b',
        };
        out.push_str(&format!("{i},{letter},{point}\n"));
    }
    out
}

/// Score coordinate spacings against the 1:1:2:3:5:8 Fibonacci pattern.
#[derive(Debug, Args)]
pub struct SpacingArgs {
    /// Comma-separated coordinates, ascending.
    #[arg(long)]
    coords: Option<String>,
    /// How many Fibonacci terms to compare (defaults to all gaps).
    #[arg(long)]
    terms: Option<usize>,
}

pub fn run_spacing(args: SpacingArgs, cfg: &Config) -> CliResult {
    let coords_text = cfg
        .string(args.coords, "coords")?
        .ok_or_else(|| CliError::validation("--coords is required"))?;
    let coords = parse_f64_list(&coords_text, "--coords")?;
    let default_terms = coords.len().saturating_sub(1);
    let terms = cfg.usize(args.terms, "terms", default_terms)?;
    let score = fibonacci_spacing_score(&coords, terms)?;
    print_json(&json!({
        "points": coords.len(),
        "terms": terms,
        "score": score,
    }));
    Ok(())
}

/// Fit I(x) = I₀·e^(−kx) to a two-column CSV of (x, intensity).
#[derive(Debug, Args)]
pub struct DecayFitArgs {
    /// CSV file with columns x,intensity (header row allowed).
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

pub fn run_decay_fit(args: DecayFitArgs, cfg: &Config) -> CliResult {
    let input = cfg
        .path(args.input, "input")?
        .ok_or_else(|| CliError::validation("--input is required"))?;
    let text = read_file(&input)?;
    let samples = parse_xy_csv(&text, "decay samples")?;
    let model = fit_exponential_decay(&samples)?;
    print_json(&json!({
        "i0": model.i0,
        "k": model.k,
        "samples": samples.len(),
    }));
    Ok(())
}
