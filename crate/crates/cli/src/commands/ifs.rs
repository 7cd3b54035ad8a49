use std::path::PathBuf;

use clap::Args;
use serde_json::json;

use aurea::geom::Rect;
use aurea::ifs::{
    chaos_game_sharded, invariance_residual, moran_dimension, rasterize_measure, IfsSpec, IfsSystem,
};

use crate::config::Config;
use crate::emit::{parse_f64_list, parse_json, print_json, read_file, write_bytes};
use crate::error::{CliError, CliResult};

/// Iterated function systems: chaos game, invariant measure, Moran dimension.
#[derive(Debug, Args)]
pub struct IfsArgs {
    /// Solve Σ rᵢ^d = 1 for the given contraction ratios and exit.
    #[arg(long, value_name = "R1,R2,…")]
    moran: Option<String>,
    /// IFS description: {"maps": [[a,b,c,d,e,f],…], "probabilities": […]?}.
    #[arg(long, value_name = "PATH")]
    system: Option<PathBuf>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Iterations discarded before sampling starts.
    #[arg(long)]
    burn_in: Option<usize>,
    /// Independent sampling chains (sharded deterministically).
    #[arg(long)]
    chains: Option<usize>,
    /// Accumulate the invariant measure on a grid×grid raster.
    #[arg(long)]
    grid: Option<usize>,
    /// Measure bounds "x0,y0,x1,y1"; defaults to the confinement box.
    #[arg(long = "box", value_name = "X0,Y0,X1,Y1")]
    bounds: Option<String>,
    /// Write the measure as a 16-bit PGM (requires --grid).
    #[arg(long, value_name = "PATH")]
    pgm: Option<PathBuf>,
    /// Write sampled points as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

pub fn run(args: IfsArgs, cfg: &Config) -> CliResult {
    if let Some(list) = &args.moran {
        let ratios = parse_f64_list(list, "--moran")?;
        let dimension = moran_dimension(&ratios)?;
        print_json(&json!({"ratios": ratios, "dimension": dimension}));
        return Ok(());
    }

    let system_path = cfg
        .path(args.system, "system")?
        .ok_or_else(|| CliError::validation("--system (or --moran) is required"))?;
    let spec: IfsSpec = parse_json(&read_file(&system_path)?, "IFS system")?;
    let sys = IfsSystem::try_from(spec)?;

    let points = cfg.usize(args.points, "points", 100_000)?;
    let seed = cfg.u64(args.seed, "seed", 0)?;
    let burn_in = cfg.usize(args.burn_in, "burn-in", 64)?;
    let chains = cfg.usize(args.chains, "chains", 1)?;
    let cloud = chaos_game_sharded(&sys, points, seed, burn_in, chains)?;

    if let Some(path) = &args.csv {
        let mut table = String::from("x,y\n");
        for p in &cloud.points {
            table.push_str(&format!("{},{}\n", p.x, p.y));
        }
        write_bytes(path, table.as_bytes())?;
    }

    let bounds = match cfg.string(args.bounds, "box")? {
        Some(text) => {
            let v = parse_f64_list(&text, "--box")?;
            let &[x0, y0, x1, y1] = v.as_slice() else {
                return Err(CliError::validation("--box expects \"x0,y0,x1,y1\""));
            };
            Rect::new(x0, y0, x1, y1)?
        }
        None => sys.confinement_box(),
    };

    let mut report = json!({
        "maps": sys.maps().len(),
        "points": cloud.points.len(),
        "seed": seed,
        "chains": chains,
        "rng": cloud.rng_algorithm,
        "contraction_bound": sys.contraction_bound(),
        "box": [bounds.x0, bounds.y0, bounds.x1, bounds.y1],
        "csv": args.csv,
    });

    let grid = cfg.usize(args.grid, "grid", 0)?;
    if grid > 0 {
        let measure = rasterize_measure(&cloud, bounds, grid)?;
        report["grid"] = json!(grid);
        report["inside"] = json!(measure.inside);
        report["outside"] = json!(measure.outside);
        report["invariance_residual"] = json!(invariance_residual(&measure.field, &sys)?);
        if let Some(path) = &args.pgm {
            write_bytes(path, &measure.field.to_pgm()?)?;
            report["pgm"] = json!(path);
        }
    } else if args.pgm.is_some() {
        return Err(CliError::validation("--pgm requires --grid"));
    }

    print_json(&report);
    Ok(())
}
