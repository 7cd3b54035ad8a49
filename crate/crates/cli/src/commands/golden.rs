use std::path::PathBuf;

use clap::Args;
use serde_json::json;

use aurea::document::{compose_layout, Document, Layer, LayerPayload, LayoutParams, Style};
use aurea::geom::{Point2, Segment};
use aurea::golden::{
    build_fibonacci_tiling, golden_b, golden_log_spiral, phi_guides, spiral_from_tiling,
};
use aurea::projection::{FigureLayer, LayeredFigure};
use aurea::svg::render_svg;

use crate::config::Config;
use crate::emit::{parse_f64_list, print_json, to_value, write_bytes};
use crate::error::{CliError, CliResult};

/// Fibonacci square tiling.
#[derive(Debug, Args)]
pub struct TilingArgs {
    /// Number of squares.
    #[arg(long)]
    squares: Option<usize>,
    /// Side of the two seed squares, in canvas units.
    #[arg(long)]
    unit: Option<f64>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Write the tiling itself as JSON.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

pub fn run_tiling(args: TilingArgs, cfg: &Config) -> CliResult {
    let squares = cfg.usize(args.squares, "squares", 8)?;
    let unit = cfg.f64(args.unit, "unit", 1.0)?;
    let tiling = build_fibonacci_tiling(squares, unit)?;
    let tiling = tiling.translated(-tiling.bounds.x0, -tiling.bounds.y0);
    if let Some(path) = &args.json {
        write_bytes(
            path,
            serde_json::to_string_pretty(&tiling).unwrap().as_bytes(),
        )?;
    }
    if let Some(path) = &args.svg {
        let doc = Document {
            canvas: (tiling.bounds.width(), tiling.bounds.height()),
            layers: vec![Layer {
                payload: LayerPayload::Tiling(tiling.clone()),
                style: Style::default(),
            }],
            annotations: vec![],
        };
        write_bytes(path, &render_svg(&doc))?;
    }
    print_json(&json!({
        "squares": tiling.n_squares(),
        "unit": unit,
        "bounds": [tiling.bounds.width(), tiling.bounds.height()],
        "svg": args.svg,
        "json": args.json,
    }));
    Ok(())
}

/// Quarter-arc golden spiral (from a tiling) or logarithmic golden spiral.
#[derive(Debug, Args)]
pub struct SpiralArgs {
    /// Derive the quarter-arc spiral from a tiling of this many squares.
    #[arg(long, conflicts_with = "log")]
    squares: Option<usize>,
    #[arg(long)]
    unit: Option<f64>,
    /// Sample the logarithmic spiral r = a·e^(bθ): "a,theta0,theta1".
    #[arg(long, value_name = "A,T0,T1")]
    log: Option<String>,
    /// Samples for the logarithmic polyline.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

pub fn run_spiral(args: SpiralArgs, cfg: &Config) -> CliResult {
    if let Some(spec) = &args.log {
        let parts = parse_f64_list(spec, "--log")?;
        let [a, theta0, theta1] = parts[..] else {
            return Err(CliError::validation("--log expects \"a,theta0,theta1\""));
        };
        let steps = cfg.usize(args.steps, "steps", 128)?;
        let points = golden_log_spiral(a, theta0, theta1, steps)?;
        if let Some(path) = &args.json {
            write_bytes(
                path,
                serde_json::to_string_pretty(&points).unwrap().as_bytes(),
            )?;
        }
        if let Some(path) = &args.svg {
            write_bytes(path, &render_svg(&polyline_document(&points)))?;
        }
        print_json(&json!({
            "kind": "logarithmic",
            "b": golden_b(),
            "points": points.len(),
            "svg": args.svg,
            "json": args.json,
        }));
        return Ok(());
    }

    let squares = cfg.usize(args.squares, "squares", 8)?;
    let unit = cfg.f64(args.unit, "unit", 1.0)?;
    let tiling = build_fibonacci_tiling(squares, unit)?;
    let tiling = tiling.translated(-tiling.bounds.x0, -tiling.bounds.y0);
    let chain = spiral_from_tiling(&tiling)?;
    if let Some(path) = &args.json {
        write_bytes(
            path,
            serde_json::to_string_pretty(&chain).unwrap().as_bytes(),
        )?;
    }
    if let Some(path) = &args.svg {
        let doc = Document {
            canvas: (tiling.bounds.width(), tiling.bounds.height()),
            layers: vec![Layer {
                payload: LayerPayload::Spiral(chain.clone()),
                style: Style::default(),
            }],
            annotations: vec![],
        };
        write_bytes(path, &render_svg(&doc))?;
    }
    print_json(&json!({
        "kind": "quarter-arc",
        "arcs": chain.arcs.len(),
        "junctions": chain.junctions.len(),
        "total_turning": chain.total_turning(),
        "b": golden_b(),
        "svg": args.svg,
        "json": args.json,
    }));
    Ok(())
}

fn polyline_document(points: &[Point2]) -> Document {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let margin = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let segments: Vec<Segment> = points
        .windows(2)
        .map(|w| {
            Segment::new(
                Point2::new(w[0].x - x0 + margin, w[0].y - y0 + margin),
                Point2::new(w[1].x - x0 + margin, w[1].y - y0 + margin),
            )
        })
        .collect();
    Document {
        canvas: (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin),
        layers: vec![Layer {
            payload: LayerPayload::Figure(LayeredFigure {
                layers: vec![FigureLayer {
                    label: "log-spiral".into(),
                    weight: 1.0,
                    segments,
                }],
            }),
            style: Style::default(),
        }],
        annotations: vec![],
    }
}

/// φ-lines, thirds, diagonals, and nested golden rectangles for a canvas.
#[derive(Debug, Args)]
pub struct GuidesArgs {
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    /// How many nested golden rectangles to include.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

pub fn run_guides(args: GuidesArgs, cfg: &Config) -> CliResult {
    let width = cfg.f64(args.width, "width", 34.0)?;
    let height = cfg.f64(args.height, "height", 21.0)?;
    let depth = cfg.usize(args.depth, "depth", 3)?;
    let guides = phi_guides(width, height, depth)?;
    if let Some(path) = &args.json {
        write_bytes(
            path,
            serde_json::to_string_pretty(&guides).unwrap().as_bytes(),
        )?;
    }
    if let Some(path) = &args.svg {
        let doc = Document {
            canvas: (width, height),
            layers: vec![Layer {
                payload: LayerPayload::Guides(guides.clone()),
                style: Style::default(),
            }],
            annotations: vec![],
        };
        write_bytes(path, &render_svg(&doc))?;
    }
    if args.json.is_none() && args.svg.is_none() {
        print_json(&to_value(&guides));
    } else {
        print_json(&json!({
            "canvas": [width, height],
            "phi_vertical": guides.phi_vertical,
            "phi_horizontal": guides.phi_horizontal,
            "svg": args.svg,
            "json": args.json,
        }));
    }
    Ok(())
}

/// Full layout: tiling, spiral, rectangle edges, guides, focal markers.
#[derive(Debug, Args)]
pub struct LayoutArgs {
    #[arg(long)]
    squares: Option<usize>,
    #[arg(long)]
    unit: Option<f64>,
    /// Comma-separated focal labels; default labels every junction.
    #[arg(long)]
    labels: Option<String>,
    /// Include φ/thirds guides (--guides=false to drop them).
    #[arg(long, value_name = "BOOL")]
    guides: Option<bool>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Write the full document as JSON.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

pub fn run_layout(args: LayoutArgs, cfg: &Config) -> CliResult {
    let squares = cfg.usize(args.squares, "squares", 8)?;
    let unit = cfg.f64(args.unit, "unit", 1.0)?;
    let include_guides = cfg.bool(args.guides, "guides", true)?;
    let seed = cfg.u64(args.seed, "seed", 0)?;
    let labels = match cfg.string(args.labels.clone(), "labels")? {
        Some(txt) => txt
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect(),
        // One marker per junction by default.
        None => (1..squares)
            .map(|i| format!("focal-{i}"))
            .collect::<Vec<_>>(),
    };
    let params = LayoutParams {
        n_squares: squares,
        unit,
        focal_labels: labels,
        include_guides,
        seed,
    };
    let doc = compose_layout(&params)?;
    if let Some(path) = &args.json {
        write_bytes(path, serde_json::to_string_pretty(&doc).unwrap().as_bytes())?;
    }
    if let Some(path) = &args.svg {
        write_bytes(path, &render_svg(&doc))?;
    }
    print_json(&json!({
        "canvas": [doc.canvas.0, doc.canvas.1],
        "layers": doc.layers.len(),
        "annotations": doc.annotations.len(),
        "markers": params.focal_labels.len(),
        "svg": args.svg,
        "json": args.json,
    }));
    Ok(())
}
