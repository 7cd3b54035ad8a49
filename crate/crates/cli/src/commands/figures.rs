use std::path::PathBuf;

use clap::Args;
use serde_json::json;

use aurea::document::{Document, Layer, LayerPayload, Style};
use aurea::frame::{atoms_from_scene, compute_frame, erasure_test, synthesize};
use aurea::projection::{cubist_superpose, hypercube_mesh, Viewpoint};
use aurea::scene::{rasterize_scene, Scene};
use aurea::svg::render_svg;

use crate::config::Config;
use crate::emit::{parse_json, parse_usize_list, print_json, read_file, to_value, write_bytes};
use crate::error::{CliError, CliResult};

/// Superposed wireframe views of a hypercube, one SVG group per view.
#[derive(Debug, Args)]
pub struct CubistArgs {
    /// Mesh descriptor; currently "ncube:N" for the N-dimensional hypercube.
    #[arg(long)]
    mesh: Option<String>,
    /// JSON list of viewpoints: [{"rotations":[{"plane":[0,2],"angle":0.5}],"weight":1}].
    #[arg(long, value_name = "PATH")]
    views: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Write the layered figure as JSON.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

pub fn run_cubist(args: CubistArgs, cfg: &Config) -> CliResult {
    let mesh_spec = cfg
        .string(args.mesh, "mesh")?
        .unwrap_or_else(|| "ncube:4".into());
    let dim = mesh_spec
        .strip_prefix("ncube:")
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| {
            CliError::validation(format!("unsupported mesh {mesh_spec:?}; expected ncube:N"))
        })?;
    let mesh = hypercube_mesh(dim)?;
    let views_path = cfg
        .path(args.views, "views")?
        .ok_or_else(|| CliError::validation("--views is required"))?;
    let views: Vec<Viewpoint> = parse_json(&read_file(&views_path)?, "viewpoints")?;
    let figure = cubist_superpose(&mesh, &views)?;

    if let Some(path) = &args.json {
        write_bytes(
            path,
            serde_json::to_string_pretty(&figure).unwrap().as_bytes(),
        )?;
    }
    if let Some(path) = &args.svg {
        write_bytes(path, &render_svg(&figure_document(&figure)))?;
    }
    print_json(&json!({
        "dim": dim,
        "vertices": mesh.vertices.len(),
        "edges": mesh.edges.len(),
        "views": figure.layers.len(),
        "weights": figure.layers.iter().map(|l| l.weight).collect::<Vec<_>>(),
        "svg": args.svg,
        "json": args.json,
    }));
    Ok(())
}

/// Fit the figure into a padded first-quadrant canvas.
fn figure_document(figure: &aurea::projection::LayeredFigure) -> Document {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for layer in &figure.layers {
        for seg in &layer.segments {
            for p in [seg.a, seg.b] {
                x0 = x0.min(p.x);
                y0 = y0.min(p.y);
                x1 = x1.max(p.x);
                y1 = y1.max(p.y);
            }
        }
    }
    if x0 > x1 {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let margin = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let mut shifted = figure.clone();
    for layer in &mut shifted.layers {
        for seg in &mut layer.segments {
            seg.a.x += margin - x0;
            seg.a.y += margin - y0;
            seg.b.x += margin - x0;
            seg.b.y += margin - y0;
        }
    }
    Document {
        canvas: (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin),
        layers: vec![Layer {
            payload: LayerPayload::Figure(shifted),
            style: Style::default(),
        }],
        annotations: vec![],
    }
}

/// Render or rasterize a vector scene on the unit canvas.
#[derive(Debug, Args)]
pub struct SceneArgs {
    /// Scene description JSON.
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Rasterize to a luminance PGM.
    #[arg(long, value_name = "PATH")]
    pgm: Option<PathBuf>,
    /// Raster resolution for --pgm.
    #[arg(long)]
    grid: Option<usize>,
}

pub fn run_scene(args: SceneArgs, cfg: &Config) -> CliResult {
    let spec_path = cfg
        .path(args.spec, "spec")?
        .ok_or_else(|| CliError::validation("--spec is required"))?;
    let scene: Scene = parse_json(&read_file(&spec_path)?, "scene")?;
    let grid = cfg.usize(args.grid, "grid", 64)?;

    if let Some(path) = &args.svg {
        let doc = Document {
            canvas: (1.0, 1.0),
            layers: vec![Layer {
                payload: LayerPayload::Scene(scene.clone()),
                style: Style {
                    stroke: None,
                    fill: None,
                    opacity: 1.0,
                },
            }],
            annotations: vec![],
        };
        write_bytes(path, &render_svg(&doc))?;
    }
    if let Some(path) = &args.pgm {
        let field = rasterize_scene(&scene, grid)?;
        write_bytes(path, &field.to_luminance().to_pgm()?)?;
    }
    print_json(&json!({
        "elements": scene.elements().len(),
        "grid": grid,
        "svg": args.svg,
        "pgm": args.pgm,
    }));
    Ok(())
}

/// Frame analysis of scene atoms: Gram spectrum, duals, erasure robustness.
#[derive(Debug, Args)]
pub struct FrameArgs {
    /// Scene whose element indicators become the frame atoms.
    #[arg(long, value_name = "PATH")]
    scene: Option<PathBuf>,
    /// Raster resolution the atoms are sampled at.
    #[arg(long)]
    grid: Option<usize>,
    /// Atom indices to erase, e.g. "0,2".
    #[arg(long, value_name = "I,J,…")]
    erase: Option<String>,
    /// Write the Gram matrix as CSV (labels as header).
    #[arg(long, value_name = "PATH")]
    gram_csv: Option<PathBuf>,
}

pub fn run_frame(args: FrameArgs, cfg: &Config) -> CliResult {
    let scene_path = cfg
        .path(args.scene, "scene")?
        .ok_or_else(|| CliError::validation("--scene is required"))?;
    let scene: Scene = parse_json(&read_file(&scene_path)?, "scene")?;
    let grid = cfg.usize(args.grid, "grid", 32)?;
    let atoms = atoms_from_scene(&scene, grid)?;
    let frame = compute_frame(&atoms)?;

    if let Some(path) = &args.gram_csv {
        let mut table = atoms.labels().join(",");
        table.push('\n');
        for row in frame.gram_rows() {
            let cells: Vec<String> = row.iter().map(f64::to_string).collect();
            table.push_str(&cells.join(","));
            table.push('\n');
        }
        write_bytes(path, table.as_bytes())?;
    }

    let mut report = json!({
        "atoms": atoms.len(),
        "labels": atoms.labels(),
        "grid": grid,
        "rank": frame.rank,
        "eigenvalues": frame.eigenvalues,
        "gram_csv": args.gram_csv,
    });

    if let Some(list) = &args.erase {
        let erase = parse_usize_list(list, "--erase")?;
        // Deterministic probe field: the sum of all atoms.
        let field = synthesize(&vec![1.0; atoms.len()], &atoms)?;
        let erasure = erasure_test(&field, &atoms, &erase)?;
        report["erasure"] = to_value(&erasure);
    }

    print_json(&report);
    Ok(())
}
