//! The layered render document: a canvas, a stack of typed payload layers,
//! and gradient annotations; plus the layout composer that arranges a
//! tiling, its spiral, guides, and focal markers into one document.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Segment};
use crate::golden::{
    build_fibonacci_tiling, phi_guides, spiral_from_tiling, ArcChain, GuideSet, Tiling,
};
use crate::projection::{FigureLayer, LayeredFigure};
use crate::scene::Scene;

/// Stroke/fill colors (any SVG color string) and overall opacity of a layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Style {
    pub stroke: Option<String>,
    pub fill: Option<String>,
    pub opacity: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke: Some("#000000".into()),
            fill: None,
            opacity: 1.0,
        }
    }
}

impl Style {
    fn line(stroke: &str, opacity: f64) -> Style {
        Style {
            stroke: Some(stroke.into()),
            fill: None,
            opacity,
        }
    }
}

/// What a layer draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum LayerPayload {
    Tiling(Tiling),
    Spiral(ArcChain),
    Guides(GuideSet),
    Figure(LayeredFigure),
    Scene(Scene),
    /// Path to an external raster (PGM) placed over the full canvas.
    RasterRef(String),
}

impl LayerPayload {
    pub fn kind_name(&self) -> &'static str {
        match self {
            LayerPayload::Tiling(_) => "tiling",
            LayerPayload::Spiral(_) => "spiral",
            LayerPayload::Guides(_) => "guides",
            LayerPayload::Figure(_) => "figure",
            LayerPayload::Scene(_) => "scene",
            LayerPayload::RasterRef(_) => "raster-ref",
        }
    }
}

/// One document layer: payload plus style.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    #[serde(flatten)]
    pub payload: LayerPayload,
    pub style: Style,
}

/// Luminance-gradient annotation for one tiling square: the decay axis
/// points along the square's spiral-arc chord.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientHint {
    /// 1-based square index.
    pub square_index: usize,
    /// Unit direction of decreasing luminance.
    pub axis: (f64, f64),
}

/// A complete render document. Coordinates are mathematical (y up, origin
/// bottom-left); the canvas spans `[0, canvas.0] x [0, canvas.1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub canvas: (f64, f64),
    pub layers: Vec<Layer>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<GradientHint>,
}

impl Document {
    /// Structural checks across the stack: positive canvas, opacities in
    /// [0, 1], figure weights summing to 1, unit annotation axes.
    pub fn validate(&self) -> Result<()> {
        if !(self.canvas.0 > 0.0 && self.canvas.1 > 0.0) {
            return Err(Error::domain(format!(
                "canvas must be positive, got {:?}",
                self.canvas
            )));
        }
        for (i, layer) in self.layers.iter().enumerate() {
            if !(0.0..=1.0).contains(&layer.style.opacity) {
                return Err(Error::domain(format!(
                    "layer {i} opacity {} outside [0, 1]",
                    layer.style.opacity
                )));
            }
            match &layer.payload {
                LayerPayload::Figure(f) => f.validate()?,
                LayerPayload::Tiling(t) => t.validate()?,
                _ => {}
            }
        }
        for a in &self.annotations {
            let norm = a.axis.0.hypot(a.axis.1);
            if (norm - 1.0).abs() > 1e-9 {
                return Err(Error::Invariant(format!(
                    "annotation axis for square {} has norm {norm}",
                    a.square_index
                )));
            }
            if a.square_index == 0 {
                return Err(Error::domain("square indices are 1-based"));
            }
        }
        Ok(())
    }
}

/// Inputs of [`compose_layout`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutParams {
    pub n_squares: usize,
    pub unit: f64,
    /// Labels for the first junctions of the spiral, one marker each. May be
    /// empty; may not outnumber the junctions.
    pub focal_labels: Vec<String>,
    pub include_guides: bool,
    /// Reserved for future stochastic decoration; the current layout
    /// pipeline is fully deterministic and ignores it.
    pub seed: u64,
}

/// Depth of the nested golden-rectangle guides in composed layouts.
const LAYOUT_GUIDE_DEPTH: usize = 3;

/// Marker arm length, in units of the seed square.
const MARKER_ARM: f64 = 0.2;

/// Compose a full layout document: the Fibonacci tiling shifted into the
/// first quadrant, its partial-bounds rectangles as alignment edges, the
/// spiral, optional phi/thirds guides, and one cross marker per focal label
/// placed on successive spiral junctions. Gradient annotations record each
/// square's arc chord direction.
pub fn compose_layout(params: &LayoutParams) -> Result<Document> {
    let tiling = build_fibonacci_tiling(params.n_squares, params.unit)?;
    let chain = spiral_from_tiling(&tiling)?;
    if params.focal_labels.len() > chain.junctions.len() {
        return Err(Error::LabelOverflow {
            labels: params.focal_labels.len(),
            junctions: chain.junctions.len(),
        });
    }

    // Move everything into the first quadrant.
    let (dx, dy) = (-tiling.bounds.x0, -tiling.bounds.y0);
    let tiling = tiling.translated(dx, dy);
    let chain = chain.translated(dx, dy);
    let canvas = (tiling.bounds.width(), tiling.bounds.height());

    let mut annotations = Vec::with_capacity(chain.arcs.len());
    for (arc, sq) in chain.arcs.iter().zip(&tiling.squares) {
        let chord = arc.end - arc.start;
        let norm = chord.norm();
        annotations.push(GradientHint {
            square_index: sq.index,
            axis: (chord.x / norm, chord.y / norm),
        });
    }

    let mut layers = Vec::new();
    layers.push(Layer {
        payload: LayerPayload::Tiling(tiling.clone()),
        style: Style::line("#3a3a3a", 1.0),
    });

    // Edges of the partial bounding rectangles, for aligning secondary
    // structure with the Fibonacci rectangles.
    let mut edge_segments = Vec::new();
    for r in tiling.partial_bounds() {
        let bl = Point2::new(r.x0, r.y0);
        let br = Point2::new(r.x1, r.y0);
        let tr = Point2::new(r.x1, r.y1);
        let tl = Point2::new(r.x0, r.y1);
        edge_segments.extend([
            Segment::new(bl, br),
            Segment::new(br, tr),
            Segment::new(tr, tl),
            Segment::new(tl, bl),
        ]);
    }
    layers.push(Layer {
        payload: LayerPayload::Figure(LayeredFigure {
            layers: vec![FigureLayer {
                label: "fibonacci-rectangles".into(),
                weight: 1.0,
                segments: edge_segments,
            }],
        }),
        style: Style::line("#8a8a8a", 0.35),
    });

    layers.push(Layer {
        payload: LayerPayload::Spiral(chain.clone()),
        style: Style::line("#b0791a", 1.0),
    });

    if params.include_guides {
        layers.push(Layer {
            payload: LayerPayload::Guides(phi_guides(canvas.0, canvas.1, LAYOUT_GUIDE_DEPTH)?),
            style: Style::line("#4677aa", 0.5),
        });
    }

    let arm = MARKER_ARM * params.unit;
    for (label, junction) in params.focal_labels.iter().zip(&chain.junctions) {
        let j = *junction;
        let segments = vec![
            Segment::new(Point2::new(j.x - arm, j.y), Point2::new(j.x + arm, j.y)),
            Segment::new(Point2::new(j.x, j.y - arm), Point2::new(j.x, j.y + arm)),
        ];
        layers.push(Layer {
            payload: LayerPayload::Figure(LayeredFigure {
                layers: vec![FigureLayer {
                    label: label.clone(),
                    weight: 1.0,
                    segments,
                }],
            }),
            style: Style::line("#a03030", 1.0),
        });
    }

    let doc = Document {
        canvas,
        layers,
        annotations,
    };
    doc.validate()?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, labels: usize, guides: bool) -> LayoutParams {
        LayoutParams {
            n_squares: n,
            unit: 1.0,
            focal_labels: (1..=labels).map(|i| format!("focal-{i}")).collect(),
            include_guides: guides,
            seed: 0,
        }
    }

    #[test]
    fn eight_square_layout_has_the_advertised_structure() {
        let doc = compose_layout(&params(8, 7, true)).unwrap();
        assert_eq!(doc.canvas, (34.0, 21.0));
        let kinds: Vec<&str> = doc.layers.iter().map(|l| l.payload.kind_name()).collect();
        assert_eq!(
            kinds,
            vec![
                "tiling", "figure", "spiral", "guides", "figure", "figure", "figure", "figure",
                "figure", "figure", "figure"
            ]
        );
        assert_eq!(doc.annotations.len(), 8);
        for a in &doc.annotations {
            assert!((a.axis.0.hypot(a.axis.1) - 1.0).abs() < 1e-12);
        }
        // Everything lives in the first quadrant.
        if let LayerPayload::Tiling(t) = &doc.layers[0].payload {
            assert_eq!((t.bounds.x0, t.bounds.y0), (0.0, 0.0));
        } else {
            panic!("first layer should be the tiling");
        }
    }

    #[test]
    fn labels_cannot_outnumber_junctions() {
        let err = compose_layout(&params(8, 8, false)).unwrap_err();
        assert!(matches!(
            err,
            Error::LabelOverflow {
                labels: 8,
                junctions: 7
            }
        ));
    }

    #[test]
    fn single_square_layout_works_without_junctions() {
        let doc = compose_layout(&params(1, 0, false)).unwrap();
        assert_eq!(doc.canvas, (1.0, 1.0));
        assert_eq!(doc.annotations.len(), 1);
        assert!(compose_layout(&params(1, 1, false)).is_err());
    }

    #[test]
    fn markers_sit_on_consecutive_junctions() {
        let doc = compose_layout(&params(5, 3, false)).unwrap();
        let marker_layers: Vec<&LayeredFigure> = doc
            .layers
            .iter()
            .filter_map(|l| match &l.payload {
                LayerPayload::Figure(f) if f.layers[0].label.starts_with("focal-") => Some(f),
                _ => None,
            })
            .collect();
        assert_eq!(marker_layers.len(), 3);
        let spiral = doc
            .layers
            .iter()
            .find_map(|l| match &l.payload {
                LayerPayload::Spiral(c) => Some(c),
                _ => None,
            })
            .unwrap();
        for (m, junction) in marker_layers.iter().zip(&spiral.junctions) {
            // Both cross segments pass through the junction.
            for seg in &m.layers[0].segments {
                let mid = (seg.a + seg.b) * 0.5;
                assert!(mid.dist(*junction) < 1e-12);
            }
        }
    }

    #[test]
    fn document_json_round_trips() {
        let doc = compose_layout(&params(6, 2, true)).unwrap();
        let json = serde_json::to_string(&doc).unwrap();
        let back: Document = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
        // The layer tag is the kebab-case kind.
        assert!(json.contains("\"kind\":\"tiling\""));
        assert!(json.contains("\"kind\":\"spiral\""));
        assert!(json.contains("\"kind\":\"guides\""));
    }

    #[test]
    fn validate_rejects_bad_documents() {
        let mut doc = compose_layout(&params(4, 0, false)).unwrap();
        doc.layers[0].style.opacity = 1.5;
        assert!(doc.validate().is_err());
        let mut doc = compose_layout(&params(4, 0, false)).unwrap();
        doc.annotations[0].axis = (2.0, 0.0);
        assert!(doc.validate().is_err());
        let mut doc = compose_layout(&params(4, 0, false)).unwrap();
        doc.canvas = (0.0, 5.0);
        assert!(doc.validate().is_err());
    }
}
