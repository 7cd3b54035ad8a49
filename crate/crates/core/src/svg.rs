//! Deterministic SVG 1.1 writer for [`Document`](crate::Document).
//!
//! Documents use mathematical coordinates (y up); the writer flips into SVG
//! screen coordinates explicitly, `y_svg = H - y`, rather than via a
//! transform, so emitted numbers are plain user units. Every coordinate is
//! printed with fixed six-decimal formatting (negative zero normalized),
//! which makes the byte stream a pure function of the document.

use crate::document::{Document, Layer, LayerPayload};
use crate::geom::{AffineMap2, Point2, Rect, Segment};
use crate::golden::{ArcChain, GuideSet, Tiling};
use crate::projection::LayeredFigure;
use crate::scene::{Prototype, Scene};

/// Render a document to SVG bytes. Total: any document renders; run
/// [`Document::validate`] first if the input is untrusted.
pub fn render_svg(doc: &Document) -> Vec<u8> {
    let (w, h) = doc.canvas;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt(w), fmt(h), fmt(w), fmt(h)
    ));
    if !doc.annotations.is_empty() {
        let json = serde_json::to_string(&doc.annotations).expect("annotations serialize");
        out.push_str(&format!(
            "  <metadata id=\"annotations\">{}</metadata>\n",
            escape_text(&json)
        ));
    }
    // Stroke width that stays hairline-thin relative to the canvas.
    let stroke_width = (w.max(h) / 256.0).max(1e-6);
    out.push_str(&format!(
        "  <g id=\"root\" stroke-width=\"{}\">\n",
        fmt(stroke_width)
    ));
    for (i, layer) in doc.layers.iter().enumerate() {
        write_layer(&mut out, i, layer, w, h);
    }
    out.push_str("  </g>\n</svg>\n");
    out.into_bytes()
}

fn write_layer(out: &mut String, index: usize, layer: &Layer, w: f64, h: f64) {
    let stroke = layer.style.stroke.as_deref().unwrap_or("none");
    let fill = layer.style.fill.as_deref().unwrap_or("none");
    out.push_str(&format!(
        "    <g id=\"layer-{}-{}\" stroke=\"{}\" fill=\"{}\" opacity=\"{}\">\n",
        index,
        layer.payload.kind_name(),
        escape_attr(stroke),
        escape_attr(fill),
        fmt(layer.style.opacity)
    ));
    match &layer.payload {
        LayerPayload::Tiling(t) => write_tiling(out, t, h),
        LayerPayload::Spiral(c) => write_spiral(out, c, h),
        LayerPayload::Guides(g) => write_guides(out, g, h),
        LayerPayload::Figure(f) => write_figure(out, f, h),
        LayerPayload::Scene(s) => write_scene(out, s, h),
        LayerPayload::RasterRef(path) => write_raster_ref(out, path, w, h),
    }
    out.push_str("    </g>\n");
}

fn write_tiling(out: &mut String, tiling: &Tiling, h: f64) {
    for sq in &tiling.squares {
        let r = sq.rect();
        out.push_str(&format!("      {}\n", rect_tag(&r, h, &[])));
    }
}

fn write_spiral(out: &mut String, chain: &ArcChain, h: f64) {
    let Some(first) = chain.arcs.first() else {
        return;
    };
    // One continuous path; endpoints of consecutive arcs coincide exactly.
    // The y flip mirrors the counterclockwise quarter turns, so the SVG
    // sweep flag is 1 throughout.
    let mut d = format!("M {} {}", fmt(first.start.x), fmt(h - first.start.y));
    for arc in &chain.arcs {
        d.push_str(&format!(
            " A {} {} 0 0 1 {} {}",
            fmt(arc.radius),
            fmt(arc.radius),
            fmt(arc.end.x),
            fmt(h - arc.end.y)
        ));
    }
    out.push_str(&format!("      <path d=\"{d}\"/>\n"));
}

fn write_guides(out: &mut String, guides: &GuideSet, h: f64) {
    let (gw, gh) = guides.canvas;
    for x in guides.phi_vertical.iter().chain(&guides.thirds_vertical) {
        let seg = Segment::new(Point2::new(*x, 0.0), Point2::new(*x, gh));
        out.push_str(&format!("      {}\n", line_tag(&seg, h)));
    }
    for y in guides
        .phi_horizontal
        .iter()
        .chain(&guides.thirds_horizontal)
    {
        let seg = Segment::new(Point2::new(0.0, *y), Point2::new(gw, *y));
        out.push_str(&format!("      {}\n", line_tag(&seg, h)));
    }
    for seg in &guides.diagonals {
        out.push_str(&format!("      {}\n", line_tag(seg, h)));
    }
    for r in &guides.nested_rects {
        out.push_str(&format!("      {}\n", rect_tag(r, h, &[])));
    }
}

fn write_figure(out: &mut String, figure: &LayeredFigure, h: f64) {
    for fig_layer in &figure.layers {
        out.push_str(&format!(
            "      <g data-label=\"{}\" opacity=\"{}\">\n",
            escape_attr(&fig_layer.label),
            fmt(fig_layer.weight)
        ));
        if !fig_layer.segments.is_empty() {
            let mut d = String::new();
            for seg in &fig_layer.segments {
                if !d.is_empty() {
                    d.push(' ');
                }
                d.push_str(&format!(
                    "M {} {} L {} {}",
                    fmt(seg.a.x),
                    fmt(h - seg.a.y),
                    fmt(seg.b.x),
                    fmt(h - seg.b.y)
                ));
            }
            out.push_str(&format!("        <path d=\"{d}\"/>\n"));
        }
        out.push_str("      </g>\n");
    }
}

fn write_scene(out: &mut String, scene: &Scene, h: f64) {
    for element in scene.elements() {
        let m = element.placement();
        let color = rgb(element.color);
        match &element.prototype {
            Prototype::Disk => {
                // Unit disk carried by the placement matrix, composed with
                // the y flip: svg matrix(a b c d e f) columns are the
                // images of the basis vectors plus the translation.
                let a = m.linear[0][0];
                let b = -m.linear[1][0];
                let c = m.linear[0][1];
                let d = -m.linear[1][1];
                let e = m.offset[0];
                let f = h - m.offset[1];
                out.push_str(&format!(
                    "      <circle cx=\"0\" cy=\"0\" r=\"1\" transform=\"matrix({} {} {} {} {} {})\" fill=\"{}\"/>\n",
                    fmt(a), fmt(b), fmt(c), fmt(d), fmt(e), fmt(f), color
                ));
            }
            Prototype::Segment => {
                let seg = Segment::new(m.apply(Point2::ORIGIN), m.apply(Point2::new(1.0, 0.0)));
                out.push_str(&format!(
                    "      <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"/>\n",
                    fmt(seg.a.x),
                    fmt(h - seg.a.y),
                    fmt(seg.b.x),
                    fmt(h - seg.b.y),
                    color
                ));
            }
            Prototype::Triangle => {
                let pts = [Point2::ORIGIN, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)];
                out.push_str(&format!("      {}\n", polygon_path(&m, &pts, h, &color)));
            }
            Prototype::Polygon { points } => {
                out.push_str(&format!("      {}\n", polygon_path(&m, points, h, &color)));
            }
        }
    }
}

fn write_raster_ref(out: &mut String, path: &str, w: f64, h: f64) {
    out.push_str(&format!(
        "      <image x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" preserveAspectRatio=\"none\" href=\"{}\"/>\n",
        fmt(w),
        fmt(h),
        escape_attr(path)
    ));
}

fn polygon_path(m: &AffineMap2, points: &[Point2], h: f64, fill: &str) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let q = m.apply(*p);
        let op = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!(
            "{}{} {} {}",
            if i == 0 { "" } else { " " },
            op,
            fmt(q.x),
            fmt(h - q.y)
        ));
    }
    d.push_str(" Z");
    format!("<path d=\"{d}\" fill=\"{fill}\"/>")
}

fn rect_tag(r: &Rect, h: f64, extra: &[(&str, &str)]) -> String {
    let mut attrs = String::new();
    for (k, v) in extra {
        attrs.push_str(&format!(" {k}=\"{}\"", escape_attr(v)));
    }
    format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"{attrs}/>",
        fmt(r.x0),
        fmt(h - r.y1),
        fmt(r.width()),
        fmt(r.height())
    )
}

fn line_tag(seg: &Segment, h: f64) -> String {
    format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        fmt(seg.a.x),
        fmt(h - seg.a.y),
        fmt(seg.b.x),
        fmt(h - seg.b.y)
    )
}

fn rgb(color: [f64; 3]) -> String {
    format!(
        "rgb({}%,{}%,{}%)",
        fmt(color[0] * 100.0),
        fmt(color[1] * 100.0),
        fmt(color[2] * 100.0)
    )
}

/// Fixed six-decimal formatting with negative zero folded to zero.
fn fmt(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn escape_attr(s: &str) -> String {
    escape(s, true)
}

fn escape_text(s: &str) -> String {
    escape(s, false)
}

fn escape(s: &str, quotes: bool) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if quotes => out.push_str("&quot;"),
            _ => out.push(ch),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{compose_layout, LayoutParams};

    fn layout(n: usize, labels: usize, guides: bool) -> Document {
        compose_layout(&LayoutParams {
            n_squares: n,
            unit: 1.0,
            focal_labels: (1..=labels).map(|i| format!("focal-{i}")).collect(),
            include_guides: guides,
            seed: 0,
        })
        .unwrap()
    }

    fn count(haystack: &str, needle: &str) -> usize {
        haystack.matches(needle).count()
    }

    #[test]
    fn rendering_is_deterministic() {
        let doc = layout(8, 7, true);
        assert_eq!(render_svg(&doc), render_svg(&doc));
    }

    #[test]
    fn tiling_layer_emits_one_rect_per_square() {
        let doc = layout(4, 0, false);
        let svg = String::from_utf8(render_svg(&doc)).unwrap();
        // 4 squares plus 4 partial-bounds rectangles drawn as paths, not rects.
        assert_eq!(count(&svg, "<rect"), 4);
        assert_eq!(count(&svg, "id=\"layer-0-tiling\""), 1);
    }

    #[test]
    fn spiral_is_one_path_of_quarter_arcs_with_sweep_one() {
        let doc = layout(8, 0, false);
        let svg = String::from_utf8(render_svg(&doc)).unwrap();
        let group_start = svg.find("id=\"layer-2-spiral\"").unwrap();
        let tail = &svg[group_start..];
        let d_start = tail.find("<path d=\"").unwrap() + "<path d=\"".len();
        let d = &tail[d_start..d_start + tail[d_start..].find('"').unwrap()];
        assert_eq!(d.matches(" A ").count(), 8);
        assert_eq!(d.matches("M ").count(), 1);
        assert_eq!(d.matches(" 0 0 1 ").count(), 8);
    }

    #[test]
    fn y_axis_is_flipped() {
        // Unit square at the origin on a height-2 canvas lands at y = 1.
        let doc = Document {
            canvas: (2.0, 2.0),
            layers: vec![crate::document::Layer {
                payload: LayerPayload::Tiling(
                    crate::golden::build_fibonacci_tiling(1, 1.0).unwrap(),
                ),
                style: Default::default(),
            }],
            annotations: vec![],
        };
        let svg = String::from_utf8(render_svg(&doc)).unwrap();
        assert!(svg.contains("<rect x=\"0.000000\" y=\"1.000000\""));
    }

    #[test]
    fn metadata_carries_annotations_and_labels_are_escaped() {
        let mut doc = layout(5, 2, false);
        if let LayerPayload::Figure(f) = &mut doc.layers[4].payload {
            f.layers[0].label = "a<b&c\"d".into();
        } else {
            panic!("expected marker layer");
        }
        let svg = String::from_utf8(render_svg(&doc)).unwrap();
        assert!(svg.contains("<metadata id=\"annotations\">"));
        assert!(svg.contains("square_index"));
        assert!(svg.contains("data-label=\"a&lt;b&amp;c&quot;d\""));
        assert!(!svg.contains("a<b&c"));
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fmt(-0.0), "0.000000");
        assert_eq!(fmt(-1e-9), "0.000000");
        assert_eq!(fmt(0.5), "0.500000");
        assert_eq!(fmt(-0.25), "-0.250000");
    }

    #[test]
    fn empty_document_renders_a_bare_root() {
        let doc = Document {
            canvas: (10.0, 10.0),
            layers: vec![],
            annotations: vec![],
        };
        let svg = String::from_utf8(render_svg(&doc)).unwrap();
        assert!(svg.starts_with("<?xml version=\"1.0\""));
        assert!(svg.contains("<g id=\"root\""));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<metadata"));
    }
}
