//! End-to-end flows across module boundaries: layout to SVG, scene to frame
//! to erasure, chaos game to PGM, word to chain to inflation.

use aurea::document::{compose_layout, LayerPayload, LayoutParams};
use aurea::frame::{atoms_from_scene, compute_frame, erasure_test};
use aurea::geom::Rect;
use aurea::ifs::{chaos_game_sharded, rasterize_measure, IfsSpec, IfsSystem};
use aurea::raster::RasterField;
use aurea::scene::Scene;
use aurea::substitution::{build_chain, inflation_residual};
use aurea::svg::render_svg;

/// Minimal XML well-formedness check: balanced, properly nested tags.
/// Relies on the writer escaping `<` and `>` in attribute values and text.
fn assert_well_formed_xml(bytes: &[u8]) {
    let s = std::str::from_utf8(bytes).expect("svg must be utf-8");
    let mut stack: Vec<&str> = Vec::new();
    let mut rest = s;
    while let Some(lt) = rest.find('<') {
        rest = &rest[lt..];
        let gt = rest.find('>').expect("unclosed tag");
        let tag = &rest[1..gt];
        rest = &rest[gt + 1..];
        if tag.starts_with('?') || tag.starts_with('!') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().unwrap_or_else(|| panic!("stray </{name}>"));
            assert_eq!(open, name.trim(), "mismatched closing tag");
        } else if tag.ends_with('/') {
            // self-closing element
        } else {
            stack.push(tag.split_whitespace().next().expect("tag name"));
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}

/// Every alphabetic character inside a `d="…"` attribute must be one of the
/// documented path commands.
fn assert_path_subset(svg: &str) {
    let mut rest = svg;
    while let Some(pos) = rest.find("<path d=\"") {
        rest = &rest[pos + 9..];
        let end = rest.find('"').expect("unterminated d attribute");
        for ch in rest[..end].chars() {
            if ch.is_ascii_alphabetic() {
                assert!(
                    matches!(ch, 'M' | 'L' | 'A' | 'Z'),
                    "unexpected path command {ch:?}"
                );
            }
        }
        rest = &rest[end..];
    }
}

fn scene_json() -> &'static str {
    r#"{
        "elements": [
            {"prototype": {"kind": "disk"}, "translate": [0.35, 0.6], "scale": [0.25, 0.25], "color": [0.8, 0.2, 0.2]},
            {"prototype": {"kind": "triangle"}, "translate": [0.5, 0.15], "scale": [0.4, 0.5], "color": [0.2, 0.6, 0.9]},
            {"prototype": {"kind": "polygon", "points": [[0.0, 0.0], [1.0, 0.1], [0.8, 0.9], [0.1, 0.7]]},
             "translate": [0.1, 0.1], "scale": [0.55, 0.55], "color": [0.9, 0.8, 0.1]}
        ]
    }"#
}

#[test]
fn layout_to_svg_is_deterministic_and_well_formed() {
    let params = LayoutParams {
        n_squares: 8,
        unit: 1.0,
        focal_labels: (1..=7).map(|i| format!("focal-{i}")).collect(),
        include_guides: true,
        seed: 0,
    };
    let doc = compose_layout(&params).unwrap();
    let first = render_svg(&doc);
    let second = render_svg(&doc);
    assert_eq!(first, second);
    assert_well_formed_xml(&first);
    let text = String::from_utf8(first).unwrap();
    assert_path_subset(&text);
    // Group order preserves layer order.
    let mut last = 0;
    for (i, layer) in doc.layers.iter().enumerate() {
        let id = format!("id=\"layer-{}-{}\"", i, layer.payload.kind_name());
        let pos = text.find(&id).unwrap_or_else(|| panic!("{id} missing"));
        assert!(pos > last, "layer groups out of order");
        last = pos;
    }
}

#[test]
fn scene_to_frame_to_erasure_flow() {
    let scene: Scene = serde_json::from_str(scene_json()).unwrap();
    let atoms = atoms_from_scene(&scene, 32).unwrap();
    assert_eq!(atoms.labels()[0], "disk-0");
    let frame = compute_frame(&atoms).unwrap();
    assert!(frame.rank >= 1);

    // A field synthesized from the atoms must reconstruct on the span.
    let coeffs = vec![1.0; atoms.len()];
    let field = aurea::frame::synthesize(&coeffs, &atoms).unwrap();
    let recovered = aurea::frame::analyze(&field, &atoms).unwrap();
    let rebuilt = aurea::frame::synthesize(&recovered, &atoms).unwrap();
    let mut diff = rebuilt.clone();
    diff.axpy(-1.0, &field).unwrap();
    assert!(diff.norm_l2() <= 1e-8 * field.norm_l2());

    let report = erasure_test(&field, &atoms, &[2]).unwrap();
    assert_eq!(report.survivors, 2);
    assert_eq!(report.erased, vec![2]);
}

#[test]
fn chaos_game_to_measure_to_pgm_flow() {
    let spec: IfsSpec = serde_json::from_str(
        r#"{"maps": [
            [0.5, 0, 0, 0.5, 0, 0],
            [0.5, 0, 0, 0.5, 0.5, 0],
            [0.5, 0, 0, 0.5, 0.25, 0.5]
        ]}"#,
    )
    .unwrap();
    let sys = IfsSystem::try_from(spec).unwrap();
    let cloud = chaos_game_sharded(&sys, 40_000, 7, 32, 4).unwrap();
    let bounds = Rect::new(0.0, 0.0, 1.0, 1.0).unwrap();
    let measure = rasterize_measure(&cloud, bounds, 32).unwrap();
    assert!((measure.field.sum() - 1.0).abs() < 1e-9);
    let pgm = measure.field.to_pgm().unwrap();
    assert!(pgm.starts_with(b"P5\n32 32\n65535\n"));
    assert_eq!(pgm.len(), b"P5\n32 32\n65535\n".len() + 2 * 32 * 32);

    // Same seed, different sharding of the same chain count: byte-identical.
    let again = chaos_game_sharded(&sys, 40_000, 7, 32, 4).unwrap();
    assert_eq!(cloud.points, again.points);
}

#[test]
fn word_to_chain_to_inflation_flow() {
    let chain = build_chain(10).unwrap();
    assert_eq!(chain.tiles.len(), 144); // F(12)
    let report = inflation_residual(&chain, 1e-9).unwrap();
    assert_eq!(report.unmatched, 0);
    assert!(report.max_deviation <= 1e-9);
}

#[test]
fn scene_rasterization_feeds_the_luminance_pipeline() {
    let scene: Scene = serde_json::from_str(scene_json()).unwrap();
    let rgb = aurea::scene::rasterize_scene(&scene, 64).unwrap();
    let lum = rgb.to_luminance();
    assert_eq!(lum.channels(), 1);
    assert!(lum.sum() > 0.0);
    let pgm = lum.to_pgm().unwrap();
    assert!(pgm.starts_with(b"P5\n64 64\n65535\n"));
}

#[test]
fn documents_with_every_payload_kind_render_and_round_trip() {
    let mut doc = compose_layout(&LayoutParams {
        n_squares: 5,
        unit: 2.0,
        focal_labels: vec!["primary".into()],
        include_guides: true,
        seed: 0,
    })
    .unwrap();
    let scene: Scene = serde_json::from_str(scene_json()).unwrap();
    doc.layers.push(aurea::Layer {
        payload: LayerPayload::Scene(scene),
        style: aurea::Style::default(),
    });
    doc.layers.push(aurea::Layer {
        payload: LayerPayload::RasterRef("texture.pgm".into()),
        style: aurea::Style::default(),
    });
    let json = serde_json::to_string_pretty(&doc).unwrap();
    let back: aurea::Document = serde_json::from_str(&json).unwrap();
    assert_eq!(doc, back);
    let svg = render_svg(&doc);
    assert_well_formed_xml(&svg);
    let text = String::from_utf8(svg).unwrap();
    assert!(text.contains("<image"));
    assert!(text.contains("<circle"));
    assert_path_subset(&text);
}

#[test]
fn raster_json_survives_a_luminance_round_trip() {
    let mut field = RasterField::zeros(Rect::new(0.0, 0.0, 2.0, 1.0).unwrap(), 8, 3).unwrap();
    for (i, v) in field.as_mut_slice().iter_mut().enumerate() {
        *v = (i % 11) as f64 * 0.125;
    }
    let json = serde_json::to_string(&field).unwrap();
    let back: RasterField = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_luminance(), field.to_luminance());
}
