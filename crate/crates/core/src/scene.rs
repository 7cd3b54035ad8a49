//! Planar scenes assembled from canonical prototypes under
//! translate ∘ rotate ∘ scale placements, rasterized additively on the unit
//! square.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{AffineMap2, Point2, Rect};
use crate::raster::RasterField;

/// Canonical shapes, all defined near the origin:
/// the unit disk, the unit segment from (0,0) to (1,0), the right triangle
/// (0,0)-(1,0)-(0,1), and arbitrary simple polygons in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Prototype {
    Disk,
    Segment,
    Triangle,
    Polygon { points: Vec<Point2> },
}

impl Prototype {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Prototype::Disk => "disk",
            Prototype::Segment => "segment",
            Prototype::Triangle => "triangle",
            Prototype::Polygon { .. } => "polygon",
        }
    }

    /// Membership test in canonical coordinates. The segment is a measure-
    /// zero set: only points exactly on it count, so it shows up in vector
    /// output but (generically) not in rasters.
    fn contains(&self, p: Point2) -> bool {
        match self {
            Prototype::Disk => p.x * p.x + p.y * p.y <= 1.0,
            Prototype::Segment => p.y == 0.0 && (0.0..=1.0).contains(&p.x),
            Prototype::Triangle => p.x >= 0.0 && p.y >= 0.0 && p.x + p.y <= 1.0,
            Prototype::Polygon { points } => {
                // Even-odd rule with a ray toward +x.
                let mut inside = false;
                let n = points.len();
                for i in 0..n {
                    let a = points[i];
                    let b = points[(i + 1) % n];
                    if (a.y > p.y) != (b.y > p.y) {
                        let t = (p.y - a.y) / (b.y - a.y);
                        if p.x < a.x + t * (b.x - a.x) {
                            inside = !inside;
                        }
                    }
                }
                inside
            }
        }
    }
}

/// A prototype with its placement (applied scale, then rotation, then
/// translation) and an rgb color in [0,1]^3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneElement {
    pub prototype: Prototype,
    #[serde(default)]
    pub translate: [f64; 2],
    #[serde(default)]
    pub rotate: f64,
    #[serde(default = "default_scale")]
    pub scale: [f64; 2],
    #[serde(default = "default_color")]
    pub color: [f64; 3],
}

fn default_scale() -> [f64; 2] {
    [1.0, 1.0]
}

fn default_color() -> [f64; 3] {
    [1.0, 1.0, 1.0]
}

impl SceneElement {
    /// The placement map `T ∘ R ∘ S`.
    pub fn placement(&self) -> AffineMap2 {
        AffineMap2::translation(self.translate[0], self.translate[1])
            .compose(&AffineMap2::rotation(self.rotate))
            .compose(&AffineMap2::scaling(self.scale[0], self.scale[1]))
    }

    fn validate(&self, index: usize) -> Result<()> {
        if self.scale[0] * self.scale[1] == 0.0 || !self.scale.iter().all(|s| s.is_finite()) {
            return Err(Error::domain(format!(
                "element {index}: scale {:?} is singular",
                self.scale
            )));
        }
        if !self.rotate.is_finite() || !self.translate.iter().all(|t| t.is_finite()) {
            return Err(Error::domain(format!(
                "element {index}: placement is not finite"
            )));
        }
        for &c in &self.color {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::domain(format!(
                    "element {index}: color component {c} outside [0, 1]"
                )));
            }
        }
        if let Prototype::Polygon { points } = &self.prototype {
            validate_simple_polygon(points, index)?;
        }
        Ok(())
    }
}

/// A validated list of placed elements on the unit-square canvas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SceneSpec", into = "SceneSpec")]
pub struct Scene {
    elements: Vec<SceneElement>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SceneSpec {
    elements: Vec<SceneElement>,
}

impl From<Scene> for SceneSpec {
    fn from(s: Scene) -> Self {
        SceneSpec {
            elements: s.elements,
        }
    }
}

impl TryFrom<SceneSpec> for Scene {
    type Error = Error;
    fn try_from(spec: SceneSpec) -> Result<Self> {
        build_scene(spec.elements)
    }
}

impl Scene {
    pub fn elements(&self) -> &[SceneElement] {
        &self.elements
    }
}

/// Validate and assemble a scene: nonsingular scales, colors in range,
/// polygons simple (no self-intersection, no degenerate edges).
pub fn build_scene(elements: Vec<SceneElement>) -> Result<Scene> {
    if elements.is_empty() {
        return Err(Error::domain("a scene needs at least one element"));
    }
    for (i, e) in elements.iter().enumerate() {
        e.validate(i)?;
    }
    Ok(Scene { elements })
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    orient(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test (touching counts).
fn segments_intersect(p1: Point2, p2: Point2, p3: Point2, p4: Point2) -> bool {
    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p3, p4, p1))
        || (d2 == 0.0 && on_segment(p3, p4, p2))
        || (d3 == 0.0 && on_segment(p1, p2, p3))
        || (d4 == 0.0 && on_segment(p1, p2, p4))
}

fn validate_simple_polygon(points: &[Point2], index: usize) -> Result<()> {
    let n = points.len();
    if n < 3 {
        return Err(Error::domain(format!(
            "element {index}: polygon needs at least 3 vertices, got {n}"
        )));
    }
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        if a == b {
            return Err(Error::domain(format!(
                "element {index}: polygon edge {i} has zero length"
            )));
        }
    }
    for i in 0..n {
        let (a1, a2) = (points[i], points[(i + 1) % n]);
        for j in (i + 1)..n {
            let (b1, b2) = (points[j], points[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Sharing an endpoint is fine; folding back along the same
                // line (a spike) is not.
                let shared = if j == i + 1 { a2 } else { a1 };
                let (tail_a, tail_b) = if j == i + 1 { (a1, b2) } else { (a2, b1) };
                if orient(tail_a, shared, tail_b) == 0.0
                    && (tail_a - shared).dot(tail_b - shared) > 0.0
                {
                    return Err(Error::domain(format!(
                        "element {index}: polygon folds back on itself at vertex {j}"
                    )));
                }
                continue;
            }
            if segments_intersect(a1, a2, b1, b2) {
                return Err(Error::domain(format!(
                    "element {index}: polygon edges {i} and {j} intersect"
                )));
            }
        }
    }
    Ok(())
}

/// Rasterize the scene by cell-center membership on a `grid x grid` rgb
/// field over the unit square: each covering element adds its color; the
/// result is clamped to [0, 1].
pub fn rasterize_scene(scene: &Scene, grid: usize) -> Result<RasterField> {
    if grid < 8 {
        return Err(Error::domain(format!("scene grids start at 8, got {grid}")));
    }
    let bounds = Rect::new(0.0, 0.0, 1.0, 1.0).expect("unit square");
    let mut field = RasterField::zeros(bounds, grid, 3)?;
    let inverses: Vec<AffineMap2> = scene
        .elements
        .iter()
        .map(|e| {
            e.placement()
                .inverse()
                .expect("validated to be nonsingular")
        })
        .collect();
    for iy in 0..grid {
        for ix in 0..grid {
            let p = field.cell_center(ix, iy);
            for (e, inv) in scene.elements.iter().zip(&inverses) {
                if e.prototype.contains(inv.apply(p)) {
                    for c in 0..3 {
                        field.add_at(ix, iy, c, e.color[c]);
                    }
                }
            }
        }
    }
    for v in field.as_mut_slice() {
        *v = v.clamp(0.0, 1.0);
    }
    Ok(field)
}

/// Indicator field (0/1, single channel) of one element on the scene canvas.
pub fn rasterize_indicator(element: &SceneElement, grid: usize) -> Result<RasterField> {
    if grid < 8 {
        return Err(Error::domain(format!("scene grids start at 8, got {grid}")));
    }
    let bounds = Rect::new(0.0, 0.0, 1.0, 1.0).expect("unit square");
    let mut field = RasterField::zeros(bounds, grid, 1)?;
    let inv = element
        .placement()
        .inverse()
        .map_err(|_| Error::domain("element placement is singular"))?;
    for iy in 0..grid {
        for ix in 0..grid {
            let p = field.cell_center(ix, iy);
            if element.prototype.contains(inv.apply(p)) {
                field.set(ix, iy, 0, 1.0);
            }
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(cx: f64, cy: f64, r: f64, color: [f64; 3]) -> SceneElement {
        SceneElement {
            prototype: Prototype::Disk,
            translate: [cx, cy],
            rotate: 0.0,
            scale: [r, r],
            color,
        }
    }

    #[test]
    fn placement_applies_scale_rotation_translation_in_order() {
        let e = SceneElement {
            prototype: Prototype::Segment,
            translate: [0.5, 0.5],
            rotate: std::f64::consts::FRAC_PI_2,
            scale: [2.0, 1.0],
            color: [1.0, 1.0, 1.0],
        };
        let p = e.placement().apply(Point2::new(1.0, 0.0));
        // (1,0) -S-> (2,0) -R-> (0,2) -T-> (0.5, 2.5)
        assert!(p.dist(Point2::new(0.5, 2.5)) < 1e-12);
    }

    #[test]
    fn build_scene_validates_elements() {
        assert!(build_scene(vec![]).is_err());
        let mut bad = disk(0.5, 0.5, 0.2, [1.0, 0.0, 0.0]);
        bad.scale = [0.0, 1.0];
        assert!(build_scene(vec![bad]).is_err());
        let mut bad = disk(0.5, 0.5, 0.2, [1.0, 0.0, 1.5]);
        bad.color = [1.0, 0.0, 1.5];
        assert!(build_scene(vec![bad]).is_err());
    }

    #[test]
    fn polygons_must_be_simple() {
        let square = Prototype::Polygon {
            points: vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ],
        };
        let bowtie = Prototype::Polygon {
            points: vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
            ],
        };
        let too_few = Prototype::Polygon {
            points: vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)],
        };
        let ok = SceneElement {
            prototype: square,
            ..disk(0.0, 0.0, 1.0, [0.5; 3])
        };
        assert!(build_scene(vec![ok]).is_ok());
        let bad = SceneElement {
            prototype: bowtie,
            ..disk(0.0, 0.0, 1.0, [0.5; 3])
        };
        assert!(build_scene(vec![bad]).is_err());
        let bad = SceneElement {
            prototype: too_few,
            ..disk(0.0, 0.0, 1.0, [0.5; 3])
        };
        assert!(build_scene(vec![bad]).is_err());
    }

    #[test]
    fn scene_json_round_trips_with_defaults() {
        let json = r#"{"elements":[
            {"prototype":{"kind":"disk"},"translate":[0.5,0.5],"scale":[0.25,0.25],"color":[1,0,0]},
            {"prototype":{"kind":"triangle"}}
        ]}"#;
        let scene: Scene = serde_json::from_str(json).unwrap();
        assert_eq!(scene.elements().len(), 2);
        assert_eq!(scene.elements()[1].scale, [1.0, 1.0]);
        assert_eq!(scene.elements()[1].color, [1.0, 1.0, 1.0]);
        let back: Scene = serde_json::from_str(&serde_json::to_string(&scene).unwrap()).unwrap();
        assert_eq!(scene, back);
        // Bowtie polygons fail at parse time.
        let bad = r#"{"elements":[{"prototype":{"kind":"polygon","points":
            [{"x":0,"y":0},{"x":1,"y":1},{"x":1,"y":0},{"x":0,"y":1}]}}]}"#;
        assert!(serde_json::from_str::<Scene>(bad).is_err());
    }

    #[test]
    fn disk_coverage_approximates_its_area() {
        let scene = build_scene(vec![disk(0.5, 0.5, 0.25, [1.0, 1.0, 1.0])]).unwrap();
        let f = rasterize_scene(&scene, 64).unwrap();
        let covered = f.as_slice().iter().filter(|&&v| v > 0.0).count() / 3;
        let frac = covered as f64 / (64.0 * 64.0);
        let area = std::f64::consts::PI * 0.25 * 0.25;
        assert!(
            (frac - area).abs() < 0.03,
            "covered fraction {frac} vs area {area}"
        );
    }

    #[test]
    fn triangle_membership_counts_exactly() {
        let tri = SceneElement {
            prototype: Prototype::Triangle,
            ..disk(0.0, 0.0, 1.0, [1.0, 1.0, 1.0])
        };
        let f = rasterize_indicator(&tri, 8).unwrap();
        // Centers (i+0.5)/8: x + y <= 1 exactly when i + j <= 7.
        assert_eq!(f.sum() as usize, 36);
    }

    #[test]
    fn additive_color_clamps_at_one() {
        let scene = build_scene(vec![
            disk(0.5, 0.5, 0.3, [0.8, 0.2, 0.0]),
            disk(0.5, 0.5, 0.3, [0.8, 0.2, 0.0]),
        ])
        .unwrap();
        let f = rasterize_scene(&scene, 16).unwrap();
        let center = f.cell_of(Point2::new(0.5, 0.5)).unwrap();
        assert_eq!(f.get(center.0, center.1, 0), 1.0);
        assert!((f.get(center.0, center.1, 1) - 0.4).abs() < 1e-12);
        assert_eq!(f.get(center.0, center.1, 2), 0.0);
    }

    #[test]
    fn rasterization_is_deterministic() {
        let scene = build_scene(vec![
            disk(0.3, 0.4, 0.2, [0.9, 0.1, 0.3]),
            SceneElement {
                prototype: Prototype::Triangle,
                translate: [0.5, 0.1],
                rotate: 0.7,
                scale: [0.4, 0.6],
                color: [0.0, 0.5, 0.5],
            },
        ])
        .unwrap();
        let a = rasterize_scene(&scene, 32).unwrap();
        let b = rasterize_scene(&scene, 32).unwrap();
        assert_eq!(a, b);
        assert!(rasterize_scene(&scene, 4).is_err());
    }
}
