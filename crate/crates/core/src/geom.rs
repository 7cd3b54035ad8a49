//! Small planar-geometry vocabulary shared by every module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point (or vector) in the plane. Coordinates are mathematical:
/// x grows rightward, y grows upward.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, the signed area of the spanned
    /// parallelogram.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Closed line segment between two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }
}

/// Axis-aligned rectangle, stored as min/max corners with `x0 <= x1`,
/// `y0 <= y1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        if !(x0 <= x1 && y0 <= y1)
            || !(x0.is_finite() && y0.is_finite() && x1.is_finite() && y1.is_finite())
        {
            return Err(Error::domain(format!(
                "rectangle corners out of order: ({x0}, {y0})..({x1}, {y1})"
            )));
        }
        Ok(Rect { x0, y0, x1, y1 })
    }

    pub fn from_corner_and_size(origin: Point2, w: f64, h: f64) -> Result<Self> {
        Rect::new(origin.x, origin.y, origin.x + w, origin.y + h)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point2 {
        Point2::new((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }

    /// Smallest rectangle covering both operands.
    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            x0: self.x0.min(other.x0),
            y0: self.y0.min(other.y0),
            x1: self.x1.max(other.x1),
            y1: self.y1.max(other.y1),
        }
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Rect {
        Rect {
            x0: self.x0 + dx,
            y0: self.y0 + dy,
            x1: self.x1 + dx,
            y1: self.y1 + dy,
        }
    }
}

/// Affine map `p -> linear * p + offset` on the plane.
///
/// `linear` is row-major: `linear[i][j]` multiplies coordinate `j` of the
/// input to produce coordinate `i` of the output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap2 {
    pub linear: [[f64; 2]; 2],
    pub offset: [f64; 2],
}

impl AffineMap2 {
    pub fn new(linear: [[f64; 2]; 2], offset: [f64; 2]) -> Self {
        AffineMap2 { linear, offset }
    }

    /// Build from the flat row `[a, b, c, d, e, f]` meaning
    /// `x' = a x + b y + e`, `y' = c x + d y + f`.
    pub fn from_row(row: [f64; 6]) -> Self {
        AffineMap2 {
            linear: [[row[0], row[1]], [row[2], row[3]]],
            offset: [row[4], row[5]],
        }
    }

    pub fn identity() -> Self {
        AffineMap2::new([[1.0, 0.0], [0.0, 1.0]], [0.0, 0.0])
    }

    pub fn translation(tx: f64, ty: f64) -> Self {
        AffineMap2::new([[1.0, 0.0], [0.0, 1.0]], [tx, ty])
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        AffineMap2::new([[c, -s], [s, c]], [0.0, 0.0])
    }

    pub fn scaling(sx: f64, sy: f64) -> Self {
        AffineMap2::new([[sx, 0.0], [0.0, sy]], [0.0, 0.0])
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        Point2::new(
            self.linear[0][0] * p.x + self.linear[0][1] * p.y + self.offset[0],
            self.linear[1][0] * p.x + self.linear[1][1] * p.y + self.offset[1],
        )
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AffineMap2) -> AffineMap2 {
        let a = &self.linear;
        let b = &other.linear;
        let linear = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        // Offset of the composition is self.linear * other.offset + self.offset,
        // i.e. self applied to other's offset.
        let shifted = self.apply(Point2::new(other.offset[0], other.offset[1]));
        AffineMap2::new(linear, [shifted.x, shifted.y])
    }

    pub fn determinant(&self) -> f64 {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }

    pub fn inverse(&self) -> Result<AffineMap2> {
        let det = self.determinant();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::domain("affine map is singular, no inverse"));
        }
        let [[a, b], [c, d]] = self.linear;
        let inv = [[d / det, -b / det], [-c / det, a / det]];
        let ox = -(inv[0][0] * self.offset[0] + inv[0][1] * self.offset[1]);
        let oy = -(inv[1][0] * self.offset[0] + inv[1][1] * self.offset[1]);
        Ok(AffineMap2::new(inv, [ox, oy]))
    }

    /// Singular values of the linear part, largest first.
    ///
    /// Uses the closed form for 2x2 matrices: with
    /// `e = (a+d)/2`, `f = (a-d)/2`, `g = (c+b)/2`, `h = (c-b)/2`,
    /// the singular values are `hypot(e,h) ± hypot(f,g)`. This avoids an
    /// iterative SVD for the hot contractivity check.
    pub fn singular_values(&self) -> (f64, f64) {
        let [[a, b], [c, d]] = self.linear;
        let e = (a + d) / 2.0;
        let f = (a - d) / 2.0;
        let g = (c + b) / 2.0;
        let h = (c - b) / 2.0;
        let q = e.hypot(h);
        let r = f.hypot(g);
        (q + r, (q - r).abs())
    }

    /// Largest singular value; the Lipschitz constant of the map.
    pub fn operator_norm(&self) -> f64 {
        self.singular_values().0
    }
}

/// Intersection of the infinite lines through `(p1, p2)` and `(p3, p4)`.
pub fn line_intersection(p1: Point2, p2: Point2, p3: Point2, p4: Point2) -> Result<Point2> {
    let d1 = p2 - p1;
    let d2 = p4 - p3;
    let denom = d1.cross(d2);
    if denom == 0.0 {
        return Err(Error::domain("lines are parallel, no unique intersection"));
    }
    let t = (p3 - p1).cross(d2) / denom;
    Ok(p1 + d1 * t)
}
