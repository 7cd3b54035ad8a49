//! The Fibonacci square tiling: squares of side F(1), F(2), ... wound
//! counterclockwise so that after k squares they tile an F(k) x F(k+1)
//! rectangle exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Rect};

/// One square of the tiling. `index` is 1-based and its side is
/// `F(index) * unit`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Square {
    /// Lower-left corner.
    pub origin: Point2,
    pub side: f64,
    pub index: usize,
}

impl Square {
    pub fn rect(&self) -> Rect {
        Rect {
            x0: self.origin.x,
            y0: self.origin.y,
            x1: self.origin.x + self.side,
            y1: self.origin.y + self.side,
        }
    }
}

/// A wound Fibonacci tiling together with its bounding rectangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tiling {
    pub squares: Vec<Square>,
    pub bounds: Rect,
    /// Side of the first (unit) square in user coordinates.
    pub unit: f64,
}

/// Attachment sides, cycled from the second square on.
const SIDES: [Side; 4] = [Side::Right, Side::Below, Side::Left, Side::Above];

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Right,
    Below,
    Left,
    Above,
}

/// The same tiling in integer units (unit square has side 1). Exact
/// arithmetic here is what lets the public f64 tiling promise exact bounds.
pub(crate) struct IntTiling {
    /// (origin_x, origin_y, side) per square.
    pub squares: Vec<(i64, i64, i64)>,
    /// (x0, y0, x1, y1).
    pub bounds: (i64, i64, i64, i64),
}

pub(crate) fn build_int_tiling(n_squares: usize) -> IntTiling {
    let mut squares = Vec::with_capacity(n_squares);
    // Fibonacci sides F(1)..F(n). i64 is comfortable through n = 40.
    let (mut fa, mut fb) = (1i64, 1i64); // F(1), F(2)
    let mut bounds = (0i64, 0i64, 1i64, 1i64);
    for k in 1..=n_squares {
        let side = fa;
        let (x0, y0, x1, y1) = bounds;
        let origin = if k == 1 {
            (0, 0)
        } else {
            match SIDES[(k - 2) % 4] {
                Side::Right => (x1, y0),
                Side::Below => (x0, y0 - side),
                Side::Left => (x0 - side, y0),
                Side::Above => (x0, y1),
            }
        };
        squares.push((origin.0, origin.1, side));
        bounds = (
            x0.min(origin.0),
            y0.min(origin.1),
            x1.max(origin.0 + side),
            y1.max(origin.1 + side),
        );
        let next = fa + fb;
        fa = fb;
        fb = next;
    }
    IntTiling { squares, bounds }
}

/// Build the `n_squares`-square winding with the first square spanning
/// `[0, unit]^2`. Squares attach to the current bounding rectangle on the
/// right, below, left, above, ... in turn; because consecutive Fibonacci
/// numbers satisfy `F(k+1) = F(k) + F(k-1)`, each attachment fits the full
/// edge and the union stays a rectangle with sides `F(k) x F(k+1)`.
pub fn build_fibonacci_tiling(n_squares: usize, unit: f64) -> Result<Tiling> {
    if n_squares == 0 {
        return Err(Error::domain("tiling needs at least one square"));
    }
    if n_squares > 40 {
        return Err(Error::domain(format!(
            "tiling is capped at 40 squares to stay in exact f64 range, got {n_squares}"
        )));
    }
    if !(unit > 0.0 && unit.is_finite()) {
        return Err(Error::domain(format!("unit must be positive, got {unit}")));
    }
    let int = build_int_tiling(n_squares);
    let squares = int
        .squares
        .iter()
        .enumerate()
        .map(|(i, &(x, y, s))| Square {
            origin: Point2::new(x as f64 * unit, y as f64 * unit),
            side: s as f64 * unit,
            index: i + 1,
        })
        .collect();
    let (x0, y0, x1, y1) = int.bounds;
    Ok(Tiling {
        squares,
        bounds: Rect {
            x0: x0 as f64 * unit,
            y0: y0 as f64 * unit,
            x1: x1 as f64 * unit,
            y1: y1 as f64 * unit,
        },
        unit,
    })
}

impl Tiling {
    pub fn n_squares(&self) -> usize {
        self.squares.len()
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Tiling {
        Tiling {
            squares: self
                .squares
                .iter()
                .map(|s| Square {
                    origin: Point2::new(s.origin.x + dx, s.origin.y + dy),
                    ..*s
                })
                .collect(),
            bounds: self.bounds.translated(dx, dy),
            unit: self.unit,
        }
    }

    /// Structural sanity of a tiling that may have come from outside:
    /// 1-based contiguous indices, positive sides, squares inside bounds,
    /// and square areas summing to the bounds area (squares tile it).
    pub fn validate(&self) -> Result<()> {
        if self.squares.is_empty() {
            return Err(Error::Invariant("tiling has no squares".into()));
        }
        if !(self.unit > 0.0) {
            return Err(Error::Invariant("tiling unit must be positive".into()));
        }
        let mut area = 0.0;
        for (i, sq) in self.squares.iter().enumerate() {
            if sq.index != i + 1 {
                return Err(Error::Invariant(format!(
                    "square {} carries index {}",
                    i + 1,
                    sq.index
                )));
            }
            if !(sq.side > 0.0) {
                return Err(Error::Invariant(format!(
                    "square {} has non-positive side",
                    sq.index
                )));
            }
            let r = sq.rect();
            // Corner coordinates are products of large integers with the
            // unit, so the slack must track the ulp at that magnitude, not
            // just the unit itself.
            let extent = self.bounds.width().max(self.bounds.height());
            let eps = (1e-9 * self.unit).max(16.0 * f64::EPSILON * extent);
            if r.x0 < self.bounds.x0 - eps
                || r.y0 < self.bounds.y0 - eps
                || r.x1 > self.bounds.x1 + eps
                || r.y1 > self.bounds.y1 + eps
            {
                return Err(Error::Invariant(format!(
                    "square {} escapes the bounding rectangle",
                    sq.index
                )));
            }
            area += r.area();
        }
        let total = self.bounds.area();
        if (area - total).abs() > 1e-9 * total.max(1.0) {
            return Err(Error::Invariant(format!(
                "square areas sum to {area}, bounds area is {total}"
            )));
        }
        Ok(())
    }

    /// Bounding rectangles of the partial tilings (first k squares for
    /// k = 1..=n), in user coordinates.
    pub fn partial_bounds(&self) -> Vec<Rect> {
        let mut out = Vec::with_capacity(self.squares.len());
        let mut acc: Option<Rect> = None;
        for sq in &self.squares {
            let r = sq.rect();
            acc = Some(match acc {
                None => r,
                Some(prev) => prev.union(&r),
            });
            out.push(acc.unwrap());
        }
        out
    }
}
