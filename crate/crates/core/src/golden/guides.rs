//! Compositional guide systems for a rectangular canvas: golden-section
//! lines, rule-of-thirds lines, the two main diagonals, and a nest of golden
//! rectangles shrinking toward the canvas's primary phi-intersection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fib::PHI;
use crate::geom::{Point2, Rect, Segment};

/// Guide lines for a `canvas.0 x canvas.1` canvas with origin at the
/// bottom-left corner. Vertical guides are x-positions, horizontal guides
/// are y-positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuideSet {
    pub canvas: (f64, f64),
    /// `x = W/phi` and `x = W - W/phi`.
    pub phi_vertical: [f64; 2],
    /// `y = H/phi` and `y = H - H/phi`.
    pub phi_horizontal: [f64; 2],
    pub thirds_vertical: [f64; 2],
    pub thirds_horizontal: [f64; 2],
    /// Corner-to-corner diagonals.
    pub diagonals: [Segment; 2],
    /// Golden rectangles of width `W/phi^k`, k = 1..=depth, each anchored at
    /// the canvas corner nearest the primary phi-intersection.
    pub nested_rects: Vec<Rect>,
}

/// Build the guide set for a `width x height` canvas.
///
/// The primary phi-intersection `(W/phi, H/phi)` sits past the canvas
/// midpoint in both axes, so the nested rectangles anchor at the top-right
/// corner `(W, H)`.
pub fn phi_guides(width: f64, height: f64, depth: usize) -> Result<GuideSet> {
    if !(width > 0.0 && width.is_finite() && height > 0.0 && height.is_finite()) {
        return Err(Error::domain(format!(
            "canvas sides must be positive, got {width} x {height}"
        )));
    }
    if depth > 64 {
        return Err(Error::domain(format!(
            "guide depth is capped at 64, got {depth}"
        )));
    }
    let (w, h) = (width, height);
    let nested_rects = (1..=depth)
        .map(|k| {
            let rw = w / PHI.powi(k as i32);
            let rh = rw / PHI;
            Rect {
                x0: w - rw,
                y0: h - rh,
                x1: w,
                y1: h,
            }
        })
        .collect();
    Ok(GuideSet {
        canvas: (w, h),
        phi_vertical: [w / PHI, w - w / PHI],
        phi_horizontal: [h / PHI, h - h / PHI],
        thirds_vertical: [w / 3.0, 2.0 * w / 3.0],
        thirds_horizontal: [h / 3.0, 2.0 * h / 3.0],
        diagonals: [
            Segment::new(Point2::new(0.0, 0.0), Point2::new(w, h)),
            Segment::new(Point2::new(0.0, h), Point2::new(w, 0.0)),
        ],
        nested_rects,
    })
}
