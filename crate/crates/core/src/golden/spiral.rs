//! The golden spiral, twice over: as the chain of quarter-circle arcs
//! inscribed in a Fibonacci tiling, and as the smooth logarithmic spiral
//! `r = a e^(b theta)` with `b = ln(phi) / (pi/2)` that the chain
//! approximates.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::fib::PHI;
use crate::geom::{line_intersection, Point2, Rect};
use crate::golden::tiling::Tiling;

/// A quarter-circle arc, swept clockwise (angles decrease by pi/2).
///
/// `start` and `end` are cached alongside the polar data: they are corners of
/// the tiling's integer grid and are computed exactly there, so consecutive
/// arcs of a chain share endpoint *bits*, not just approximate positions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub center: Point2,
    pub radius: f64,
    /// Angle of `start` seen from `center`, in radians. Multiples of pi/2,
    /// left cumulative (not reduced mod 2 pi) so the winding stays visible.
    pub start_angle: f64,
    /// `start_angle - pi/2`.
    pub end_angle: f64,
    pub start: Point2,
    pub end: Point2,
}

impl Arc {
    pub fn start_point(&self) -> Point2 {
        self.start
    }

    pub fn end_point(&self) -> Point2 {
        self.end
    }

    /// Point at `frac` of the way from `start_angle` to `end_angle`.
    pub fn point_at(&self, frac: f64) -> Point2 {
        let theta = self.start_angle + (self.end_angle - self.start_angle) * frac;
        Point2::new(
            self.center.x + self.radius * theta.cos(),
            self.center.y + self.radius * theta.sin(),
        )
    }

    fn translated(&self, dx: f64, dy: f64) -> Arc {
        let d = Point2::new(dx, dy);
        Arc {
            center: self.center + d,
            start: self.start + d,
            end: self.end + d,
            ..*self
        }
    }
}

/// A connected chain of quarter arcs with the shared endpoints listed as
/// `junctions` (one fewer than arcs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcChain {
    pub arcs: Vec<Arc>,
    pub junctions: Vec<Point2>,
}

impl ArcChain {
    pub fn translated(&self, dx: f64, dy: f64) -> ArcChain {
        ArcChain {
            arcs: self.arcs.iter().map(|a| a.translated(dx, dy)).collect(),
            junctions: self
                .junctions
                .iter()
                .map(|j| *j + Point2::new(dx, dy))
                .collect(),
        }
    }

    /// Total angle swept, in radians (a quarter turn per arc).
    pub fn total_turning(&self) -> f64 {
        self.arcs.len() as f64 * FRAC_PI_2
    }
}

/// Unit vector at `q` quarter turns, exactly.
fn quarter_vec(q: i64) -> (i64, i64) {
    match q.rem_euclid(4) {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    }
}

/// Inscribe the quarter-arc spiral in a Fibonacci tiling.
///
/// Arc `k` lives in square `k`, centered on the square corner that faces the
/// winding: the bottom-right corner for the seed square, then bottom-left,
/// top-left, top-right, bottom-right, ... as the attachment side cycles.
/// Start angles fall by a quarter turn per square, beginning at pi. All
/// endpoint arithmetic happens on the tiling's integer grid, so the chain is
/// continuous to the last bit and `junctions` are exact grid corners.
pub fn spiral_from_tiling(t: &Tiling) -> Result<ArcChain> {
    t.validate()?;
    let unit = t.unit;
    // Recover the integer-grid representation; a tiling that is not on the
    // grid did not come from build_fibonacci_tiling.
    let mut grid = Vec::with_capacity(t.squares.len());
    for sq in &t.squares {
        let gx = (sq.origin.x / unit).round();
        let gy = (sq.origin.y / unit).round();
        let gs = (sq.side / unit).round();
        let err = ((gx * unit - sq.origin.x).abs())
            .max((gy * unit - sq.origin.y).abs())
            .max((gs * unit - sq.side).abs());
        if err > 1e-6 * unit {
            return Err(Error::Invariant(format!(
                "square {} is off the Fibonacci integer grid",
                sq.index
            )));
        }
        grid.push((gx as i64, gy as i64, gs as i64));
    }

    let mut arcs = Vec::with_capacity(grid.len());
    let mut prev_end: Option<(i64, i64)> = None;
    let mut junctions = Vec::new();
    for (i, &(x, y, s)) in grid.iter().enumerate() {
        let k = i + 1;
        // Corner carrying the arc center, cycling with the attachment side.
        let (cx, cy) = if k == 1 {
            (x + s, y) // bottom-right of the seed square
        } else {
            match (k - 2) % 4 {
                0 => (x, y),         // attached right  -> bottom-left
                1 => (x, y + s),     // attached below  -> top-left
                2 => (x + s, y + s), // attached left   -> top-right
                _ => (x + s, y),     // attached above  -> bottom-right
            }
        };
        let q = 3 - k as i64; // start at quarter 2 (angle pi), then fall
        let (ux, uy) = quarter_vec(q);
        let (vx, vy) = quarter_vec(q - 1);
        let start_i = (cx + s * ux, cy + s * uy);
        let end_i = (cx + s * vx, cy + s * vy);
        if let Some(prev) = prev_end {
            if prev != start_i {
                return Err(Error::Invariant(format!(
                    "arc {k} does not continue the chain: expected start {prev:?}, got {start_i:?}"
                )));
            }
            junctions.push(Point2::new(
                start_i.0 as f64 * unit,
                start_i.1 as f64 * unit,
            ));
        }
        prev_end = Some(end_i);
        arcs.push(Arc {
            center: Point2::new(cx as f64 * unit, cy as f64 * unit),
            radius: s as f64 * unit,
            start_angle: q as f64 * FRAC_PI_2,
            end_angle: (q - 1) as f64 * FRAC_PI_2,
            start: Point2::new(start_i.0 as f64 * unit, start_i.1 as f64 * unit),
            end: Point2::new(end_i.0 as f64 * unit, end_i.1 as f64 * unit),
        });
    }
    Ok(ArcChain { arcs, junctions })
}

/// Estimate the spiral's pole (eye) from the last two bounding rectangles:
/// it is the intersection of their diagonals, taking in each rectangle the
/// diagonal that avoids the corner where the spiral currently ends.
pub fn spiral_pole(t: &Tiling) -> Result<Point2> {
    let n = t.n_squares();
    if n < 2 {
        return Err(Error::domain("pole estimate needs at least two squares"));
    }
    let chain = spiral_from_tiling(t)?;
    let parts = t.partial_bounds();
    let eps = 1e-6 * t.unit;
    let diagonal = |r: &Rect, avoid: Point2| -> Result<(Point2, Point2)> {
        let bl = Point2::new(r.x0, r.y0);
        let br = Point2::new(r.x1, r.y0);
        let tr = Point2::new(r.x1, r.y1);
        let tl = Point2::new(r.x0, r.y1);
        if avoid.dist(bl) < eps || avoid.dist(tr) < eps {
            Ok((br, tl))
        } else if avoid.dist(br) < eps || avoid.dist(tl) < eps {
            Ok((bl, tr))
        } else {
            Err(Error::Invariant(
                "spiral endpoint is not a corner of its bounding rectangle".into(),
            ))
        }
    };
    let d1 = diagonal(&parts[n - 2], chain.arcs[n - 2].end)?;
    let d2 = diagonal(&parts[n - 1], chain.arcs[n - 1].end)?;
    line_intersection(d1.0, d1.1, d2.0, d2.1)
}

/// Ratios of successive junction distances from `pole`. For a well-formed
/// golden spiral these approach phi (junctions sit a quarter turn apart).
pub fn junction_distance_ratios(chain: &ArcChain, pole: Point2) -> Vec<f64> {
    let d: Vec<f64> = chain.junctions.iter().map(|j| j.dist(pole)).collect();
    d.windows(2).map(|w| w[1] / w[0]).collect()
}

/// Growth rate of the golden logarithmic spiral: `ln(phi) / (pi/2)`, i.e.
/// the radius gains a factor of phi per quarter turn.
pub fn golden_b() -> f64 {
    PHI.ln() / FRAC_PI_2
}

/// Sample the golden logarithmic spiral `r = a e^(b theta)` at `steps`
/// equally spaced angles spanning `[theta0, theta1]`.
pub fn golden_log_spiral(a: f64, theta0: f64, theta1: f64, steps: usize) -> Result<Vec<Point2>> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("scale a must be positive, got {a}")));
    }
    if !(theta1 > theta0) {
        return Err(Error::domain(format!(
            "need theta1 > theta0, got [{theta0}, {theta1}]"
        )));
    }
    if steps < 2 {
        return Err(Error::domain(format!(
            "need at least 2 samples, got {steps}"
        )));
    }
    let b = golden_b();
    let mut pts = Vec::with_capacity(steps);
    for i in 0..steps {
        let theta = theta0 + (theta1 - theta0) * i as f64 / (steps - 1) as f64;
        let r = a * (b * theta).exp();
        pts.push(Point2::new(r * theta.cos(), r * theta.sin()));
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::tiling::build_fibonacci_tiling;

    #[test]
    fn arcs_chain_bit_exactly() {
        for unit in [1.0, 0.37, 250.0] {
            let t = build_fibonacci_tiling(40, unit).unwrap();
            let chain = spiral_from_tiling(&t).unwrap();
            assert_eq!(chain.arcs.len(), 40);
            assert_eq!(chain.junctions.len(), 39);
            for w in chain.arcs.windows(2) {
                assert_eq!(w[0].end, w[1].start, "unit {unit}");
                assert_eq!(w[0].end_angle, w[1].start_angle);
            }
        }
    }

    #[test]
    fn seed_arc_runs_from_origin_to_top_right() {
        let t = build_fibonacci_tiling(2, 1.0).unwrap();
        let chain = spiral_from_tiling(&t).unwrap();
        let a0 = chain.arcs[0];
        assert_eq!(a0.center, Point2::new(1.0, 0.0));
        assert_eq!(a0.start, Point2::new(0.0, 0.0));
        assert_eq!(a0.end, Point2::new(1.0, 1.0));
        assert_eq!(a0.start_angle, std::f64::consts::PI);
        let a1 = chain.arcs[1];
        assert_eq!(a1.start, Point2::new(1.0, 1.0));
        assert_eq!(a1.end, Point2::new(2.0, 0.0));
    }

    #[test]
    fn each_arc_stays_in_its_square() {
        let t = build_fibonacci_tiling(12, 1.0).unwrap();
        let chain = spiral_from_tiling(&t).unwrap();
        for (arc, sq) in chain.arcs.iter().zip(&t.squares) {
            let r = sq.rect();
            for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let p = arc.point_at(frac);
                assert!(
                    r.x0 - 1e-9 <= p.x
                        && p.x <= r.x1 + 1e-9
                        && r.y0 - 1e-9 <= p.y
                        && p.y <= r.y1 + 1e-9,
                    "arc {} leaves square {} at frac {frac}: {p:?}",
                    sq.index,
                    sq.index
                );
            }
        }
    }

    #[test]
    fn radii_are_fibonacci() {
        let t = build_fibonacci_tiling(10, 2.0).unwrap();
        let chain = spiral_from_tiling(&t).unwrap();
        let radii: Vec<f64> = chain.arcs.iter().map(|a| a.radius).collect();
        assert_eq!(
            radii,
            vec![2.0, 2.0, 4.0, 6.0, 10.0, 16.0, 26.0, 42.0, 68.0, 110.0]
        );
    }

    #[test]
    fn rejects_tilings_off_the_grid() {
        let mut t = build_fibonacci_tiling(5, 1.0).unwrap();
        t.squares[3].origin.x += 0.3;
        assert!(spiral_from_tiling(&t).is_err());
    }

    #[test]
    fn pole_of_eight_square_tiling_is_the_hand_computed_point() {
        // Diagonals of the 13x21 and 34x21 rectangles meet at (28/47, 9/47).
        let t = build_fibonacci_tiling(8, 1.0).unwrap();
        let pole = spiral_pole(&t).unwrap();
        assert!((pole.x - 28.0 / 47.0).abs() < 1e-12);
        assert!((pole.y - 9.0 / 47.0).abs() < 1e-12);
        assert!(spiral_pole(&build_fibonacci_tiling(1, 1.0).unwrap()).is_err());
    }

    #[test]
    fn junction_ratios_approach_phi() {
        let t = build_fibonacci_tiling(8, 1.0).unwrap();
        let chain = spiral_from_tiling(&t).unwrap();
        let pole = spiral_pole(&t).unwrap();
        let ratios = junction_distance_ratios(&chain, pole);
        assert_eq!(ratios.len(), 6);
        for r in &ratios[3..] {
            assert!((r - PHI).abs() < 0.01, "late ratio {r} strays from phi");
        }
    }

    #[test]
    fn log_spiral_gains_phi_per_quarter_turn() {
        let pts = golden_log_spiral(1.0, 0.0, std::f64::consts::TAU, 5).unwrap();
        assert_eq!(pts.len(), 5);
        for w in pts.windows(2) {
            let ratio = w[1].norm() / w[0].norm();
            assert!((ratio - PHI).abs() < 1e-12);
        }
        assert!(golden_log_spiral(0.0, 0.0, 1.0, 5).is_err());
        assert!(golden_log_spiral(1.0, 1.0, 0.0, 5).is_err());
        assert!(golden_log_spiral(1.0, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn growth_rate_matches_phi_per_quarter() {
        assert!((golden_b() * FRAC_PI_2 - PHI.ln()).abs() < 1e-15);
    }
}
