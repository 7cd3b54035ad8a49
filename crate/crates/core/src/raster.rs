//! Scalar fields on a square grid over an axis-aligned box, shared by the
//! IFS, scene, and frame modules, plus a binary 16-bit PGM encoder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Rect};

/// A `grid x grid` field of f64 samples over `bounds`, with 1 (scalar) or
/// 3 (rgb) channels.
///
/// Data is row-major from the bottom row up: `data[(iy * grid + ix) * channels + c]`
/// covers the cell whose center is `cell_center(ix, iy)`; `iy = 0` is the
/// row touching `bounds.y0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RasterRepr", into = "RasterRepr")]
pub struct RasterField {
    bounds: Rect,
    grid: usize,
    channels: usize,
    data: Vec<f64>,
}

/// Serde-facing mirror of [`RasterField`]; deserialization re-validates the
/// length invariant.
#[derive(Serialize, Deserialize)]
struct RasterRepr {
    bounds: Rect,
    grid: usize,
    channels: usize,
    data: Vec<f64>,
}

impl From<RasterField> for RasterRepr {
    fn from(f: RasterField) -> Self {
        RasterRepr {
            bounds: f.bounds,
            grid: f.grid,
            channels: f.channels,
            data: f.data,
        }
    }
}

impl TryFrom<RasterRepr> for RasterField {
    type Error = Error;
    fn try_from(r: RasterRepr) -> Result<Self> {
        let f = RasterField::zeros(r.bounds, r.grid, r.channels)?;
        if r.data.len() != f.data.len() {
            return Err(Error::GridMismatch(format!(
                "raster data has {} samples, grid wants {}",
                r.data.len(),
                f.data.len()
            )));
        }
        Ok(RasterField { data: r.data, ..f })
    }
}

impl RasterField {
    pub fn zeros(bounds: Rect, grid: usize, channels: usize) -> Result<Self> {
        if grid == 0 {
            return Err(Error::domain("grid must have at least one cell"));
        }
        if grid > 4096 {
            return Err(Error::SizeLimit(format!(
                "grid is capped at 4096, got {grid}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::domain(format!(
                "rasters carry 1 or 3 channels, got {channels}"
            )));
        }
        if !(bounds.width() > 0.0 && bounds.height() > 0.0) {
            return Err(Error::domain("raster bounds must have positive area"));
        }
        Ok(RasterField {
            bounds,
            grid,
            channels,
            data: vec![0.0; grid * grid * channels],
        })
    }

    pub fn bounds(&self) -> Rect {
        self.bounds
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    fn idx(&self, ix: usize, iy: usize, c: usize) -> usize {
        (iy * self.grid + ix) * self.channels + c
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize, c: usize) -> f64 {
        self.data[self.idx(ix, iy, c)]
    }

    #[inline]
    pub fn set(&mut self, ix: usize, iy: usize, c: usize, v: f64) {
        let i = self.idx(ix, iy, c);
        self.data[i] = v;
    }

    #[inline]
    pub fn add_at(&mut self, ix: usize, iy: usize, c: usize, v: f64) {
        let i = self.idx(ix, iy, c);
        self.data[i] += v;
    }

    pub fn cell_center(&self, ix: usize, iy: usize) -> Point2 {
        let g = self.grid as f64;
        Point2::new(
            self.bounds.x0 + self.bounds.width() * (ix as f64 + 0.5) / g,
            self.bounds.y0 + self.bounds.height() * (iy as f64 + 0.5) / g,
        )
    }

    /// Cell containing `p`, or `None` if `p` falls outside the bounds.
    /// Points on the far edges belong to the last cell.
    pub fn cell_of(&self, p: Point2) -> Option<(usize, usize)> {
        if !self.bounds.contains(p) {
            return None;
        }
        let g = self.grid as f64;
        let tx = (p.x - self.bounds.x0) / self.bounds.width() * g;
        let ty = (p.y - self.bounds.y0) / self.bounds.height() * g;
        let ix = (tx.floor() as usize).min(self.grid - 1);
        let iy = (ty.floor() as usize).min(self.grid - 1);
        Some((ix, iy))
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    fn check_same_shape(&self, other: &RasterField) -> Result<()> {
        if self.grid != other.grid || self.channels != other.channels || self.bounds != other.bounds
        {
            return Err(Error::GridMismatch(format!(
                "shapes differ: {}x{} ch {} on {:?} vs {}x{} ch {} on {:?}",
                self.grid,
                self.grid,
                self.channels,
                self.bounds,
                other.grid,
                other.grid,
                other.channels,
                other.bounds
            )));
        }
        Ok(())
    }

    /// Sum of absolute sample differences.
    pub fn l1_distance(&self, other: &RasterField) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .sum())
    }

    /// Plain cell-sum inner product (single channel both sides).
    pub fn dot(&self, other: &RasterField) -> Result<f64> {
        self.check_same_shape(other)?;
        if self.channels != 1 {
            return Err(Error::domain("inner products are defined on scalar fields"));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn norm_l2(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: f64, other: &RasterField) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
        Ok(())
    }

    /// Collapse rgb to a scalar field by channel mean. Identity on scalars.
    pub fn to_luminance(&self) -> RasterField {
        if self.channels == 1 {
            return self.clone();
        }
        let mut out = RasterField::zeros(self.bounds, self.grid, 1).expect("same shape is valid");
        for iy in 0..self.grid {
            for ix in 0..self.grid {
                let m = (0..3).map(|c| self.get(ix, iy, c)).sum::<f64>() / 3.0;
                out.set(ix, iy, 0, m);
            }
        }
        out
    }

    /// Encode a scalar field as binary PGM (`P5`, 16-bit big-endian).
    ///
    /// Samples are clamped at 0, scaled so the field maximum maps to 65535
    /// (an all-zero field stays zero), and written top row first.
    pub fn to_pgm(&self) -> Result<Vec<u8>> {
        if self.channels != 1 {
            return Err(Error::domain(
                "PGM wants a scalar field; collapse channels first",
            ));
        }
        let max = self.data.iter().cloned().fold(0.0f64, f64::max);
        let scale = if max > 0.0 { 65535.0 / max } else { 0.0 };
        let mut out = Vec::with_capacity(32 + self.grid * self.grid * 2);
        out.extend_from_slice(format!("P5\n{} {}\n65535\n", self.grid, self.grid).as_bytes());
        for iy in (0..self.grid).rev() {
            for ix in 0..self.grid {
                let v = (self.get(ix, iy, 0).max(0.0) * scale).round() as u16;
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
        Ok(out)
    }
}
