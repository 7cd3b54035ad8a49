//! Generative geometry grounded in the golden ratio.
//!
//! The crate is organized around six mostly-independent pillars:
//!
//! * [`fib`] — exact Fibonacci/Lucas arithmetic on big integers, plus the
//!   number-theoretic identities the rest of the crate leans on.
//! * [`golden`] — Fibonacci square tilings, the quarter-arc golden spiral,
//!   canvas guide systems, exponential decay fits, and spacing scores.
//! * [`substitution`] — the Fibonacci word `a -> ab`, `b -> a` and the
//!   one-dimensional quasiperiodic chains it generates.
//! * [`ifs`] — affine iterated function systems: contractivity checks,
//!   Moran dimension, chaos-game sampling, and invariant-measure rasters.
//! * [`projection`] / [`scene`] — n-cube wireframes under composed plane
//!   rotations, flattened and superposed into weighted layers; planar scenes
//!   assembled from canonical prototypes.
//! * [`frame`] — finite frame analysis of rasterized scenes: Gram matrices,
//!   canonical duals, and erasure/reconstruction experiments.
//!
//! [`document`] and [`svg`] tie the pillars together into a layered render
//! document and a deterministic SVG writer; [`raster`] holds the shared
//! scalar-field type and its PGM encoder.

// `!(x > 0.0)` rejects NaN along with the out-of-range values; `x <= 0.0`
// would silently wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod document;
pub mod error;
pub mod fib;
pub mod frame;
pub mod geom;
pub mod golden;
pub mod ifs;
pub mod projection;
pub mod raster;
pub mod scene;
pub mod substitution;
pub mod svg;

pub use document::{Document, GradientHint, Layer, LayerPayload, LayoutParams, Style};
pub use error::{Error, Result};
pub use geom::{AffineMap2, Point2, Rect, Segment};
pub use raster::RasterField;
