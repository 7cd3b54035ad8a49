//! Golden-ratio planar constructions: the Fibonacci square tiling, the
//! quarter-arc spiral threaded through it, canvas guide systems, exponential
//! luminance-decay fitting, and Fibonacci spacing scores.

mod decay;
mod guides;
mod spacing;
mod spiral;
mod tiling;

pub use decay::{fit_exponential_decay, DecayModel};
pub use guides::{phi_guides, GuideSet};
pub use spacing::fibonacci_spacing_score;
pub use spiral::{
    golden_b, golden_log_spiral, junction_distance_ratios, spiral_from_tiling, spiral_pole, Arc,
    ArcChain,
};
pub use tiling::{build_fibonacci_tiling, Square, Tiling};
