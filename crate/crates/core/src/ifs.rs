//! Affine iterated function systems on the plane: validation, Moran
//! dimension, chaos-game sampling, and empirical invariant measures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{AffineMap2, Point2, Rect};
use crate::raster::RasterField;

/// A validated IFS: every map strictly contractive (largest singular value
/// below 1), probabilities positive and summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IfsSpec", into = "IfsSpec")]
pub struct IfsSystem {
    maps: Vec<AffineMap2>,
    probabilities: Vec<f64>,
}

/// JSON-facing shape: maps as flat rows `[a, b, c, d, e, f]` meaning
/// `x' = a x + b y + e`, `y' = c x + d y + f`. Probabilities default to
/// uniform when omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IfsSpec {
    pub maps: Vec<[f64; 6]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<Vec<f64>>,
}

impl From<IfsSystem> for IfsSpec {
    fn from(sys: IfsSystem) -> Self {
        IfsSpec {
            maps: sys
                .maps
                .iter()
                .map(|m| {
                    [
                        m.linear[0][0],
                        m.linear[0][1],
                        m.linear[1][0],
                        m.linear[1][1],
                        m.offset[0],
                        m.offset[1],
                    ]
                })
                .collect(),
            probabilities: Some(sys.probabilities),
        }
    }
}

impl TryFrom<IfsSpec> for IfsSystem {
    type Error = Error;
    fn try_from(spec: IfsSpec) -> Result<Self> {
        let maps: Vec<AffineMap2> = spec.maps.iter().map(|&r| AffineMap2::from_row(r)).collect();
        match spec.probabilities {
            Some(p) => IfsSystem::new(maps, p),
            None => IfsSystem::uniform(maps),
        }
    }
}

impl IfsSystem {
    pub fn new(maps: Vec<AffineMap2>, probabilities: Vec<f64>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::domain("an IFS needs at least one map"));
        }
        if probabilities.len() != maps.len() {
            return Err(Error::domain(format!(
                "{} maps but {} probabilities",
                maps.len(),
                probabilities.len()
            )));
        }
        for (index, m) in maps.iter().enumerate() {
            let sigma = m.operator_norm();
            if !(sigma < 1.0) {
                return Err(Error::NotContractive { index, sigma });
            }
        }
        let mut sum = 0.0;
        for &p in &probabilities {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::domain(format!(
                    "probabilities must be positive, got {p}"
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(IfsSystem {
            maps,
            probabilities,
        })
    }

    pub fn uniform(maps: Vec<AffineMap2>) -> Result<Self> {
        let n = maps.len();
        if n == 0 {
            return Err(Error::domain("an IFS needs at least one map"));
        }
        IfsSystem::new(maps, vec![1.0 / n as f64; n])
    }

    pub fn maps(&self) -> &[AffineMap2] {
        &self.maps
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Largest operator norm among the maps; strictly below 1.
    pub fn contraction_bound(&self) -> f64 {
        self.maps
            .iter()
            .map(|m| m.operator_norm())
            .fold(0.0, f64::max)
    }

    /// Radius of a disk around the origin that the attractor cannot leave:
    /// `max |offset| / (1 - contraction bound)`.
    pub fn confinement_radius(&self) -> f64 {
        let max_offset = self
            .maps
            .iter()
            .map(|m| m.offset[0].hypot(m.offset[1]))
            .fold(0.0, f64::max);
        max_offset / (1.0 - self.contraction_bound())
    }

    /// The square box of the confinement radius, a safe default raster box.
    pub fn confinement_box(&self) -> Rect {
        let r = self.confinement_radius().max(f64::MIN_POSITIVE);
        Rect {
            x0: -r,
            y0: -r,
            x1: r,
            y1: r,
        }
    }
}

/// Similarity dimension: the root of `sum r_i^d = 1`, found by bisection.
///
/// Ratios must lie strictly inside (0, 1). The bracket `[0, hi]` is verified
/// before refinement and the answer is pinned to an absolute interval width
/// of 1e-12, well within the promised 200 iterations.
pub fn moran_dimension(ratios: &[f64]) -> Result<f64> {
    if ratios.is_empty() {
        return Err(Error::domain("Moran equation needs at least one ratio"));
    }
    for &r in ratios {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::domain(format!(
                "contraction ratios must lie in (0, 1), got {r}"
            )));
        }
    }
    let f = |d: f64| ratios.iter().map(|r| r.powf(d)).sum::<f64>() - 1.0;
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut doublings = 0;
    while f(hi) > 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 64 {
            return Err(Error::Invariant("failed to bracket the Moran root".into()));
        }
    }
    if f(lo) < 0.0 {
        return Err(Error::Invariant(
            "Moran bracket lost its sign change".into(),
        ));
    }
    let mut iterations = 0;
    while hi - lo > 1e-12 {
        iterations += 1;
        if iterations >= 200 {
            return Err(Error::Invariant(
                "Moran bisection failed to converge in 200 iterations".into(),
            ));
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Points sampled from the chaos game, with enough provenance to reproduce
/// them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<Point2>,
    pub seed: u64,
    pub burn_in: usize,
    pub chains: usize,
    /// Name of the generator family ("chacha8").
    pub rng_algorithm: String,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-chain seed: a splitmix64 scramble of (seed, chain index). Chain 0 of
/// a 1-chain run reproduces the plain [`chaos_game`].
fn chain_seed(seed: u64, chain: usize) -> u64 {
    splitmix64(seed.wrapping_add((chain as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn run_chain(sys: &IfsSystem, seed: u64, n_points: usize, burn_in: usize) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Point2::ORIGIN;
    let step = |x: Point2, rng: &mut ChaCha8Rng| -> Point2 {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut pick = sys.maps.len() - 1;
        for (i, &p) in sys.probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                pick = i;
                break;
            }
        }
        sys.maps[pick].apply(x)
    };
    for _ in 0..burn_in {
        x = step(x, &mut rng);
    }
    let mut points = Vec::with_capacity(n_points);
    for _ in 0..n_points {
        x = step(x, &mut rng);
        points.push(x);
    }
    points
}

/// Run the chaos game from the origin: `burn_in` discarded warm-up steps,
/// then `n_points` samples. Identical inputs give bit-identical clouds.
pub fn chaos_game(
    sys: &IfsSystem,
    n_points: usize,
    seed: u64,
    burn_in: usize,
) -> Result<PointCloud> {
    chaos_game_sharded(sys, n_points, seed, burn_in, 1)
}

/// Chaos game split across `chains` independent chains (each with its own
/// derived seed and warm-up), run in parallel and concatenated in chain
/// order. The output depends only on the arguments, never on the worker
/// count.
pub fn chaos_game_sharded(
    sys: &IfsSystem,
    n_points: usize,
    seed: u64,
    burn_in: usize,
    chains: usize,
) -> Result<PointCloud> {
    if n_points == 0 {
        return Err(Error::domain("chaos game needs at least one sample"));
    }
    if chains == 0 {
        return Err(Error::domain("chaos game needs at least one chain"));
    }
    if n_points > 50_000_000 {
        return Err(Error::SizeLimit(format!(
            "point clouds are capped at 5e7 samples, got {n_points}"
        )));
    }
    let base = n_points / chains;
    let rem = n_points % chains;
    let shards: Vec<Vec<Point2>> = (0..chains)
        .into_par_iter()
        .map(|c| {
            let len = base + usize::from(c < rem);
            run_chain(sys, chain_seed(seed, c), len, burn_in)
        })
        .collect();
    Ok(PointCloud {
        points: shards.concat(),
        seed,
        burn_in,
        chains,
        rng_algorithm: "chacha8".into(),
    })
}

/// Histogram of a point cloud over `bounds`, normalized to total mass 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureRaster {
    pub field: RasterField,
    pub inside: usize,
    pub outside: usize,
}

/// Bin the cloud on a `grid x grid` histogram over `bounds` and normalize to
/// a probability field. Points outside the box are tolerated up to 0.1% of
/// the cloud and reported; more than that is treated as a wrong box.
pub fn rasterize_measure(cloud: &PointCloud, bounds: Rect, grid: usize) -> Result<MeasureRaster> {
    if grid < 8 {
        return Err(Error::domain(format!(
            "measure grids start at 8, got {grid}"
        )));
    }
    if cloud.points.is_empty() {
        return Err(Error::domain("cannot rasterize an empty cloud"));
    }
    let mut field = RasterField::zeros(bounds, grid, 1)?;
    let mut outside = 0usize;
    for &p in &cloud.points {
        match field.cell_of(p) {
            Some((ix, iy)) => field.add_at(ix, iy, 0, 1.0),
            None => outside += 1,
        }
    }
    let total = cloud.points.len();
    if outside as f64 > 1e-3 * total as f64 {
        return Err(Error::domain(format!(
            "{outside} of {total} points fall outside the raster box"
        )));
    }
    let inside = total - outside;
    if inside == 0 {
        return Err(Error::domain("every point fell outside the raster box"));
    }
    field.scale(1.0 / inside as f64);
    Ok(MeasureRaster {
        field,
        inside,
        outside,
    })
}

/// How far `field` is from satisfying the invariance equation
/// `mu = sum_i p_i (T_i)_* mu`, as the L1 distance between the field and the
/// cell-center pushforward of itself. Mass pushed outside the box is dropped
/// (and shows up as residual).
pub fn invariance_residual(field: &RasterField, sys: &IfsSystem) -> Result<f64> {
    if field.channels() != 1 {
        return Err(Error::domain("invariance residual wants a scalar field"));
    }
    let total = field.sum();
    if (total - 1.0).abs() > 1e-6 {
        return Err(Error::domain(format!(
            "field mass is {total}, expected a normalized measure"
        )));
    }
    let mut pushed = RasterField::zeros(field.bounds(), field.grid(), 1)?;
    let g = field.grid();
    for iy in 0..g {
        for ix in 0..g {
            let mass = field.get(ix, iy, 0);
            if mass == 0.0 {
                continue;
            }
            let center = field.cell_center(ix, iy);
            for (map, &p) in sys.maps.iter().zip(&sys.probabilities) {
                if let Some((jx, jy)) = pushed.cell_of(map.apply(center)) {
                    pushed.add_at(jx, jy, 0, p * mass);
                }
            }
        }
    }
    field.l1_distance(&pushed)
}
