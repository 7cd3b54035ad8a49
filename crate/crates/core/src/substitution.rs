//! The Fibonacci substitution `a -> ab`, `b -> a`: symbolic words, their
//! spectral data, and the quasiperiodic chains they generate on the line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fib::PHI;

/// Alphabet of the substitution. `A` is the long tile, `B` the short one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Letter {
    A,
    B,
}

impl Letter {
    /// Tile length in chain coordinates: `a` spans phi, `b` spans 1.
    pub fn tile_length(self) -> f64 {
        match self {
            Letter::A => PHI,
            Letter::B => 1.0,
        }
    }
}

/// A finite word over `{a, b}`. Nonempty by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count_a(&self) -> usize {
        self.letters.iter().filter(|&&l| l == Letter::A).count()
    }

    pub fn count_b(&self) -> usize {
        self.len() - self.count_a()
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::A => "a",
                Letter::B => "b",
            })?;
        }
        Ok(())
    }
}

/// `sigma^n(a)` for `sigma: a -> ab, b -> a`. Length is `F(n+2)`, so the
/// iteration count is capped at 35 (about 24 million letters).
pub fn iterate_substitution(n: u32) -> Result<Word> {
    if n > 35 {
        return Err(Error::SizeLimit(format!(
            "substitution words are capped at 35 iterations, got {n}"
        )));
    }
    let mut letters = vec![Letter::A];
    for _ in 0..n {
        let mut next = Vec::with_capacity(letters.len() * 2);
        for &l in &letters {
            match l {
                Letter::A => {
                    next.push(Letter::A);
                    next.push(Letter::B);
                }
                Letter::B => next.push(Letter::A),
            }
        }
        letters = next;
    }
    Ok(Word { letters })
}

/// `#a / #b` of a word. Undefined (domain error) when the word has no `b`.
pub fn letter_ratio(word: &Word) -> Result<f64> {
    let b = word.count_b();
    if b == 0 {
        return Err(Error::domain("letter ratio is undefined without any b"));
    }
    Ok(word.count_a() as f64 / b as f64)
}

/// Spectral data of the substitution matrix `[[1,1],[1,0]]` (entry (i, j)
/// counts letter i in the image of letter j).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Eigenvalues, Perron root first: (phi, psi).
    pub eigenvalues: (f64, f64),
    /// Asymptotic letter frequencies (a, b), normalized to sum to 1 exactly.
    pub frequencies: (f64, f64),
}

/// Eigenvalues and stationary letter frequencies of the substitution,
/// computed from the matrix (quadratic formula and Perron eigenvector),
/// not hard-coded.
pub fn substitution_spectrum() -> SpectrumReport {
    // Counts: sigma(a) = ab contributes (1 a, 1 b); sigma(b) = a gives (1, 0).
    let (m00, m01, m10, m11) = (1.0f64, 1.0, 1.0, 0.0);
    let trace = m00 + m11;
    let det = m00 * m11 - m01 * m10;
    let disc = (trace * trace - 4.0 * det).sqrt();
    let lambda1 = (trace + disc) / 2.0;
    let lambda2 = (trace - disc) / 2.0;
    // Perron eigenvector (lambda1, 1): frequencies are its normalization.
    let freq_a = lambda1 / (lambda1 + 1.0);
    SpectrumReport {
        eigenvalues: (lambda1, lambda2),
        frequencies: (freq_a, 1.0 - freq_a),
    }
}

/// A one-dimensional quasiperiodic chain: tile `i` covers
/// `[points[i], points[i] + tiles[i].tile_length())`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chain {
    /// Left endpoints, strictly increasing, starting at 0.
    pub points: Vec<f64>,
    pub tiles: Vec<Letter>,
    /// Substitution order this chain was built from.
    pub order: u32,
}

/// Left endpoints of `tiles` as exact elements `u + v phi` of Z[phi],
/// returned as integer pairs `(u, v)`. Includes the final right endpoint,
/// so the result has `tiles.len() + 1` entries.
fn exact_endpoints(tiles: &[Letter]) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(tiles.len() + 1);
    let (mut u, mut v) = (0u64, 0u64);
    out.push((u, v));
    for &t in tiles {
        match t {
            Letter::A => v += 1,
            Letter::B => u += 1,
        }
        out.push((u, v));
    }
    out
}

fn to_real((u, v): (u64, u64)) -> f64 {
    u as f64 + v as f64 * PHI
}

/// Position divided by phi, computed exactly in Z[phi] first:
/// `(u + v phi) / phi = v + u (phi - 1)`.
fn to_unit_a((u, v): (u64, u64)) -> f64 {
    v as f64 + u as f64 * (PHI - 1.0)
}

/// Chain of the order-`n` substitution word with tile lengths
/// `a -> phi, b -> 1`. Endpoints are accumulated in Z[phi] integer pairs and
/// only converted to f64 at the end, so no rounding drift builds up.
pub fn build_chain(n: u32) -> Result<Chain> {
    if n > 30 {
        return Err(Error::SizeLimit(format!(
            "chains are capped at order 30, got {n}"
        )));
    }
    let word = iterate_substitution(n)?;
    let tiles = word.letters;
    let points = exact_endpoints(&tiles)
        .iter()
        .take(tiles.len())
        .map(|&p| to_real(p))
        .collect();
    Ok(Chain {
        points,
        tiles,
        order: n,
    })
}

impl Chain {
    pub fn total_length(&self) -> f64 {
        to_real(*exact_endpoints(&self.tiles).last().expect("nonempty"))
    }
}

/// Result of checking a chain against the inflation rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InflationReport {
    pub order: u32,
    /// Number of inflated points that found a partner in the refined chain.
    pub matched: usize,
    pub unmatched: usize,
    /// Largest distance between an inflated point and its partner.
    pub max_deviation: f64,
    /// Upper end of the comparison window (unit-a coordinates).
    pub window: f64,
}

/// Verify the inflation self-similarity `Lambda' = phi Lambda ∪ (phi Lambda + 1)`.
///
/// The displacement "+1" presumes the `a` tile has unit length, so the check
/// runs in unit-a coordinates: every chain position is divided by phi (done
/// exactly in Z[phi]). Each inflated point inside the window
/// `[0, 0.8 * total_length]` must coincide with a point of the order-(n+1)
/// chain within `tol`; the window keeps the comparison away from the free
/// right edge, where the refined chain simply ends.
pub fn inflation_residual(chain: &Chain, tol: f64) -> Result<InflationReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if chain.tiles.is_empty() || chain.points.len() != chain.tiles.len() {
        return Err(Error::Invariant("chain tiles and points disagree".into()));
    }
    let refined = build_chain(chain.order + 1)?;
    let base: Vec<f64> = exact_endpoints(&chain.tiles)
        .iter()
        .take(chain.tiles.len())
        .map(|&p| to_unit_a(p))
        .collect();
    let target: Vec<f64> = exact_endpoints(&refined.tiles)
        .iter()
        .take(refined.tiles.len())
        .map(|&p| to_unit_a(p))
        .collect();
    // 0.8 of the base chain's extent after inflation by phi, in unit-a
    // coordinates; safely short of the refined chain's free right edge.
    let window = 0.8 * base.last().expect("nonempty") * PHI;
    let nearest = |x: f64| -> f64 {
        let idx = target.partition_point(|&t| t < x);
        let mut best = f64::INFINITY;
        if idx < target.len() {
            best = best.min((target[idx] - x).abs());
        }
        if idx > 0 {
            best = best.min((target[idx - 1] - x).abs());
        }
        best
    };
    let mut matched = 0usize;
    let mut unmatched = 0usize;
    let mut max_dev = 0.0f64;
    for &q in &base {
        for s in [PHI * q, PHI * q + 1.0] {
            if s > window {
                continue;
            }
            let d = nearest(s);
            if d <= tol {
                matched += 1;
                max_dev = max_dev.max(d);
            } else {
                unmatched += 1;
            }
        }
    }
    Ok(InflationReport {
        order: chain.order,
        matched,
        unmatched,
        max_deviation: max_dev,
        window,
    })
}
