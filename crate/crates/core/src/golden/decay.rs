//! Exponential luminance decay `I(x) = I0 e^(-k x)`, fitted by linear
//! regression in log space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fitted decay model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayModel {
    pub i0: f64,
    pub k: f64,
}

impl DecayModel {
    pub fn intensity(&self, x: f64) -> f64 {
        self.i0 * (-self.k * x).exp()
    }
}

/// Least-squares fit of `(x, I)` samples to `I = I0 e^(-k x)`.
///
/// Taking logs turns this into ordinary regression of `ln I` on `x`; that is
/// exact for noiseless data and the usual estimator otherwise. Intensities
/// must be strictly positive and the x values must actually spread out.
pub fn fit_exponential_decay(samples: &[(f64, f64)]) -> Result<DecayModel> {
    if samples.len() < 3 {
        return Err(Error::domain(format!(
            "decay fit needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    for &(x, i) in samples {
        if !(x.is_finite() && i.is_finite()) {
            return Err(Error::domain("samples must be finite"));
        }
        if i <= 0.0 {
            return Err(Error::domain(format!(
                "intensity must be positive for a log fit, got {i}"
            )));
        }
    }
    let n = samples.len() as f64;
    let mean_x = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let mean_y = samples.iter().map(|s| s.1.ln()).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, i) in samples {
        let dx = x - mean_x;
        sxx += dx * dx;
        sxy += dx * (i.ln() - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::Rank(
            "all sample positions coincide; slope is undetermined".into(),
        ));
    }
    let slope = sxy / sxx;
    Ok(DecayModel {
        i0: (mean_y - slope * mean_x).exp(),
        k: -slope,
    })
}
