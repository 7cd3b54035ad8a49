//! Finite frame analysis over rasterized scenes.
//!
//! Element indicators act as frame atoms in R^(g^2); the Gram matrix and its
//! pseudo-inverse give the canonical dual atoms. Signals are analyzed
//! against the duals and synthesized from the atoms, so perfect
//! reconstruction on the span is `f = sum_k <f, g_k> phi_k`, and erasing
//! atoms turns into an honest rank experiment.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::RasterField;
use crate::scene::{rasterize_indicator, Scene};

/// Relative eigenvalue threshold below which the Gram matrix is treated as
/// rank-deficient: eigenvalues above `RANK_EPS * lambda_max` count.
pub const RANK_EPS: f64 = 1e-10;

/// A labeled family of single-channel atoms on one shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomSet {
    atoms: Vec<RasterField>,
    labels: Vec<String>,
}

impl AtomSet {
    /// Atoms must be nonempty, scalar, share one shape, be individually
    /// nonzero, and carry one label each.
    pub fn new(atoms: Vec<RasterField>, labels: Vec<String>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::domain("an atom set needs at least one atom"));
        }
        if atoms.len() > 256 {
            return Err(Error::SizeLimit(format!(
                "atom sets are capped at 256 atoms, got {}",
                atoms.len()
            )));
        }
        if labels.len() != atoms.len() {
            return Err(Error::domain(format!(
                "{} atoms but {} labels",
                atoms.len(),
                labels.len()
            )));
        }
        for (index, a) in atoms.iter().enumerate() {
            if a.channels() != 1 {
                return Err(Error::domain(format!("atom {index} is not a scalar field")));
            }
            if a.grid() != atoms[0].grid() || a.bounds() != atoms[0].bounds() {
                return Err(Error::GridMismatch(format!(
                    "atom {index} disagrees with atom 0 on grid or bounds"
                )));
            }
            if a.norm_l2() == 0.0 {
                return Err(Error::ZeroAtom {
                    index,
                    label: labels[index].clone(),
                });
            }
        }
        Ok(AtomSet { atoms, labels })
    }

    pub fn atoms(&self) -> &[RasterField] {
        &self.atoms
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn grid(&self) -> usize {
        self.atoms[0].grid()
    }
}

/// Rasterize each scene element into an indicator atom. Elements that cover
/// no cell (out of canvas, or thinner than the grid) are zero atoms and
/// rejected by name.
pub fn atoms_from_scene(scene: &Scene, grid: usize) -> Result<AtomSet> {
    let mut atoms = Vec::with_capacity(scene.elements().len());
    let mut labels = Vec::with_capacity(scene.elements().len());
    for (index, e) in scene.elements().iter().enumerate() {
        let atom = rasterize_indicator(e, grid)?;
        let label = format!("{}-{index}", e.prototype.kind_name());
        if atom.norm_l2() == 0.0 {
            return Err(Error::ZeroAtom { index, label });
        }
        atoms.push(atom);
        labels.push(label);
    }
    AtomSet::new(atoms, labels)
}

/// Gram matrix, spectrum, and canonical dual atoms of an atom set.
#[derive(Debug, Clone)]
pub struct FrameData {
    pub gram: DMatrix<f64>,
    /// Eigenvalues of the Gram matrix, descending.
    pub eigenvalues: Vec<f64>,
    /// Numerical rank at the [`RANK_EPS`] threshold.
    pub rank: usize,
    /// Canonical duals `g_k = sum_j (G^+)_{kj} phi_j`.
    pub duals: Vec<RasterField>,
}

impl FrameData {
    /// Gram entries as plain rows (for CSV/JSON emission without dragging
    /// linear-algebra types across the API).
    pub fn gram_rows(&self) -> Vec<Vec<f64>> {
        (0..self.gram.nrows())
            .map(|i| (0..self.gram.ncols()).map(|j| self.gram[(i, j)]).collect())
            .collect()
    }
}

/// Compute the Gram matrix `G_{ij} = <phi_i, phi_j>` (plain cell sums), its
/// eigendecomposition, and the canonical duals through the pseudo-inverse.
pub fn compute_frame(atoms: &AtomSet) -> Result<FrameData> {
    let k = atoms.len();
    let mut gram = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = atoms.atoms()[i].dot(&atoms.atoms()[j])?;
            gram[(i, j)] = v;
            gram[(j, i)] = v;
        }
    }
    let eig = SymmetricEigen::new(gram.clone());
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    let lambda_max = eigenvalues[0];
    if !(lambda_max > 0.0) {
        return Err(Error::Rank("Gram matrix has no positive eigenvalue".into()));
    }
    let tau = RANK_EPS * lambda_max;
    let rank = eigenvalues.iter().filter(|&&l| l > tau).count();
    // Pseudo-inverse from the spectral decomposition.
    let mut pinv = DMatrix::<f64>::zeros(k, k);
    for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > tau {
            let v = eig.eigenvectors.column(idx);
            pinv += v * v.transpose() / lambda;
        }
    }
    let template = &atoms.atoms()[0];
    let mut duals = Vec::with_capacity(k);
    for row in 0..k {
        let mut dual = RasterField::zeros(template.bounds(), template.grid(), 1)?;
        for (col, atom) in atoms.atoms().iter().enumerate() {
            dual.axpy(pinv[(row, col)], atom)?;
        }
        duals.push(dual);
    }
    Ok(FrameData {
        gram,
        eigenvalues,
        rank,
        duals,
    })
}

/// Frame coefficients `<f, g_k>` of a field against the canonical duals.
pub fn analyze(field: &RasterField, atoms: &AtomSet) -> Result<Vec<f64>> {
    let frame = compute_frame(atoms)?;
    frame
        .duals
        .iter()
        .map(|g| field.dot(g))
        .collect::<Result<Vec<f64>>>()
}

/// Weighted atom sum `sum_k c_k phi_k`.
pub fn synthesize(coefficients: &[f64], atoms: &AtomSet) -> Result<RasterField> {
    if coefficients.len() != atoms.len() {
        return Err(Error::domain(format!(
            "{} coefficients for {} atoms",
            coefficients.len(),
            atoms.len()
        )));
    }
    let template = &atoms.atoms()[0];
    let mut out = RasterField::zeros(template.bounds(), template.grid(), 1)?;
    for (c, atom) in coefficients.iter().zip(atoms.atoms()) {
        out.axpy(*c, atom)?;
    }
    Ok(out)
}

/// Outcome of reconstructing a field after deleting some atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErasureReport {
    pub erased: Vec<usize>,
    pub survivors: usize,
    /// Rank of the surviving frame.
    pub rank: usize,
    /// L2 distance between the field and its reconstruction from survivors.
    pub residual_norm: f64,
    /// Residual within `1e-8 * |f|`?
    pub reconstructible: bool,
    /// Largest over smallest nonzero eigenvalue of the survivor Gram matrix.
    pub condition_estimate: f64,
}

/// Drop the atoms listed in `erased`, rebuild the frame from the survivors,
/// and report how well `field` is reconstructed from them.
pub fn erasure_test(
    field: &RasterField,
    atoms: &AtomSet,
    erased: &[usize],
) -> Result<ErasureReport> {
    let k = atoms.len();
    let mut drop = vec![false; k];
    for &i in erased {
        if i >= k {
            return Err(Error::domain(format!("cannot erase atom {i} of {k}")));
        }
        if drop[i] {
            return Err(Error::domain(format!("atom {i} erased twice")));
        }
        drop[i] = true;
    }
    if erased.len() == k {
        return Err(Error::domain("cannot erase every atom"));
    }
    let mut survivors = Vec::new();
    let mut labels = Vec::new();
    for (i, dropped) in drop.iter().enumerate() {
        if !dropped {
            survivors.push(atoms.atoms()[i].clone());
            labels.push(atoms.labels()[i].clone());
        }
    }
    let surviving = AtomSet::new(survivors, labels)?;
    let frame = compute_frame(&surviving)?;
    let coeffs: Vec<f64> = frame
        .duals
        .iter()
        .map(|g| field.dot(g))
        .collect::<Result<_>>()?;
    let mut residual = synthesize(&coeffs, &surviving)?;
    residual.axpy(-1.0, field)?;
    let residual_norm = residual.norm_l2();
    let tau = RANK_EPS * frame.eigenvalues[0];
    let lambda_min_nonzero = frame
        .eigenvalues
        .iter()
        .rev()
        .find(|&&l| l > tau)
        .copied()
        .expect("rank >= 1 after validation");
    Ok(ErasureReport {
        erased: erased.to_vec(),
        survivors: surviving.len(),
        rank: frame.rank,
        residual_norm,
        reconstructible: residual_norm <= 1e-8 * field.norm_l2(),
        condition_estimate: frame.eigenvalues[0] / lambda_min_nonzero,
    })
}
