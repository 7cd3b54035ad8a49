//! Multi-viewpoint flattening of n-dimensional wireframes: hypercube meshes,
//! composed plane (Givens) rotations, orthographic projection to the plane,
//! and the weighted superposition of several views into one layered figure.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Segment};

/// An n-dimensional wireframe: vertex coordinate rows plus undirected edges
/// as index pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub edges: Vec<(usize, usize)>,
}

impl Mesh {
    /// Structural checks: consistent dimension, edge indices in range, no
    /// self-loops, no duplicate edges in either orientation.
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::domain("mesh dimension must be positive"));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != self.dim {
                return Err(Error::domain(format!(
                    "vertex {i} has {} coordinates in a {}-dimensional mesh",
                    v.len(),
                    self.dim
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &self.edges {
            if a == b {
                return Err(Error::domain(format!("edge ({a}, {b}) is a self-loop")));
            }
            if a >= self.vertices.len() || b >= self.vertices.len() {
                return Err(Error::domain(format!(
                    "edge ({a}, {b}) points past the {} vertices",
                    self.vertices.len()
                )));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::domain(format!("edge ({a}, {b}) is duplicated")));
            }
        }
        Ok(())
    }
}

/// The n-cube with vertices at every sign pattern of `(±1, ..., ±1)` and an
/// edge wherever two vertices differ in exactly one coordinate. Supported
/// for `2 <= n <= 6` (the edge count `n 2^(n-1)` outgrows plotting fast).
pub fn hypercube_mesh(n: usize) -> Result<Mesh> {
    if !(2..=6).contains(&n) {
        return Err(Error::domain(format!(
            "hypercube meshes are built for dimensions 2..=6, got {n}"
        )));
    }
    let count = 1usize << n;
    let vertices: Vec<Vec<f64>> = (0..count)
        .map(|v| {
            (0..n)
                .map(|i| if v >> i & 1 == 1 { 1.0 } else { -1.0 })
                .collect()
        })
        .collect();
    let mut edges = Vec::with_capacity(n * count / 2);
    for v in 0..count {
        for i in 0..n {
            let w = v ^ (1 << i);
            if w > v {
                edges.push((v, w));
            }
        }
    }
    Ok(Mesh {
        dim: n,
        vertices,
        edges,
    })
}

/// Rotation by `angle` in the coordinate plane spanned by axes
/// `plane.0` and `plane.1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneRotation {
    pub plane: (usize, usize),
    pub angle: f64,
}

/// One way of looking at the mesh: a sequence of plane rotations (applied in
/// order) and the weight of this view in a superposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Viewpoint {
    pub rotations: Vec<PlaneRotation>,
    pub weight: f64,
}

/// Compose the rotations into one `dim x dim` orthogonal matrix. Each plane
/// rotation acts as a Givens block: `v_i' = c v_i - s v_j`,
/// `v_j' = s v_i + c v_j`.
pub fn rotation_matrix(dim: usize, rotations: &[PlaneRotation]) -> Result<DMatrix<f64>> {
    let mut acc = DMatrix::<f64>::identity(dim, dim);
    for rot in rotations {
        let (i, j) = rot.plane;
        if i == j || i >= dim || j >= dim {
            return Err(Error::domain(format!(
                "rotation plane ({i}, {j}) is invalid in dimension {dim}"
            )));
        }
        if !rot.angle.is_finite() {
            return Err(Error::domain("rotation angle must be finite"));
        }
        let mut g = DMatrix::<f64>::identity(dim, dim);
        let (s, c) = rot.angle.sin_cos();
        g[(i, i)] = c;
        g[(i, j)] = -s;
        g[(j, i)] = s;
        g[(j, j)] = c;
        acc = g * acc;
    }
    Ok(acc)
}

/// A flat wireframe: projected vertices with the source mesh's edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Wireframe2 {
    pub vertices: Vec<Point2>,
    pub edges: Vec<(usize, usize)>,
}

/// Rotate the mesh and drop everything but the first two coordinates
/// (orthographic projection onto the 0-1 plane).
pub fn project(mesh: &Mesh, rotations: &[PlaneRotation]) -> Result<Wireframe2> {
    mesh.validate()?;
    let r = rotation_matrix(mesh.dim, rotations)?;
    let vertices = mesh
        .vertices
        .iter()
        .map(|v| {
            let x: f64 = (0..mesh.dim).map(|k| r[(0, k)] * v[k]).sum();
            let y: f64 = (0..mesh.dim).map(|k| r[(1, k)] * v[k]).sum();
            Point2::new(x, y)
        })
        .collect();
    Ok(Wireframe2 {
        vertices,
        edges: mesh.edges.clone(),
    })
}

/// One transparent sheet of a superposed figure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureLayer {
    pub label: String,
    /// Convex weight of the layer; a figure's weights sum to 1.
    pub weight: f64,
    pub segments: Vec<Segment>,
}

/// A stack of weighted wireframe layers, one per viewpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredFigure {
    pub layers: Vec<FigureLayer>,
}

impl LayeredFigure {
    /// Layer weights must be nonnegative and sum to 1 (within 1e-12).
    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::domain("a layered figure needs at least one layer"));
        }
        let mut sum = 0.0;
        for l in &self.layers {
            if !(l.weight >= 0.0 && l.weight.is_finite()) {
                return Err(Error::domain(format!(
                    "layer '{}' has weight {}",
                    l.label, l.weight
                )));
            }
            sum += l.weight;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Invariant(format!(
                "layer weights sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }
}

/// Project the mesh once per viewpoint and stack the results, with weights
/// normalized to sum to 1. This is the discrete superposition
/// `C = sum_v w(v) P_v(mesh)`.
pub fn cubist_superpose(mesh: &Mesh, views: &[Viewpoint]) -> Result<LayeredFigure> {
    if views.is_empty() {
        return Err(Error::domain("superposition needs at least one viewpoint"));
    }
    let mut total = 0.0;
    for (i, v) in views.iter().enumerate() {
        if !(v.weight >= 0.0 && v.weight.is_finite()) {
            return Err(Error::domain(format!(
                "viewpoint {i} has invalid weight {}",
                v.weight
            )));
        }
        total += v.weight;
    }
    if total <= 0.0 {
        return Err(Error::domain("viewpoint weights must not all vanish"));
    }
    let mut layers = Vec::with_capacity(views.len());
    for (i, view) in views.iter().enumerate() {
        let wf = project(mesh, &view.rotations)?;
        let segments = wf
            .edges
            .iter()
            .map(|&(a, b)| Segment::new(wf.vertices[a], wf.vertices[b]))
            .collect();
        layers.push(FigureLayer {
            label: format!("view-{i}"),
            weight: view.weight / total,
            segments,
        });
    }
    let figure = LayeredFigure { layers };
    figure.validate()?;
    Ok(figure)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_counts() {
        for (n, edges) in [(2usize, 4usize), (3, 12), (4, 32), (5, 80), (6, 192)] {
            let m = hypercube_mesh(n).unwrap();
            m.validate().unwrap();
            assert_eq!(m.vertices.len(), 1 << n);
            assert_eq!(m.edges.len(), edges);
        }
        assert!(hypercube_mesh(1).is_err());
        assert!(hypercube_mesh(7).is_err());
    }

    #[test]
    fn validate_rejects_malformed_meshes() {
        let mut m = hypercube_mesh(2).unwrap();
        m.edges.push((0, 0));
        assert!(m.validate().is_err());
        let mut m = hypercube_mesh(2).unwrap();
        m.edges.push((1, 0)); // duplicate of (0, 1) reversed
        assert!(m.validate().is_err());
        let mut m = hypercube_mesh(2).unwrap();
        m.vertices[1] = vec![1.0];
        assert!(m.validate().is_err());
    }

    #[test]
    fn givens_block_follows_the_formula() {
        let r = rotation_matrix(
            4,
            &[PlaneRotation {
                plane: (0, 3),
                angle: 0.6,
            }],
        )
        .unwrap();
        let (s, c) = 0.6f64.sin_cos();
        // e0 -> (c, 0, 0, s)
        assert!((r[(0, 0)] - c).abs() < 1e-15);
        assert!((r[(3, 0)] - s).abs() < 1e-15);
        assert!((r[(0, 3)] + s).abs() < 1e-15);
        assert!((r[(3, 3)] - c).abs() < 1e-15);
        assert!(rotation_matrix(
            3,
            &[PlaneRotation {
                plane: (0, 3),
                angle: 0.1
            }]
        )
        .is_err());
        assert!(rotation_matrix(
            3,
            &[PlaneRotation {
                plane: (2, 2),
                angle: 0.1
            }]
        )
        .is_err());
    }

    #[test]
    fn composed_rotations_stay_orthogonal() {
        let rots = [
            PlaneRotation {
                plane: (0, 1),
                angle: 0.3,
            },
            PlaneRotation {
                plane: (1, 3),
                angle: -1.2,
            },
            PlaneRotation {
                plane: (2, 3),
                angle: 0.94,
            },
            PlaneRotation {
                plane: (0, 2),
                angle: 2.5,
            },
        ];
        let r = rotation_matrix(4, &rots).unwrap();
        let should_be_identity = &r * r.transpose();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((should_be_identity[(i, j)] - expect).abs() < 1e-12);
            }
        }
        assert!((r.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_projection_drops_higher_coordinates() {
        let m = hypercube_mesh(4).unwrap();
        let wf = project(&m, &[]).unwrap();
        assert_eq!(wf.vertices.len(), 16);
        for v in &wf.vertices {
            assert!(v.x.abs() == 1.0 && v.y.abs() == 1.0);
        }
        assert_eq!(wf.edges, m.edges);
    }

    #[test]
    fn square_rotated_an_eighth_turn_lands_on_the_axes() {
        let m = hypercube_mesh(2).unwrap();
        let wf = project(
            &m,
            &[PlaneRotation {
                plane: (0, 1),
                angle: std::f64::consts::FRAC_PI_4,
            }],
        )
        .unwrap();
        let r2 = 2.0f64.sqrt();
        for v in &wf.vertices {
            let on_x = v.y.abs() < 1e-12 && (v.x.abs() - r2).abs() < 1e-12;
            let on_y = v.x.abs() < 1e-12 && (v.y.abs() - r2).abs() < 1e-12;
            assert!(on_x || on_y, "{v:?}");
        }
    }

    #[test]
    fn superposition_normalizes_weights() {
        let m = hypercube_mesh(3).unwrap();
        let views: Vec<Viewpoint> = [1.0, 2.0, 1.0]
            .iter()
            .enumerate()
            .map(|(i, &w)| Viewpoint {
                rotations: vec![PlaneRotation {
                    plane: (0, 2),
                    angle: 0.4 * i as f64,
                }],
                weight: w,
            })
            .collect();
        let fig = cubist_superpose(&m, &views).unwrap();
        fig.validate().unwrap();
        assert_eq!(fig.layers.len(), 3);
        assert!((fig.layers[1].weight - 0.5).abs() < 1e-15);
        assert_eq!(fig.layers[0].segments.len(), 12);
        assert_eq!(fig.layers[0].label, "view-0");
        let zero: Vec<Viewpoint> = views
            .iter()
            .map(|v| Viewpoint {
                rotations: v.rotations.clone(),
                weight: 0.0,
            })
            .collect();
        assert!(cubist_superpose(&m, &zero).is_err());
        assert!(cubist_superpose(&m, &[]).is_err());
    }
}
