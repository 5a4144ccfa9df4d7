//! Small explicit codes that beat the leaf construction at large distances.

use serde::{Deserialize, Serialize};

use crate::foliation::TOL;

/// An explicit code used in place of a leaf decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdhocCode {
    /// `±e₁`.
    Antipodal,
    /// Equilateral triangle in the first coordinate plane.
    Triangle,
    /// Regular tetrahedron in the first three coordinates.
    Tetrahedron,
    /// Regular 4-simplex (five points in `R⁴`).
    Simplex,
    /// Normalized edge midpoints of the 4-simplex (ten points in `R⁴`).
    RectifiedSimplex,
    /// The 24-cell: all permutations of `(±1, ±1, 0, 0)/√2`.
    Cell24,
    /// `±eᵢ` in any dimension.
    Biorthogonal,
}

/// The dimension-4 catalog, by increasing cardinality.
pub const CATALOG_R4: [AdhocCode; 7] = [
    AdhocCode::Antipodal,
    AdhocCode::Triangle,
    AdhocCode::Tetrahedron,
    AdhocCode::Simplex,
    AdhocCode::Biorthogonal,
    AdhocCode::RectifiedSimplex,
    AdhocCode::Cell24,
];

impl AdhocCode {
    pub fn len(self, dim: usize) -> usize {
        match self {
            AdhocCode::Antipodal => 2,
            AdhocCode::Triangle => 3,
            AdhocCode::Tetrahedron => 4,
            AdhocCode::Simplex => 5,
            AdhocCode::RectifiedSimplex => 10,
            AdhocCode::Cell24 => 24,
            AdhocCode::Biorthogonal => 2 * dim,
        }
    }

    pub fn min_distance(self) -> f64 {
        match self {
            AdhocCode::Antipodal => 2.0,
            AdhocCode::Triangle => 3f64.sqrt(),
            AdhocCode::Tetrahedron => (8.0f64 / 3.0).sqrt(),
            AdhocCode::Simplex => 2.5f64.sqrt(),
            AdhocCode::RectifiedSimplex => (5.0f64 / 3.0).sqrt(),
            AdhocCode::Cell24 => 1.0,
            AdhocCode::Biorthogonal => 2f64.sqrt(),
        }
    }

    /// Whether the code exists in `dim` dimensions.
    pub fn fits(self, dim: usize) -> bool {
        match self {
            AdhocCode::Biorthogonal => dim >= 1,
            AdhocCode::Antipodal => dim >= 1,
            AdhocCode::Triangle => dim >= 2,
            AdhocCode::Tetrahedron => dim >= 3,
            _ => dim == 4,
        }
    }

    /// Point `a` of the code embedded in `R^dim`.
    pub fn write_point(self, a: usize, out: &mut [f64]) {
        let dim = out.len();
        out.fill(0.0);
        match self {
            AdhocCode::Antipodal => out[0] = if a == 0 { 1.0 } else { -1.0 },
            AdhocCode::Triangle => {
                let theta = 2.0 * std::f64::consts::PI * a as f64 / 3.0;
                out[0] = theta.cos();
                out[1] = theta.sin();
            }
            AdhocCode::Tetrahedron => {
                const SIGNS: [[f64; 3]; 4] =
                    [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
                let r = 3f64.sqrt().recip();
                for (o, s) in out.iter_mut().zip(SIGNS[a]) {
                    *o = s * r;
                }
            }
            AdhocCode::Simplex => out.copy_from_slice(&simplex_vertex(a)),
            AdhocCode::RectifiedSimplex => {
                let (i, j) = PAIRS[a];
                let (u, v) = (simplex_vertex(i), simplex_vertex(j));
                let scale = 1.5f64.sqrt().recip();
                for k in 0..4 {
                    out[k] = (u[k] + v[k]) * scale;
                }
            }
            AdhocCode::Cell24 => {
                let (i, j) = COORD_PAIRS[a / 4];
                let h = std::f64::consts::FRAC_1_SQRT_2;
                out[i] = if a & 1 == 0 { h } else { -h };
                out[j] = if a & 2 == 0 { h } else { -h };
            }
            AdhocCode::Biorthogonal => out[a % dim] = if a < dim { 1.0 } else { -1.0 },
        }
    }

    pub fn points(self, dim: usize) -> Vec<Vec<f64>> {
        (0..self.len(dim))
            .map(|a| {
                let mut p = vec![0.0; dim];
                self.write_point(a, &mut p);
                p
            })
            .collect()
    }
}

const PAIRS: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
const COORD_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Vertex `a` of a regular simplex inscribed in `S³`, all inner products `-1/4`.
fn simplex_vertex(a: usize) -> [f64; 4] {
    if a == 4 {
        return [-0.5; 4];
    }
    let alpha = 5f64.sqrt() / 2.0;
    let beta = (1.0 - 5f64.sqrt()) / 8.0;
    let mut v = [beta; 4];
    v[a] += alpha;
    v
}

/// The largest explicit code in `dim` dimensions with minimum distance at least `d`.
pub(crate) fn best_adhoc(dim: usize, d: f64) -> Option<AdhocCode> {
    let candidates: &[AdhocCode] = if dim == 4 { &CATALOG_R4 } else { &[AdhocCode::Biorthogonal] };
    candidates
        .iter()
        .copied()
        .filter(|c| c.fits(dim) && c.min_distance() >= d - TOL)
        .max_by_key(|c| c.len(dim))
}
