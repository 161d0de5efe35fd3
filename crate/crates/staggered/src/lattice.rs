//! Kagome lattice: Fourier reduction, band structure, and localized
//! eigenvectors.
//!
//! The kagome lattice is the line graph of the hexagonal lattice; its
//! staggered walk reduces per momentum `(k, l)` to a walk on the quotient
//! triangle, a 2-vertex multigraph with 3 parallel edges. Real-space
//! verification uses finite patches with periodic boundary, where the
//! localized 6-cycle eigenvector is exact.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::LatticeError;
use crate::multigraph::BipartiteMultigraph;
use crate::operators::exp_involution;
use crate::tessellation::TessellatedSystem;

type C64 = Complex64;

/// A point of the momentum torus `[0, 2pi)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint {
    pub k: f64,
    pub l: f64,
}

impl MomentumPoint {
    pub fn new(k: f64, l: f64) -> Self {
        MomentumPoint { k, l }
    }

    /// Blue-polygon unit vector `beta'(k, l) = W_{k,l} beta`.
    pub fn beta_prime(&self) -> Array1<C64> {
        let r = 1.0 / 3f64.sqrt();
        ndarray::array![
            C64::new(r, 0.0),
            C64::from_polar(r, self.l),
            C64::from_polar(r, self.k + self.l)
        ]
    }
}

/// The quotient system at momentum `(k, l)`: 3 parallel edges with
/// `a = (1,1,1)/sqrt(3)` and `b = (1, e^{il}, e^{i(k+l)})/sqrt(3)`.
pub fn kagome_quotient_system(
    theta: f64,
    p: MomentumPoint,
) -> Result<TessellatedSystem, LatticeError> {
    let g = BipartiteMultigraph::build(1, 1, vec![(0, 0); 3]).expect("triple edge");
    let r = 1.0 / 3f64.sqrt();
    let a = vec![C64::new(r, 0.0); 3];
    let b = p.beta_prime().to_vec();
    Ok(TessellatedSystem::new(g, a, b, theta)?)
}

fn projector(v: &Array1<C64>) -> Array2<C64> {
    let n = v.len();
    let mut m = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[[i, j]] = v[i] * v[j].conj();
        }
    }
    m
}

/// Reduced 3x3 evolution operator `-e^{i theta E_2'} e^{i theta E_1}`,
/// built directly from the polygon reflections.
pub fn reduced_operator(theta: f64, p: MomentumPoint) -> Array2<C64> {
    let r = 1.0 / 3f64.sqrt();
    let alpha = Array1::from_elem(3, C64::new(r, 0.0));
    let eye = Array2::<C64>::eye(3);
    let e1 = &projector(&alpha).mapv(|z| 2.0 * z) - &eye;
    let e2 = &projector(&p.beta_prime()).mapv(|z| 2.0 * z) - &eye;
    exp_involution(&e2, theta)
        .dot(&exp_involution(&e1, theta))
        .mapv(|z| -z)
}

/// Band structure at one momentum point.
#[derive(Debug, Clone, Copy)]
pub struct Dispersion {
    pub cos_eta: f64,
    /// Principal band angle in `[0, pi]`.
    pub eta: f64,
    pub band_plus: C64,
    pub band_minus: C64,
    /// Flat-band eigenvalue `-e^{-2 i theta}`.
    pub flat: C64,
}

/// Dispersion relation of the two dispersive bands plus the flat band:
/// `cos eta = -1 + (2/3) sin^2(theta) + (4/9) sin^2(theta) (cos l + cos k
/// + cos(k+l))`.
pub fn dispersion(theta: f64, p: MomentumPoint) -> Result<Dispersion, LatticeError> {
    let s2 = theta.sin() * theta.sin();
    let cos_sum = p.l.cos() + p.k.cos() + (p.k + p.l).cos();
    let cos_eta = -1.0 + 2.0 * s2 / 3.0 + 4.0 * s2 / 9.0 * cos_sum;
    if cos_eta.abs() > 1.0 + 1e-12 {
        return Err(LatticeError::FormulaOutOfRange(cos_eta.abs()));
    }
    let eta = cos_eta.clamp(-1.0, 1.0).acos();
    Ok(Dispersion {
        cos_eta,
        eta,
        band_plus: C64::from_polar(1.0, eta),
        band_minus: C64::from_polar(1.0, -eta),
        flat: -C64::from_polar(1.0, -2.0 * theta),
    })
}

/// Guard band around the singular momentum lines `k = 0 (mod 2pi)`.
pub const SINGULAR_GUARD: f64 = 1e-6;

/// Closed-form flat-band eigenvector of the reduced operator:
/// `(1, (e^{-ik} - e^{il})/(1 - e^{-ik}), (e^{il} - 1)/(1 - e^{-ik}))`.
pub fn momentum_eigenvector(p: MomentumPoint) -> Result<Array1<C64>, LatticeError> {
    let eik = C64::from_polar(1.0, -p.k);
    let denom = 1.0 - eik;
    if denom.norm() < SINGULAR_GUARD {
        return Err(LatticeError::SingularMomentum { k: p.k, l: p.l });
    }
    let eil = C64::from_polar(1.0, p.l);
    Ok(ndarray::array![
        C64::new(1.0, 0.0),
        (eik - eil) / denom,
        (eil - 1.0) / denom
    ])
}

/// Finite kagome patch with periodic boundary.
///
/// Cells `(x, y)` on a torus of `cells_x * cells_y` unit cells, three
/// sites per cell. Red polygons are `{(x,y,1), (x,y,2), (x,y,3)}`, blue
/// polygons `{(x,y,1), (x,y+1,2), (x+1,y+1,3)}`; both index the left and
/// right vertex sets of the underlying multigraph by `x * cells_y + y`.
#[derive(Debug, Clone)]
pub struct KagomePatch {
    pub cells_x: usize,
    pub cells_y: usize,
    pub graph: BipartiteMultigraph,
}

impl KagomePatch {
    fn cell(&self, x: i64, y: i64) -> usize {
        let xm = x.rem_euclid(self.cells_x as i64) as usize;
        let ym = y.rem_euclid(self.cells_y as i64) as usize;
        xm * self.cells_y + ym
    }

    /// Walk-graph vertex id (= multigraph edge id) of site `(x, y, j)`,
    /// `j` in `1..=3`, coordinates wrapped periodically.
    pub fn site_index(&self, x: i64, y: i64, j: usize) -> usize {
        debug_assert!((1..=3).contains(&j));
        3 * self.cell(x, y) + (j - 1)
    }

    pub fn site_count(&self) -> usize {
        3 * self.cells_x * self.cells_y
    }
}

/// Builds a periodic kagome patch of at least 4x4 cells.
pub fn kagome_patch(cells_x: usize, cells_y: usize) -> Result<KagomePatch, LatticeError> {
    if cells_x < 4 || cells_y < 4 {
        return Err(LatticeError::PatchTooSmall {
            x: cells_x,
            y: cells_y,
        });
    }
    let cells = cells_x * cells_y;
    let mut edges = vec![(0usize, 0usize); 3 * cells];
    let patch_stub = KagomePatch {
        cells_x,
        cells_y,
        graph: BipartiteMultigraph::build(1, 1, vec![(0, 0)]).unwrap(),
    };
    for x in 0..cells_x as i64 {
        for y in 0..cells_y as i64 {
            let left = patch_stub.cell(x, y);
            // site j of red cell (x,y) belongs to the blue polygon at
            // (x,y), (x,y-1), (x-1,y-1) for j = 1, 2, 3
            let rights = [
                patch_stub.cell(x, y),
                patch_stub.cell(x, y - 1),
                patch_stub.cell(x - 1, y - 1),
            ];
            for (j, &right) in rights.iter().enumerate() {
                edges[3 * left + j] = (left, right);
            }
        }
    }
    let graph = BipartiteMultigraph::build(cells, cells, edges)
        .map_err(crate::error::SystemError::from)?;
    Ok(KagomePatch {
        cells_x,
        cells_y,
        graph,
    })
}

/// The uniform-amplitude walk system on a patch.
pub fn patch_system(patch: &KagomePatch, theta: f64) -> Result<TessellatedSystem, LatticeError> {
    Ok(crate::tessellation::uniform_amplitudes(&patch.graph, theta)?)
}

/// The localized 6-cycle eigenvector centered at a cell.
#[derive(Debug, Clone)]
pub struct LocalizedEigenvector {
    pub center: (i64, i64),
    /// Sites carrying `+1`.
    pub plus: [(i64, i64, usize); 3],
    /// Sites carrying `-1`.
    pub minus: [(i64, i64, usize); 3],
}

impl LocalizedEigenvector {
    pub fn new(center: (i64, i64)) -> Self {
        let (x, y) = center;
        LocalizedEigenvector {
            center,
            plus: [(x, y, 1), (x, y + 1, 3), (x - 1, y, 2)],
            minus: [(x, y, 3), (x, y + 1, 2), (x - 1, y, 1)],
        }
    }

    /// Dense vector over a patch, unnormalized (entries in {-1, 0, +1}).
    pub fn to_patch_vector(&self, patch: &KagomePatch) -> Array1<C64> {
        let mut v = Array1::<C64>::zeros(patch.site_count());
        for &(x, y, j) in &self.plus {
            v[patch.site_index(x, y, j)] += C64::new(1.0, 0.0);
        }
        for &(x, y, j) in &self.minus {
            v[patch.site_index(x, y, j)] -= C64::new(1.0, 0.0);
        }
        v
    }
}

/// Builds the localized eigenvector at `center` and verifies it against
/// the patch walk operator at eigenvalue `-e^{-2 i theta}`; returns the
/// vector and the eigen-residual.
pub fn localized_eigenvector(
    patch: &KagomePatch,
    center: (i64, i64),
    theta: f64,
) -> Result<(LocalizedEigenvector, f64), LatticeError> {
    let loc = LocalizedEigenvector::new(center);
    let s = patch_system(patch, theta)?;
    let ops = crate::operators::WalkOperators::build(&s);
    let v = loc.to_patch_vector(patch);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let v = v.mapv(|z| z / norm);
    let lambda = -C64::from_polar(1.0, -2.0 * theta);
    let diff = &ops.u.dot(&v) - &v.mapv(|z| lambda * z);
    let residual = diff.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok((loc, residual))
}
