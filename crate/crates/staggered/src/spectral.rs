//! Constructive eigenbasis of the walk operator.
//!
//! The spectrum splits into two parts. Eigenvectors supported on the
//! polygon subspace `col(L)`, `L = [A B]`, are inherited from the
//! discriminant `T` through the spectral map `cos phi = mu sin theta` and
//! the lift `L D`. The orthogonal complement of `col(L)` is spanned by
//! vectors living on cycles of the underlying multigraph: one per
//! fundamental cycle when the system is reversible (eigenvalue
//! `-e^{-2 i theta}`), and one per cycle-path pair otherwise.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Norm, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::balance::{balancing_index, detect_reversibility, ReversibilityReport};
use crate::error::SpectralError;
use crate::multigraph::{
    cycle_path, fundamental_cycles, spanning_tree, CyclePathSubgraph, FundamentalCycle,
    OverlapKind,
};
use crate::operators::WalkOperators;
use crate::tessellation::TessellatedSystem;
use crate::tol;
use crate::util::dagger;

type C64 = Complex64;

/// Which invariant subspace an eigenvector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubspaceTag {
    /// `ran(A) ∩ ran(B)`, spanned by `A pi_1`; reversible systems only.
    #[serde(rename = "A∩B")]
    Intersection,
    /// `ran(A) + ran(B) = col(L)`, lifted from the discriminant.
    #[serde(rename = "A+B")]
    Inherited,
    /// Orthogonal complement of `col(L)`, supported on cycles.
    #[serde(rename = "cycle-perp")]
    CyclePerp,
}

/// One verified eigenpair of the walk operator.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub lambda: C64,
    pub vector: Array1<C64>,
    pub tag: SubspaceTag,
}

/// Complete eigenbasis plus eigenvalue multiplicities.
#[derive(Debug, Clone)]
pub struct EigenBasis {
    pub pairs: Vec<EigenPair>,
    /// `(representative eigenvalue, multiplicity)` per cluster on the unit
    /// circle.
    pub multiplicities: Vec<(C64, usize)>,
}

/// How an eigenvalue of the discriminant maps into the walk spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryRole {
    /// Contributes a lifted eigenvector at `e^{2 i phi}`.
    Inherited,
    /// The lift vanishes (`ker L`); contributes nothing.
    KernelDrop,
    /// The lift collapses onto `A pi_1` at `-e^{2 i theta}`.
    Intersection,
}

#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub mu: f64,
    /// Principal arccos of `mu sin theta`, in `[0, pi]`.
    pub phi: f64,
    pub lambda: C64,
    pub role: EntryRole,
}

#[derive(Debug, Clone)]
pub struct SpectralMap {
    pub entries: Vec<SpectrumEntry>,
    /// `phi(+1) = pi/2 - theta` (mod the principal branch), the endpoint
    /// whose lift behavior is special in the reversible case.
    pub phi_plus: f64,
    /// `phi(-1) = pi/2 + theta` on the principal branch.
    pub phi_minus: f64,
}

/// Eigendecomposition of the Hermitian discriminant, eigenvalues ascending.
pub fn discriminant_eigs(ops: &WalkOperators) -> (Array1<f64>, Array2<C64>) {
    crate::util::eigh_columns(&ops.t)
}

fn principal_phi(mu: f64, theta: f64) -> f64 {
    (mu * theta.sin()).clamp(-1.0, 1.0).acos()
}

/// Maps the discriminant spectrum into the walk spectrum.
///
/// When the system is reversible the eigenvalues `mu = +1` and `mu = -1`
/// are special: one of them (`+1` for `theta <= pi/2`, `-1` otherwise) has
/// a vanishing lift, the other collapses onto the intersection vector
/// `A pi_1`. Everything else lifts to an eigenvector at `e^{2 i phi}`.
pub fn spectrum_from_t(ops: &WalkOperators, reversible: bool) -> SpectralMap {
    let theta = ops.theta();
    let (mus, _) = discriminant_eigs(ops);
    let drop_plus = theta <= std::f64::consts::FRAC_PI_2;
    let entries = mus
        .iter()
        .map(|&mu| {
            let phi = principal_phi(mu, theta);
            let lambda = C64::from_polar(1.0, 2.0 * phi);
            let role = if reversible && (mu - 1.0).abs() <= tol::CLUSTER {
                if drop_plus {
                    EntryRole::KernelDrop
                } else {
                    EntryRole::Intersection
                }
            } else if reversible && (mu + 1.0).abs() <= tol::CLUSTER {
                if drop_plus {
                    EntryRole::Intersection
                } else {
                    EntryRole::KernelDrop
                }
            } else {
                EntryRole::Inherited
            };
            SpectrumEntry {
                mu,
                phi,
                lambda,
                role,
            }
        })
        .collect();
    SpectralMap {
        entries,
        phi_plus: principal_phi(1.0, theta),
        phi_minus: principal_phi(-1.0, theta),
    }
}

/// Lifts every non-special discriminant eigenvector to a walk eigenvector.
pub fn inherited_eigenvectors(
    ops: &WalkOperators,
    reversible: bool,
) -> Result<Vec<EigenPair>, SpectralError> {
    let theta = ops.theta();
    let (mus, vecs) = discriminant_eigs(ops);
    let mut out = Vec::new();
    for (idx, &mu) in mus.iter().enumerate() {
        if reversible && (mu.abs() - 1.0).abs() <= tol::CLUSTER {
            continue;
        }
        let phi = principal_phi(mu, theta);
        let f = vecs.column(idx).to_owned();
        let lifted = ops.l.dot(&ops.apply_d(phi, &f));
        let norm = lifted.norm_l2();
        if norm < tol::RANK {
            return Err(SpectralError::DegenerateLift { norm });
        }
        out.push(EigenPair {
            lambda: C64::from_polar(1.0, 2.0 * phi),
            vector: lifted.mapv(|z| z / norm),
            tag: SubspaceTag::Inherited,
        });
    }
    Ok(out)
}

/// The one-dimensional intersection `ran(A) ∩ ran(B) = span(A pi_1)` of a
/// reversible system, an eigenvector at `-e^{2 i theta}`.
pub fn intersection_eigenvector(
    ops: &WalkOperators,
    report: &ReversibilityReport,
) -> Result<EigenPair, SpectralError> {
    let pi = report.pi.as_ref().ok_or(SpectralError::NotReversible)?;
    let m = ops.a.ncols();
    let pi1 = pi.slice(ndarray::s![..m]).to_owned();
    let v = ops.a.dot(&pi1);
    let norm = v.norm_l2();
    let vector = v.mapv(|z| z / norm);
    let lambda = -C64::from_polar(1.0, 2.0 * ops.theta());
    let residual = (&ops.u.dot(&vector) - &vector.mapv(|z| lambda * z)).norm_l2();
    if residual > tol::DERIVED {
        return Err(SpectralError::VerificationFailed {
            what: "intersection residual",
            value: residual,
        });
    }
    Ok(EigenPair {
        lambda,
        vector,
        tag: SubspaceTag::Intersection,
    })
}

/// Propagates an edge amplitude around a cycle so that every interior
/// polygon constraint cancels; returns the per-edge values and the defect
/// left at the start vertex.
fn propagate_cycle(
    s: &TessellatedSystem,
    cycle: &FundamentalCycle,
) -> (Vec<(usize, C64)>, C64) {
    let n = cycle.len();
    let mut values = vec![C64::new(1.0, 0.0); n];
    for j in 0..n - 1 {
        let v = cycle.vertices[j];
        let prev = s.amp_at(cycle.edges[j], v).conj();
        let next = s.amp_at(cycle.edges[j + 1], v).conj();
        values[j + 1] = -prev / next * values[j];
    }
    let start = cycle.start_vertex();
    let defect = s.amp_at(cycle.edges[0], start).conj() * values[0]
        + s.amp_at(cycle.edges[n - 1], start).conj() * values[n - 1];
    let entries = cycle.edges.iter().copied().zip(values).collect();
    (entries, defect)
}

fn perp_pair(
    s: &TessellatedSystem,
    ops: &WalkOperators,
    entries: Vec<(usize, C64)>,
) -> Result<EigenPair, SpectralError> {
    let nu = s.graph().edge_count();
    let mut vector = Array1::<C64>::zeros(nu);
    for (e, val) in entries {
        vector[e] += val;
    }
    let norm = vector.norm_l2();
    vector.mapv_inplace(|z| z / norm);
    // membership in the complement of col(L): both projections vanish
    let pa = dagger(&ops.a).dot(&vector).norm_l2();
    let pb = dagger(&ops.b).dot(&vector).norm_l2();
    let worst = pa.max(pb);
    if worst > tol::DERIVED {
        return Err(SpectralError::VerificationFailed {
            what: "cycle-space projection",
            value: worst,
        });
    }
    Ok(EigenPair {
        lambda: -C64::from_polar(1.0, -2.0 * ops.theta()),
        vector,
        tag: SubspaceTag::CyclePerp,
    })
}

/// Eigenvector supported on a single balanced cycle, at `-e^{-2 i theta}`.
pub fn cycle_eigenvector(
    s: &TessellatedSystem,
    ops: &WalkOperators,
    cycle: &FundamentalCycle,
) -> Result<EigenPair, SpectralError> {
    let delta = balancing_index(s, cycle);
    if delta.norm() > tol::REVERSIBILITY {
        return Err(SpectralError::NotReversible);
    }
    let (entries, defect) = propagate_cycle(s, cycle);
    let scale = entries.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    if defect.norm() > tol::REVERSIBILITY.sqrt() * scale {
        return Err(SpectralError::ClosureInconsistent {
            defect: defect.norm(),
        });
    }
    perp_pair(s, ops, entries)
}

/// Eigenvector supported on two unbalanced cycles and the path joining
/// them, at `-e^{-2 i theta}`; nonreversible systems only.
///
/// Each cycle is rotated to start at its attachment vertex, propagated with
/// nonzero defect, and the two defects are cancelled against each other
/// through the connector (or directly, when the cycles overlap).
pub fn cycle_path_eigenvector(
    s: &TessellatedSystem,
    ops: &WalkOperators,
    sub: &CyclePathSubgraph,
) -> Result<EigenPair, SpectralError> {
    for cyc in [&sub.c0, &sub.c] {
        let delta = balancing_index(s, cyc);
        if delta.norm() <= tol::DEGENERATE_BALANCE {
            return Err(SpectralError::DegenerateBalance {
                chord: cyc.chord,
                delta: delta.norm(),
            });
        }
    }
    let entries = match sub.overlap_kind {
        OverlapKind::DisjointWithPath => {
            let z1 = sub.connector_vertices[0];
            let w = *sub.connector_vertices.last().unwrap();
            let (entries0, defect0) = propagate_cycle(s, &sub.c0.rotated_to_start(z1));
            let mut entries = entries0;
            // connector values cancel the c0 defect at z1 and hand the
            // remainder to c at w
            let mut prev = -defect0 / s.amp_at(sub.connector[0], z1).conj();
            entries.push((sub.connector[0], prev));
            for j in 1..sub.connector.len() {
                let v = sub.connector_vertices[j];
                let num = s.amp_at(sub.connector[j - 1], v).conj();
                let den = s.amp_at(sub.connector[j], v).conj();
                prev = -num / den * prev;
                entries.push((sub.connector[j], prev));
            }
            let (entries_c, defect_c) = propagate_cycle(s, &sub.c.rotated_to_start(w));
            let last = *sub.connector.last().unwrap();
            let seed = -s.amp_at(last, w).conj() * prev / defect_c;
            entries.extend(entries_c.into_iter().map(|(e, v)| (e, seed * v)));
            entries
        }
        OverlapKind::SharedVertex | OverlapKind::SharedPath => {
            let shared_edges: Vec<usize> = sub
                .c0
                .edges
                .iter()
                .filter(|e| sub.c.edges.contains(e))
                .copied()
                .collect();
            // attachment vertex: smallest shared vertex meeting at most one
            // shared edge (an endpoint of the shared path)
            let w1 = *sub
                .shared_vertices
                .iter()
                .find(|&&v| {
                    let g = s.graph();
                    shared_edges
                        .iter()
                        .filter(|&&e| g.left_end(e) == v || g.right_end(e) == v)
                        .count()
                        <= 1
                })
                .expect("shared path has an endpoint");
            let (entries0, defect0) = propagate_cycle(s, &sub.c0.rotated_to_start(w1));
            let (entries_c, defect_c) = propagate_cycle(s, &sub.c.rotated_to_start(w1));
            let seed = -defect0 / defect_c;
            let mut entries = entries0;
            entries.extend(entries_c.into_iter().map(|(e, v)| (e, seed * v)));
            entries
        }
    };
    perp_pair(s, ops, entries)
}

fn cluster_multiplicities(pairs: &[EigenPair]) -> Vec<(C64, usize)> {
    let mut sorted: Vec<C64> = pairs.iter().map(|p| p.lambda).collect();
    sorted.sort_by(|x, y| x.arg().partial_cmp(&y.arg()).unwrap());
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for lam in sorted {
        match clusters.last_mut() {
            Some((rep, count)) if (lam - *rep).norm() <= tol::CLUSTER => *count += 1,
            _ => clusters.push((lam, 1)),
        }
    }
    // the circle wraps: merge the first and last clusters if they touch
    if clusters.len() > 1 {
        let first = clusters[0].0;
        let last = clusters.last().unwrap().0;
        if (first - last).norm() <= tol::CLUSTER {
            let (_, c) = clusters.pop().unwrap();
            clusters[0].1 += c;
        }
    }
    clusters
}

/// Result of checking an eigenbasis against the walk operator.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_residual: f64,
    /// Smallest singular value of the basis matrix; positive bounded away
    /// from zero means the vectors are linearly independent.
    pub min_singular: f64,
    pub complete: bool,
    pub passed: bool,
}

/// Checks residuals, completeness, and linear independence at a given
/// residual tolerance.
pub fn verify_eigenbasis(
    ops: &WalkOperators,
    basis: &EigenBasis,
    residual_tol: f64,
) -> VerifyReport {
    let nu = ops.dim();
    let mut max_residual: f64 = 0.0;
    for p in &basis.pairs {
        let r = (&ops.u.dot(&p.vector) - &p.vector.mapv(|z| p.lambda * z)).norm_l2();
        max_residual = max_residual.max(r);
    }
    let complete = basis.pairs.len() == nu;
    let min_singular = if complete {
        let mut v = Array2::<C64>::zeros((nu, nu));
        for (j, p) in basis.pairs.iter().enumerate() {
            v.column_mut(j).assign(&p.vector);
        }
        let (_, sv, _) = v.svd(false, false).expect("svd");
        sv.iter().copied().fold(f64::INFINITY, f64::min)
    } else {
        0.0
    };
    let passed = complete && max_residual <= residual_tol && min_singular >= tol::RANK;
    VerifyReport {
        max_residual,
        min_singular,
        complete,
        passed,
    }
}

/// Builds the complete eigenbasis of the walk operator constructively.
///
/// Reversible systems get the inherited lifts, the intersection vector, and
/// one cycle eigenvector per fundamental cycle. Nonreversible systems get
/// every lift plus one cycle-path eigenvector per extra cycle (a balanced
/// cycle in a globally unbalanced system contributes its plain cycle
/// eigenvector instead). The result is verified before it is returned.
pub fn full_eigenbasis(s: &TessellatedSystem) -> Result<EigenBasis, SpectralError> {
    let ops = WalkOperators::build(s);
    let report = detect_reversibility(s);
    let g = s.graph();
    let tree = spanning_tree(g);
    let cycles = fundamental_cycles(g, &tree);

    let mut pairs = inherited_eigenvectors(&ops, report.reversible)?;
    if report.reversible {
        pairs.push(intersection_eigenvector(&ops, &report)?);
        for cyc in &cycles {
            pairs.push(cycle_eigenvector(s, &ops, cyc)?);
        }
    } else {
        // anchor cycle: first one with a usable balancing index
        let c0 = cycles
            .iter()
            .find(|c| balancing_index(s, c).norm() > tol::DEGENERATE_BALANCE)
            .expect("nonreversible system has an unbalanced cycle");
        for cyc in cycles.iter().filter(|c| c.chord != c0.chord) {
            if balancing_index(s, cyc).norm() <= tol::DEGENERATE_BALANCE {
                pairs.push(cycle_eigenvector(s, &ops, cyc)?);
            } else {
                let sub = cycle_path(g, c0, cyc).expect("connected multigraph");
                pairs.push(cycle_path_eigenvector(s, &ops, &sub)?);
            }
        }
    }

    let nu = g.edge_count();
    if pairs.len() != nu {
        return Err(SpectralError::BasisIncomplete {
            got: pairs.len(),
            expected: nu,
        });
    }
    let multiplicities = cluster_multiplicities(&pairs);
    let basis = EigenBasis {
        pairs,
        multiplicities,
    };
    let check = verify_eigenbasis(&ops, &basis, tol::RESIDUAL);
    if !check.passed {
        return Err(SpectralError::VerificationFailed {
            what: "eigenbasis residual or rank",
            value: check.max_residual.max(1.0 / check.min_singular.max(1e-300)),
        });
    }
    Ok(basis)
}
