//! Brute-force spectral oracle for unitary matrices.
//!
//! Works from the dense matrix alone, with no knowledge of the walk
//! structure: a unitary `U` is split into the commuting Hermitian pair
//! `H = (U + U*)/2`, `K = (U - U*)/(2i)`, `H` is diagonalized, and `K` is
//! re-diagonalized inside each eigenspace of `H`. The result is a
//! guaranteed-orthonormal eigenbasis that the constructive decomposition is
//! checked against.

use ndarray::{s, Array1, Array2};
use ndarray_linalg::{Norm, SVD};
use num_complex::Complex64;

use crate::error::OracleError;
use crate::operators::WalkOperators;
use crate::spectral::EigenBasis;
use crate::tol;
use crate::util::{dagger, eigh_columns};

type C64 = Complex64;

/// Orthonormal eigenbasis of a unitary matrix, eigenvalues sorted by
/// principal argument.
#[derive(Debug, Clone)]
pub struct OracleDecomposition {
    pub eigenvalues: Vec<C64>,
    /// Unitary matrix whose column `j` belongs to `eigenvalues[j]`.
    pub vectors: Array2<C64>,
}

/// Diagonalizes a unitary matrix.
pub fn decompose(u: &Array2<C64>) -> Result<OracleDecomposition, OracleError> {
    let n = u.nrows();
    let eye = Array2::<C64>::eye(n);
    let dev = (&dagger(u).dot(u) - &eye).norm_max();
    if dev > tol::DERIVED {
        return Err(OracleError::NotUnitary(dev));
    }
    let h = (u + &dagger(u)).mapv(|z| 0.5 * z);
    let k = (u - &dagger(u)).mapv(|z| z / C64::new(0.0, 2.0));
    let (hvals, hvecs) = eigh_columns(&h);

    let mut vectors = Array2::<C64>::zeros((n, n));
    let mut eigenvalues = vec![C64::new(0.0, 0.0); n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (hvals[end] - hvals[end - 1]).abs() <= tol::CLUSTER {
            end += 1;
        }
        let q = hvecs.slice(s![.., start..end]).to_owned();
        // K restricted to the H-eigenspace; hermitize against roundoff
        let m = dagger(&q).dot(&k).dot(&q);
        let m = (&m + &dagger(&m)).mapv(|z| 0.5 * z);
        let (_, w) = eigh_columns(&m);
        let rotated = q.dot(&w);
        for (j, col) in rotated.columns().into_iter().enumerate() {
            let v = col.to_owned();
            let uv = u.dot(&v);
            let lambda: C64 = v.iter().zip(uv.iter()).map(|(x, y)| x.conj() * y).sum();
            eigenvalues[start + j] = lambda;
            vectors.column_mut(start + j).assign(&v);
        }
        start = end;
    }

    // sort by principal argument for deterministic output
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eigenvalues[i]
            .arg()
            .partial_cmp(&eigenvalues[j].arg())
            .unwrap()
    });
    let mut sorted_vals = Vec::with_capacity(n);
    let mut sorted_vecs = Array2::<C64>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        sorted_vals.push(eigenvalues[src]);
        sorted_vecs.column_mut(dst).assign(&vectors.column(src));
    }
    Ok(OracleDecomposition {
        eigenvalues: sorted_vals,
        vectors: sorted_vecs,
    })
}

/// Orthonormal basis of the orthogonal complement of `col(L)`, computed by
/// SVD of `L` with relative cutoff on the singular values.
pub fn perp_null_basis(ops: &WalkOperators) -> Array2<C64> {
    let (u, sv, _) = ops.l.svd(true, false).expect("svd");
    let u = u.expect("left singular vectors");
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > tol::REVERSIBILITY * smax).count();
    u.slice(s![.., rank..]).to_owned()
}

/// Outcome of checking the constructive basis against the oracle.
#[derive(Debug, Clone)]
pub struct CompareReport {
    pub matched: bool,
    /// Largest gap between a constructed eigenvalue and its oracle cluster.
    pub max_eigenvalue_gap: f64,
    /// Largest principal angle between matched eigenspaces, radians.
    pub max_principal_angle: f64,
    pub cluster_count: usize,
}

/// Matches eigenvalue clusters of the constructive basis against the
/// oracle and measures principal angles between the paired eigenspaces.
pub fn compare(basis: &EigenBasis, oracle: &OracleDecomposition, match_tol: f64) -> CompareReport {
    let nu = oracle.eigenvalues.len();
    let mut matched = basis.pairs.len() == nu;
    let mut max_gap: f64 = 0.0;
    let mut max_angle: f64 = 0.0;

    for &(rep, mult) in &basis.multiplicities {
        // oracle columns within matching distance of the cluster
        let indices: Vec<usize> = (0..nu)
            .filter(|&j| (oracle.eigenvalues[j] - rep).norm() < match_tol)
            .collect();
        if indices.len() != mult {
            matched = false;
            continue;
        }
        for &j in &indices {
            max_gap = max_gap.max((oracle.eigenvalues[j] - rep).norm());
        }
        // orthonormalize the constructed cluster via SVD
        let cols: Vec<usize> = basis
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| (p.lambda - rep).norm() <= tol::CLUSTER)
            .map(|(i, _)| i)
            .collect();
        if cols.len() != mult {
            matched = false;
            continue;
        }
        let dim = basis.pairs[0].vector.len();
        let mut va = Array2::<C64>::zeros((dim, mult));
        for (j, &i) in cols.iter().enumerate() {
            va.column_mut(j).assign(&basis.pairs[i].vector);
        }
        let (ua, sa, _) = va.svd(true, false).expect("svd");
        let ua = ua.expect("left singular vectors");
        let ra = sa.iter().filter(|&&x| x > tol::RANK).count();
        if ra != mult {
            matched = false;
            continue;
        }
        let qa = ua.slice(s![.., ..mult]).to_owned();
        let mut qo = Array2::<C64>::zeros((dim, mult));
        for (j, &i) in indices.iter().enumerate() {
            qo.column_mut(j).assign(&oracle.vectors.column(i));
        }
        // principal angles from the singular values of Qa* Qo
        let (_, cosines, _) = dagger(&qa).dot(&qo).svd(false, false).expect("svd");
        for c in cosines.iter() {
            let angle = c.min(1.0).acos();
            max_angle = max_angle.max(angle);
        }
    }
    if max_angle > match_tol {
        matched = false;
    }
    CompareReport {
        matched,
        max_eigenvalue_gap: max_gap,
        max_principal_angle: max_angle,
        cluster_count: basis.multiplicities.len(),
    }
}

/// Residuals of an oracle decomposition, for self-checks.
pub fn oracle_residual(u: &Array2<C64>, od: &OracleDecomposition) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, &lam) in od.eigenvalues.iter().enumerate() {
        let v: Array1<C64> = od.vectors.column(j).to_owned();
        let r = (&u.dot(&v) - &v.mapv(|z| lam * z)).norm_l2();
        worst = worst.max(r);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::BipartiteMultigraph;
    use crate::spectral::full_eigenbasis;
    use crate::tessellation::{uniform_amplitudes, TessellatedSystem};
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn kagome_quotient(theta: f64, k: f64, l: f64) -> TessellatedSystem {
        let g = BipartiteMultigraph::build(1, 1, vec![(0, 0); 3]).unwrap();
        let r = 1.0 / 3f64.sqrt();
        let a = vec![c(r, 0.0); 3];
        let b = vec![c(r, 0.0), C64::from_polar(r, l), C64::from_polar(r, k + l)];
        TessellatedSystem::new(g, a, b, theta).unwrap()
    }

    fn systems() -> Vec<TessellatedSystem> {
        let p3 = BipartiteMultigraph::build(2, 2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        let c4 = BipartiteMultigraph::build(2, 2, vec![(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap();
        vec![
            uniform_amplitudes(&p3, 0.8).unwrap(),
            uniform_amplitudes(&c4, 2.1).unwrap(),
            kagome_quotient(FRAC_PI_4, 0.0, 0.0),
            kagome_quotient(1.3, 0.9, -0.5),
        ]
    }

    #[test]
    fn decompose_is_exact_on_walk_operators() {
        for s in systems() {
            let ops = WalkOperators::build(&s);
            let od = decompose(&ops.u).unwrap();
            assert!(oracle_residual(&ops.u, &od) < 1e-12);
            let eye = Array2::<C64>::eye(ops.dim());
            let dev = (&dagger(&od.vectors).dot(&od.vectors) - &eye).norm_max();
            assert!(dev < 1e-12, "basis not orthonormal: {dev}");
            for lam in &od.eigenvalues {
                assert!((lam.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn decompose_rejects_non_unitary() {
        let m = Array2::<C64>::eye(3).mapv(|z| 2.0 * z);
        assert!(matches!(decompose(&m), Err(OracleError::NotUnitary(_))));
    }

    #[test]
    fn constructive_basis_matches_oracle() {
        for s in systems() {
            let ops = WalkOperators::build(&s);
            let basis = full_eigenbasis(&s).unwrap();
            let od = decompose(&ops.u).unwrap();
            let report = compare(&basis, &od, 1e-7);
            assert!(
                report.matched,
                "gap {:.3e} angle {:.3e}",
                report.max_eigenvalue_gap, report.max_principal_angle
            );
        }
    }

    #[test]
    fn perp_dimension_law() {
        // reversible: betti; nonreversible: betti - 1
        let rev = kagome_quotient(1.0, 0.0, 0.0);
        let ops = WalkOperators::build(&rev);
        assert_eq!(perp_null_basis(&ops).ncols(), rev.graph().betti_number());
        let nonrev = kagome_quotient(1.0, 0.7, 0.3);
        let ops = WalkOperators::build(&nonrev);
        assert_eq!(
            perp_null_basis(&ops).ncols(),
            nonrev.graph().betti_number() - 1
        );
    }
}
