//! Small linear-algebra helpers shared by the spectral and oracle modules.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, Norm, UPLO};
use num_complex::Complex64;

type C64 = Complex64;

pub fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

/// Hermitian eigendecomposition with eigenvectors as columns satisfying
/// `M v = mu v`, eigenvalues ascending.
///
/// The LAPACK binding returns the conjugated columns for row-major complex
/// input; detect that on the extremal eigenvector and repair it.
pub fn eigh_columns(m: &Array2<C64>) -> (Array1<f64>, Array2<C64>) {
    let (vals, vecs) = m.eigh(UPLO::Lower).expect("hermitian eigensolve");
    if vals.is_empty() {
        return (vals, vecs);
    }
    let residual = |v: &Array2<C64>| {
        let mut mv = m.dot(v);
        for (j, &mu) in vals.iter().enumerate() {
            let col = v.column(j).mapv(|z| mu * z);
            mv.column_mut(j).zip_mut_with(&col, |x, y| *x -= y);
        }
        mv.norm_max()
    };
    let plain = residual(&vecs);
    let conj = residual(&vecs.mapv(|z| z.conj()));
    if conj < plain {
        (vals, vecs.mapv(|z| z.conj()))
    } else {
        (vals, vecs)
    }
}
