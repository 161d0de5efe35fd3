//! Evolution operator, discriminant, and reduced dynamics.
//!
//! The local Hamiltonians `H_A = 2AA* - I` and `H_B = 2BB* - I` are
//! involutions, so `exp(i theta H) = cos(theta) I + i sin(theta) H` holds
//! exactly and the walk `U = -exp(i theta H_B) exp(i theta H_A)` is built
//! without any matrix exponential.

use ndarray::{s, Array1, Array2};
use num_complex::Complex64;

use crate::tessellation::{operator_a, operator_b, TessellatedSystem};

type C64 = Complex64;

fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

/// Dense operators attached to one tessellated system.
#[derive(Debug, Clone)]
pub struct WalkOperators {
    theta: f64,
    /// Isometries onto the polygon subspaces, sizes nu x m and nu x n.
    pub a: Array2<C64>,
    pub b: Array2<C64>,
    pub h_a: Array2<C64>,
    pub h_b: Array2<C64>,
    /// The walk operator, nu x nu.
    pub u: Array2<C64>,
    /// Discriminant block `A* B`, m x n.
    pub t_ab: Array2<C64>,
    /// Hermitian discriminant [[0, A*B], [B*A, 0]], (m+n) x (m+n).
    pub t: Array2<C64>,
    /// Reduced operator on the polygon space with `U L = L Lambda`.
    pub lambda: Array2<C64>,
    /// Concatenation `L = [A B]`, nu x (m+n).
    pub l: Array2<C64>,
}

impl WalkOperators {
    pub fn build(s_in: &TessellatedSystem) -> Self {
        let theta = s_in.theta();
        let g = s_in.graph();
        let (nu, m, n) = (g.edge_count(), g.left_count(), g.right_count());
        let a = operator_a(s_in);
        let b = operator_b(s_in);
        let eye = Array2::<C64>::eye(nu);
        let h_a = &a.dot(&dagger(&a)).mapv(|z| 2.0 * z) - &eye;
        let h_b = &b.dot(&dagger(&b)).mapv(|z| 2.0 * z) - &eye;
        let u = {
            let ea = exp_involution(&h_a, theta);
            let eb = exp_involution(&h_b, theta);
            eb.dot(&ea).mapv(|z| -z)
        };
        let t_ab = dagger(&a).dot(&b);
        let t_ba = dagger(&t_ab);
        let mut t = Array2::<C64>::zeros((m + n, m + n));
        t.slice_mut(s![..m, m..]).assign(&t_ab);
        t.slice_mut(s![m.., ..m]).assign(&t_ba);
        let lambda = {
            let phase = C64::new(0.0, 2.0 * theta.sin());
            let upper = t_ab.mapv(|z| phase * C64::from_polar(1.0, -theta) * z);
            let lower = t_ba.mapv(|z| phase * C64::from_polar(1.0, theta) * z);
            let s2 = 4.0 * theta.sin() * theta.sin();
            let corner = &Array2::<C64>::eye(n) - &t_ba.dot(&t_ab).mapv(|z| s2 * z);
            let mut lam = Array2::<C64>::zeros((m + n, m + n));
            lam.slice_mut(s![..m, ..m]).assign(&Array2::<C64>::eye(m));
            lam.slice_mut(s![..m, m..]).assign(&upper);
            lam.slice_mut(s![m.., ..m]).assign(&lower);
            lam.slice_mut(s![m.., m..]).assign(&corner);
            lam.mapv(|z| -z)
        };
        let mut l = Array2::<C64>::zeros((nu, m + n));
        l.slice_mut(s![.., ..m]).assign(&a);
        l.slice_mut(s![.., m..]).assign(&b);
        WalkOperators {
            theta,
            a,
            b,
            h_a,
            h_b,
            u,
            t_ab,
            t,
            lambda,
            l,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// Applies the polygon-space gauge `D`: identity on the left block,
    /// multiplication by `i e^{i(theta + phi)}` on the right block. The
    /// composite `L D` sends T-eigenvectors at `cos phi = mu sin theta` to
    /// U-eigenvectors at `e^{2 i phi}`.
    pub fn apply_d(&self, phi: f64, v: &Array1<C64>) -> Array1<C64> {
        let m = self.a.ncols();
        let phase = C64::new(0.0, 1.0) * C64::from_polar(1.0, self.theta + phi);
        let mut out = v.clone();
        for j in m..v.len() {
            out[j] *= phase;
        }
        out
    }
}

/// `exp(i theta H)` for an involution `H` (i.e. `H^2 = I`).
pub fn exp_involution(h: &Array2<C64>, theta: f64) -> Array2<C64> {
    let eye = Array2::<C64>::eye(h.nrows());
    &eye.mapv(|z| theta.cos() * z) + &h.mapv(|z| C64::new(0.0, theta.sin()) * z)
}
