//! Property-based invariants on randomly generated walk systems, plus
//! structural identities that tie the analytic constructions to dense
//! linear algebra.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Norm, SVD};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::TAU;

use staggered_walk::multigraph::{fundamental_cycles, spanning_tree};
use staggered_walk::operators::WalkOperators;
use staggered_walk::oracle;
use staggered_walk::random::{random_graph_sized, random_system, rng};
use staggered_walk::spectral::{full_eigenbasis, SubspaceTag};
use staggered_walk::tessellation::{uniform_amplitudes, TessellatedSystem};
use staggered_walk::util::{dagger, eigh_columns};

type C64 = Complex64;

fn build(seed: u64, theta: f64, uniform: bool) -> TessellatedSystem {
    let mut r = rng(seed);
    let g = random_graph_sized(&mut r, 14);
    if uniform {
        uniform_amplitudes(&g, theta).unwrap()
    } else {
        random_system(&mut r, g, theta)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operator_is_unitary_and_discriminant_spectrum_is_symmetric(
        seed in 0u64..10_000,
        theta in 0.1f64..3.0,
        uniform in any::<bool>(),
    ) {
        let s = build(seed, theta, uniform);
        let ops = WalkOperators::build(&s);
        let eye = Array2::<C64>::eye(ops.dim());
        prop_assert!((&dagger(&ops.u).dot(&ops.u) - &eye).norm_max() < 1e-12);

        let (tvals, _) = eigh_columns(&ops.t);
        for &mu in tvals.iter() {
            prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&mu));
        }
        // block anti-diagonal Hermitian: nonzero spectrum comes in +- pairs
        for &mu in tvals.iter() {
            if mu.abs() > 1e-9 {
                let mirrored = tvals.iter().any(|&nu| (nu + mu).abs() < 1e-9);
                prop_assert!(mirrored, "eigenvalue {mu} lacks its negative");
            }
        }
    }

    #[test]
    fn kernel_of_l_is_kernel_of_i_plus_t(
        seed in 0u64..10_000,
        theta in 0.1f64..3.0,
        uniform in any::<bool>(),
    ) {
        let s = build(seed, theta, uniform);
        let ops = WalkOperators::build(&s);
        let (tvals, tvecs) = eigh_columns(&ops.t);
        // every eigenvector of T at -1 is annihilated by L
        let mut kernel_dim = 0;
        for (j, &mu) in tvals.iter().enumerate() {
            if (mu + 1.0).abs() < 1e-9 {
                kernel_dim += 1;
                let f: Array1<C64> = tvecs.column(j).to_owned();
                prop_assert!(ops.l.dot(&f).norm_l2() < 1e-8);
            }
        }
        // and the rank deficiency of L is exactly that kernel dimension
        let (_, sv, _) = ops.l.svd(false, false).unwrap();
        let smax = sv.iter().copied().fold(0.0, f64::max);
        let rank = sv.iter().filter(|&&x| x > 1e-9 * smax).count();
        prop_assert_eq!(ops.l.ncols() - rank, kernel_dim);
    }

    #[test]
    fn polygon_gauge_change_leaves_spectrum_invariant(
        seed in 0u64..10_000,
        theta in 0.1f64..3.0,
        gamma in 0.0f64..TAU,
    ) {
        let s = build(seed, theta, false);
        let ops = WalkOperators::build(&s);
        let phase = C64::from_polar(1.0, gamma);
        // rotate the amplitude vector of left polygon 0 by a global phase
        let g = s.graph().clone();
        let a: Vec<C64> = (0..g.edges().len())
            .map(|e| if g.edges()[e].0 == 0 { phase * s.a(e) } else { s.a(e) })
            .collect();
        let b: Vec<C64> = (0..g.edges().len()).map(|e| s.b(e)).collect();
        let s2 = TessellatedSystem::new(g, a, b, theta).unwrap();
        let ops2 = WalkOperators::build(&s2);

        let od1 = oracle::decompose(&ops.u).unwrap();
        let od2 = oracle::decompose(&ops2.u).unwrap();
        for lam in &od1.eigenvalues {
            let gap = od2.eigenvalues.iter().map(|x| (x - lam).norm())
                .fold(f64::INFINITY, f64::min);
            prop_assert!(gap < 1e-9, "spectrum moved by {gap:.3e} under gauge change");
        }
        // the constructive decomposition still goes through
        let basis = full_eigenbasis(&s2).unwrap();
        prop_assert_eq!(basis.pairs.len(), ops2.dim());
    }

    #[test]
    fn cycle_eigenvectors_lie_in_the_perp_space(
        seed in 0u64..10_000,
        theta in 0.1f64..3.0,
        uniform in any::<bool>(),
    ) {
        let s = build(seed, theta, uniform);
        let ops = WalkOperators::build(&s);
        let q = oracle::perp_null_basis(&ops);
        let basis = full_eigenbasis(&s).unwrap();
        for pair in basis.pairs.iter().filter(|p| p.tag == SubspaceTag::CyclePerp) {
            let coeffs = dagger(&q).dot(&pair.vector.view().insert_axis(ndarray::Axis(1)));
            let projected = q.dot(&coeffs);
            let v = projected.column(0).to_owned();
            prop_assert!((&pair.vector - &v).norm_l2() < 1e-8);
        }
    }

    #[test]
    fn eigenbasis_is_deterministic(
        seed in 0u64..10_000,
        theta in 0.1f64..3.0,
    ) {
        let s = build(seed, theta, false);
        let b1 = full_eigenbasis(&s).unwrap();
        let b2 = full_eigenbasis(&s).unwrap();
        let ser = |b: &staggered_walk::spectral::EigenBasis| {
            serde_json::to_string(&staggered_walk::io::EigenBasisJson::from_basis(b)).unwrap()
        };
        prop_assert_eq!(ser(&b1), ser(&b2));
    }

    #[test]
    fn tree_propagation_agrees_with_cycle_balancing(
        seed in 0u64..10_000,
        theta in 0.1f64..3.0,
        uniform in any::<bool>(),
    ) {
        let s = build(seed, theta, uniform);
        let verdict = staggered_walk::balance::detect_reversibility(&s).reversible;
        let g = s.graph();
        let tree = spanning_tree(g);
        let balanced = fundamental_cycles(g, &tree)
            .iter()
            .all(|c| staggered_walk::balance::balancing_index(&s, c).norm() <= 1e-9);
        prop_assert_eq!(verdict, balanced);
    }
}

/// The closed-form momentum eigenvector, with its singular denominator
/// cleared, is a trigonometric polynomial; its inverse Fourier transform
/// over a fine grid reproduces the finitely supported +-1 pattern of the
/// localized real-space eigenvector.
#[test]
fn momentum_eigenvectors_inverse_fourier_to_localized_pattern() {
    use staggered_walk::lattice::{momentum_eigenvector, MomentumPoint};

    let n = 128usize;
    // expected weights per site index j at cell offset (x, y), from the
    // localized pattern: w = (1 - e^{-ik}) * v has components
    // (1 - e^{-ik}, e^{-ik} - e^{il}, e^{il} - 1)
    let expected = |j: usize, x: i64, y: i64| -> f64 {
        match (j, x, y) {
            (0, 0, 0) => 1.0,
            (0, -1, 0) => -1.0,
            (1, -1, 0) => 1.0,
            (1, 0, 1) => -1.0,
            (2, 0, 1) => 1.0,
            (2, 0, 0) => -1.0,
            _ => 0.0,
        }
    };

    for x in -1i64..=1 {
        for y in -1i64..=1 {
            let mut acc = [C64::new(0.0, 0.0); 3];
            for i in 0..n {
                for jj in 0..n {
                    let k = TAU * i as f64 / n as f64;
                    let l = TAU * jj as f64 / n as f64;
                    let eik = C64::from_polar(1.0, -k);
                    let eil = C64::from_polar(1.0, l);
                    // w = (1 - e^{-ik}) v extends continuously across the
                    // singular line k = 0
                    let w = [1.0 - eik, eik - eil, eil - 1.0];
                    if i != 0 && (i * 8) % n == 0 && jj % 16 == 0 {
                        // spot-check w against the closed-form eigenvector
                        let v = momentum_eigenvector(MomentumPoint::new(k, l)).unwrap();
                        for (wc, vc) in w.iter().zip(v.iter()) {
                            assert!((wc - (1.0 - eik) * vc).norm() < 1e-12);
                        }
                    }
                    let phase = C64::from_polar(1.0, -(k * x as f64 + l * y as f64));
                    for (c, wc) in acc.iter_mut().zip(w.iter()) {
                        *c += phase * wc;
                    }
                }
            }
            for (j, c) in acc.iter().enumerate() {
                let got = c / (n * n) as f64;
                let want = expected(j, x, y);
                assert!(
                    (got - want).norm() < 1e-3,
                    "component {j} at offset ({x}, {y}): got {got}, want {want}"
                );
            }
        }
    }
}
