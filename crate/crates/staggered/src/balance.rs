//! Quantum detailed balance and cycle balancing indices.
//!
//! A polygon weight vector `pi` satisfies detailed balance when
//! `a(e) pi(alpha) = b(e) pi(beta)` for every edge `e` joining the left
//! polygon `alpha` to the right polygon `beta`. Such a `pi` exists iff the
//! balancing index of every fundamental cycle vanishes; the index is
//! computed from the alternating amplitude product around the cycle.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::multigraph::{fundamental_cycles, spanning_tree, FundamentalCycle};
use crate::tessellation::TessellatedSystem;
use crate::tol;

type C64 = Complex64;

/// Alternating ratio over a walk of edges: positions 1, 3, ... contribute
/// `b/a`, positions 2, 4, ... contribute `a/b`. Empty product is 1.
fn alternating_ratio(s: &TessellatedSystem, edges: &[usize]) -> C64 {
    let mut num = C64::new(1.0, 0.0);
    let mut den = C64::new(1.0, 0.0);
    for (j, &e) in edges.iter().enumerate() {
        if j % 2 == 0 {
            num *= s.b(e);
            den *= s.a(e);
        } else {
            num *= s.a(e);
            den *= s.b(e);
        }
    }
    num / den
}

/// Balancing index of a cycle: the alternating amplitude product around it
/// minus one. Zero iff a detailed-balance weight is consistent around the
/// cycle.
pub fn balancing_index(s: &TessellatedSystem, c: &FundamentalCycle) -> C64 {
    alternating_ratio(s, &c.edges) - 1.0
}

/// Balancing index of the cycle with the roles of `a` and `b` swapped;
/// satisfies `tilde = -delta / (1 + delta)`.
pub fn balancing_index_tilde(s: &TessellatedSystem, c: &FundamentalCycle) -> C64 {
    1.0 / alternating_ratio(s, &c.edges) - 1.0
}

/// Connector-path factor `kappa(p)`; `kappa` of the empty path is 1.
pub fn path_factor(s: &TessellatedSystem, edges: &[usize]) -> C64 {
    alternating_ratio(s, edges)
}

/// Outcome of the reversibility decision.
#[derive(Debug, Clone)]
pub struct ReversibilityReport {
    pub reversible: bool,
    /// Detailed-balance weights over the combined polygon set, unit norm
    /// with positive real entry at the tree root. `Some` iff reversible.
    pub pi: Option<Array1<C64>>,
    /// `(chord id, balancing index)` per fundamental cycle.
    pub cycle_defects: Vec<(usize, C64)>,
    pub max_cycle_defect: f64,
    pub tolerance_used: f64,
    /// True when the decision sits inside the warning band just above the
    /// reversibility tolerance.
    pub borderline: bool,
}

/// Decides quantum detailed balance.
///
/// Propagates a candidate weight down the BFS spanning tree and measures
/// the balancing index of every fundamental cycle; the system is reversible
/// iff the largest index magnitude stays below the reversibility tolerance.
pub fn detect_reversibility(s: &TessellatedSystem) -> ReversibilityReport {
    let g = s.graph();
    let tree = spanning_tree(g);
    let cycles = fundamental_cycles(g, &tree);
    let cycle_defects: Vec<(usize, C64)> = cycles
        .iter()
        .map(|c| (c.chord, balancing_index(s, c)))
        .collect();
    let max_cycle_defect = cycle_defects
        .iter()
        .map(|(_, d)| d.norm())
        .fold(0.0, f64::max);
    let reversible = max_cycle_defect <= tol::REVERSIBILITY;
    let borderline =
        max_cycle_defect > tol::BORDERLINE_LOW && max_cycle_defect < tol::BORDERLINE_HIGH;

    let pi = if reversible {
        let total = g.vertex_count();
        let mut pi = Array1::<C64>::zeros(total);
        pi[tree.root()] = C64::new(1.0, 0.0);
        // BFS order: parents are always set before children
        let mut order: Vec<usize> = vec![tree.root()];
        let mut idx = 0;
        let mut placed = vec![false; total];
        placed[tree.root()] = true;
        while idx < order.len() {
            let v = order[idx];
            idx += 1;
            for &e in g.incident_edges(v) {
                if !tree.contains_edge(e) {
                    continue;
                }
                let w = g.other_end(e, v);
                if placed[w] {
                    continue;
                }
                // a(e) pi(left end) = b(e) pi(right end)
                pi[w] = if g.is_left(w) {
                    s.b(e) * pi[v] / s.a(e)
                } else {
                    s.a(e) * pi[v] / s.b(e)
                };
                placed[w] = true;
                order.push(w);
            }
        }
        let norm = pi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Some(pi.mapv(|z| z / norm))
    } else {
        None
    };

    ReversibilityReport {
        reversible,
        pi,
        cycle_defects,
        max_cycle_defect,
        tolerance_used: tol::REVERSIBILITY,
        borderline,
    }
}

/// The classical Markov chain shadowing the walk.
#[derive(Debug, Clone)]
pub struct ClassicalChain {
    /// Column-stochastic transition matrix over the combined polygon set:
    /// `p[beta, alpha] = sum |a(e)|^2` and `p[alpha, beta] = sum |b(e)|^2`
    /// over edges joining `alpha` and `beta`.
    pub p: Array2<f64>,
    /// Stationary distribution `|pi|^2` (normalized); `Some` iff reversible.
    pub stationary: Option<Array1<f64>>,
}

pub fn classical_chain(s: &TessellatedSystem, report: &ReversibilityReport) -> ClassicalChain {
    let g = s.graph();
    let total = g.vertex_count();
    let mut p = Array2::<f64>::zeros((total, total));
    for e in 0..g.edge_count() {
        let alpha = g.left_end(e);
        let beta = g.right_end(e);
        p[[beta, alpha]] += s.a(e).norm_sqr();
        p[[alpha, beta]] += s.b(e).norm_sqr();
    }
    let stationary = report.pi.as_ref().map(|pi| {
        let mut zeta = pi.mapv(|z| z.norm_sqr());
        let sum: f64 = zeta.sum();
        zeta.mapv_inplace(|x| x / sum);
        zeta
    });
    ClassicalChain { p, stationary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::BipartiteMultigraph;
    use crate::tessellation::{uniform_amplitudes, TessellatedSystem};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Kagome quotient at momentum (k, l): triple edge with phased b.
    fn kagome_quotient(k: f64, l: f64) -> TessellatedSystem {
        let g = BipartiteMultigraph::build(1, 1, vec![(0, 0); 3]).unwrap();
        let r = 1.0 / 3f64.sqrt();
        let a = vec![c(r, 0.0); 3];
        let b = vec![
            c(r, 0.0),
            C64::from_polar(r, l),
            C64::from_polar(r, k + l),
        ];
        TessellatedSystem::new(g, a, b, 1.0).unwrap()
    }

    #[test]
    fn uniform_systems_are_reversible() {
        let graphs = [
            BipartiteMultigraph::build(1, 1, vec![(0, 0); 3]).unwrap(),
            BipartiteMultigraph::build(2, 2, vec![(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap(),
            BipartiteMultigraph::build(2, 3, vec![(0, 0), (0, 1), (1, 1), (1, 2), (0, 2), (1, 0)])
                .unwrap(),
        ];
        for g in graphs {
            let s = uniform_amplitudes(&g, 0.9).unwrap();
            let report = detect_reversibility(&s);
            assert!(report.reversible, "defect {}", report.max_cycle_defect);
            assert!(report.max_cycle_defect < 1e-14);
            let pi = report.pi.unwrap();
            for e in 0..g.edge_count() {
                let lhs = s.a(e) * pi[g.left_end(e)];
                let rhs = s.b(e) * pi[g.right_end(e)];
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn kagome_quotient_defects_match_closed_form() {
        let (k, l) = (0.7, -1.3);
        let s = kagome_quotient(k, l);
        let report = detect_reversibility(&s);
        assert!(!report.reversible);
        assert!(report.pi.is_none());
        // chords 1 and 2; cycle j has edges [j, 0] so the alternating
        // product is b(j)/a(j) * a(0)/b(0) = e^{i phase_j}
        let expect = [
            C64::from_polar(1.0, l) - 1.0,
            C64::from_polar(1.0, k + l) - 1.0,
        ];
        assert_eq!(report.cycle_defects.len(), 2);
        for ((chord, delta), (j, want)) in report.cycle_defects.iter().zip([(1, expect[0]), (2, expect[1])]) {
            assert_eq!(*chord, j);
            assert!((delta - want).norm() < 1e-12);
        }
    }

    #[test]
    fn kagome_quotient_reversible_at_zero_momentum() {
        let s = kagome_quotient(0.0, 0.0);
        let report = detect_reversibility(&s);
        assert!(report.reversible && !report.borderline);
    }

    #[test]
    fn paper_labeled_cycle_index() {
        // with the tree edge chosen as the middle edge, the cycle made of
        // edges {0, 1} starting at the right vertex gives e^{-il} - 1
        let (k, l) = (0.6, 1.4);
        let s = kagome_quotient(k, l);
        let c0 = crate::multigraph::FundamentalCycle {
            chord: 0,
            edges: vec![0, 1],
            vertices: vec![1, 0],
        };
        let want = C64::from_polar(1.0, -l) - 1.0;
        assert!((balancing_index(&s, &c0) - want).norm() < 1e-12);
    }

    #[test]
    fn tilde_index_identity() {
        let s = kagome_quotient(0.9, 2.1);
        let g = s.graph();
        let tree = spanning_tree(g);
        for cyc in fundamental_cycles(g, &tree) {
            let d = balancing_index(&s, &cyc);
            let dt = balancing_index_tilde(&s, &cyc);
            assert!((dt + d / (d + 1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn path_factor_values() {
        let s = kagome_quotient(0.4, 1.1);
        assert_eq!(path_factor(&s, &[]), c(1.0, 0.0));
        // single edge path, odd position: b/a
        let want = s.b(1) / s.a(1);
        assert!((path_factor(&s, &[1]) - want).norm() < 1e-14);
        // two edges: (b(1)/a(1)) * (a(2)/b(2))
        let want = s.b(1) / s.a(1) * s.a(2) / s.b(2);
        assert!((path_factor(&s, &[1, 2]) - want).norm() < 1e-14);
    }

    #[test]
    fn classical_chain_is_stochastic_with_stationary_pi_squared() {
        let g =
            BipartiteMultigraph::build(2, 2, vec![(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap();
        let s = uniform_amplitudes(&g, 1.3).unwrap();
        let report = detect_reversibility(&s);
        let chain = classical_chain(&s, &report);
        for col in 0..chain.p.ncols() {
            let sum: f64 = chain.p.column(col).sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
        let zeta = chain.stationary.unwrap();
        let pz = chain.p.dot(&zeta);
        for (x, y) in pz.iter().zip(zeta.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn p3_tree_is_reversible_with_propagated_pi() {
        let g = BipartiteMultigraph::build(2, 2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        let s = uniform_amplitudes(&g, 0.6).unwrap();
        let report = detect_reversibility(&s);
        assert!(report.reversible);
        assert!(report.cycle_defects.is_empty());
        assert_eq!(report.max_cycle_defect, 0.0);
        let pi = report.pi.unwrap();
        // uniform P3: a = (1/sqrt2, 1/sqrt2, 1), b = (1, 1/sqrt2, 1/sqrt2);
        // unnormalized weights 1, 1/sqrt2 propagate symmetrically
        assert!((pi[0] - pi[3]).norm() < 1e-12);
        assert!((pi[1] - pi[2]).norm() < 1e-12);
        let ratio = pi[2] / pi[0];
        assert!((ratio - c(1.0 / 2f64.sqrt(), 0.0)).norm() < 1e-12);
    }
}
