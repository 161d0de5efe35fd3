//! Tessellation covers and polygon amplitude data.
//!
//! A tessellated system carries the underlying bipartite multigraph
//! together with the per-edge amplitudes `a`, `b` (the components of the
//! polygon unit vectors) and the walk angle `theta`. The polygon isometries
//! `A` and `B` are derived from it.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{CoverError, SystemError};
use crate::multigraph::BipartiteMultigraph;

type C64 = Complex64;

/// Squared-norm tolerance inside which polygon vectors are renormalized
/// exactly; anything further off is rejected.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Amplitudes `a`, `b` per edge of the underlying multigraph, plus `theta`.
///
/// Invariants enforced at construction: `theta` strictly inside `(0, pi)`,
/// all amplitudes nonzero, and unit squared norm per polygon.
#[derive(Debug, Clone)]
pub struct TessellatedSystem {
    graph: BipartiteMultigraph,
    a: Vec<C64>,
    b: Vec<C64>,
    theta: f64,
}

impl TessellatedSystem {
    pub fn new(
        graph: BipartiteMultigraph,
        a: Vec<C64>,
        b: Vec<C64>,
        theta: f64,
    ) -> Result<Self, SystemError> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(SystemError::InvalidTheta(theta));
        }
        let nu = graph.edge_count();
        if a.len() != nu {
            return Err(SystemError::AmplitudeCountMismatch {
                got: a.len(),
                expected: nu,
            });
        }
        if b.len() != nu {
            return Err(SystemError::AmplitudeCountMismatch {
                got: b.len(),
                expected: nu,
            });
        }
        for e in 0..nu {
            if a[e].norm() == 0.0 {
                return Err(SystemError::ZeroAmplitude { which: 'a', edge: e });
            }
            if b[e].norm() == 0.0 {
                return Err(SystemError::ZeroAmplitude { which: 'b', edge: e });
            }
        }
        let mut system = TessellatedSystem { graph, a, b, theta };
        system.renormalize()?;
        Ok(system)
    }

    /// Checks per-polygon squared norms and rescales each polygon vector
    /// to exact unit norm when within tolerance.
    fn renormalize(&mut self) -> Result<(), SystemError> {
        for v in 0..self.graph.vertex_count() {
            let left = self.graph.is_left(v);
            let amps: &mut Vec<C64> = if left { &mut self.a } else { &mut self.b };
            let norm_sq: f64 = self
                .graph
                .incident_edges(v)
                .iter()
                .map(|&e| amps[e].norm_sqr())
                .sum();
            if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
                return Err(SystemError::NotNormalized {
                    polygon: v,
                    norm_sq,
                });
            }
            let scale = 1.0 / norm_sq.sqrt();
            for &e in self.graph.incident_edges(v) {
                amps[e] *= scale;
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &BipartiteMultigraph {
        &self.graph
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Returns a copy of the system with a different walk angle.
    pub fn with_theta(&self, theta: f64) -> Result<Self, SystemError> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(SystemError::InvalidTheta(theta));
        }
        let mut s = self.clone();
        s.theta = theta;
        Ok(s)
    }

    pub fn a(&self, edge: usize) -> C64 {
        self.a[edge]
    }

    pub fn b(&self, edge: usize) -> C64 {
        self.b[edge]
    }

    pub fn a_all(&self) -> &[C64] {
        &self.a
    }

    pub fn b_all(&self) -> &[C64] {
        &self.b
    }

    /// `a(e)` if `vertex` is the left endpoint of `e`, else `b(e)`.
    pub fn amp_at(&self, edge: usize, vertex: usize) -> C64 {
        if self.graph.is_left(vertex) {
            self.a[edge]
        } else {
            self.b[edge]
        }
    }
}

/// Builds the isometry `A` whose column `i` is the polygon vector of the
/// i-th left polygon over the walk-graph vertices (edge ids).
pub fn operator_a(s: &TessellatedSystem) -> Array2<C64> {
    let g = s.graph();
    let mut a = Array2::zeros((g.edge_count(), g.left_count()));
    for e in 0..g.edge_count() {
        a[[e, g.left_end(e)]] = s.a(e);
    }
    a
}

/// Column `j` is the polygon vector of the j-th right polygon.
pub fn operator_b(s: &TessellatedSystem) -> Array2<C64> {
    let g = s.graph();
    let mut b = Array2::zeros((g.edge_count(), g.right_count()));
    for e in 0..g.edge_count() {
        b[[e, g.right_end(e) - g.left_count()]] = s.b(e);
    }
    b
}

/// Grover-like default: `a(e) = 1/sqrt(deg(left end))`, same for `b` on the
/// right. The normalization invariant holds exactly.
pub fn uniform_amplitudes(
    g: &BipartiteMultigraph,
    theta: f64,
) -> Result<TessellatedSystem, SystemError> {
    let a = (0..g.edge_count())
        .map(|e| C64::new(1.0 / (g.degree(g.left_end(e)) as f64).sqrt(), 0.0))
        .collect();
    let b = (0..g.edge_count())
        .map(|e| C64::new(1.0 / (g.degree(g.right_end(e)) as f64).sqrt(), 0.0))
        .collect();
    TessellatedSystem::new(g.clone(), a, b, theta)
}

/// A tessellation cover of a walk graph given extensionally: polygons as
/// vertex subsets plus one amplitude vector per polygon.
#[derive(Debug, Clone)]
pub struct CoverInput {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub t1: Vec<Vec<usize>>,
    pub t2: Vec<Vec<usize>>,
    pub amps1: Vec<Vec<C64>>,
    pub amps2: Vec<Vec<C64>>,
}

impl CoverInput {
    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.vertices]; self.vertices];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }
}

/// Checks the cover axioms: both tessellations partition the vertex set,
/// every polygon is a clique, and the two edge sets together cover E(G).
pub fn validate_cover(c: &CoverInput) -> Result<&CoverInput, CoverError> {
    let adj = c.adjacency();
    for (ti, (polys, amps)) in [(&c.t1, &c.amps1), (&c.t2, &c.amps2)].iter().enumerate() {
        let mut seen = vec![0usize; c.vertices];
        for poly in polys.iter() {
            for &v in poly {
                seen[v] += 1;
            }
        }
        for (v, &count) in seen.iter().enumerate() {
            if count != 1 {
                return Err(CoverError::NotAPartition {
                    tessellation: ti + 1,
                    vertex: v,
                    count,
                });
            }
        }
        for (pi, poly) in polys.iter().enumerate() {
            for (i, &u) in poly.iter().enumerate() {
                for &v in &poly[i + 1..] {
                    if !adj[u][v] {
                        return Err(CoverError::PolygonNotClique {
                            tessellation: ti + 1,
                            polygon: pi,
                            u,
                            v,
                        });
                    }
                }
            }
        }
        for (pi, (poly, amp)) in polys.iter().zip(amps.iter()).enumerate() {
            if poly.len() != amp.len() {
                return Err(CoverError::AmplitudeLengthMismatch {
                    tessellation: ti + 1,
                    polygon: pi,
                    amps: amp.len(),
                    size: poly.len(),
                });
            }
        }
    }
    for &(u, v) in &c.edges {
        let covered = [&c.t1, &c.t2]
            .iter()
            .any(|t| t.iter().any(|poly| poly.contains(&u) && poly.contains(&v)));
        if !covered {
            return Err(CoverError::EdgeUncovered { u, v });
        }
    }
    Ok(c)
}

/// Builds the underlying multigraph and a tessellated system from a cover.
///
/// Left vertices are the polygons of the first tessellation, right vertices
/// those of the second; each walk-graph vertex `u` becomes the edge joining
/// the two polygons containing it, with its id preserving the input vertex
/// order. Amplitudes transfer edgewise.
pub fn from_cover(c: &CoverInput, theta: f64) -> Result<TessellatedSystem, SystemError> {
    validate_cover(c)?;
    let mut poly1_of = vec![usize::MAX; c.vertices];
    let mut poly2_of = vec![usize::MAX; c.vertices];
    for (pi, poly) in c.t1.iter().enumerate() {
        for &v in poly {
            poly1_of[v] = pi;
        }
    }
    for (pi, poly) in c.t2.iter().enumerate() {
        for &v in poly {
            poly2_of[v] = pi;
        }
    }
    let edge_list: Vec<(usize, usize)> = (0..c.vertices)
        .map(|u| (poly1_of[u], poly2_of[u]))
        .collect();
    let graph = BipartiteMultigraph::build(c.t1.len(), c.t2.len(), edge_list)?;
    let mut a = vec![C64::new(0.0, 0.0); c.vertices];
    let mut b = vec![C64::new(0.0, 0.0); c.vertices];
    for (pi, (poly, amp)) in c.t1.iter().zip(c.amps1.iter()).enumerate() {
        let _ = pi;
        for (&v, &x) in poly.iter().zip(amp.iter()) {
            a[v] = x;
        }
    }
    for (poly, amp) in c.t2.iter().zip(c.amps2.iter()) {
        for (&v, &x) in poly.iter().zip(amp.iter()) {
            b[v] = x;
        }
    }
    TessellatedSystem::new(graph, a, b, theta)
}

/// Convenience: a state vector over the walk-graph vertices.
pub type StateVector = Array1<C64>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph;
    use ndarray_linalg::Norm;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// P3 cover from the worked example: vertices {0,1,2} on a path,
    /// T1 = {{0,1},{2}}, T2 = {{0},{1,2}}.
    pub(crate) fn p3_cover() -> CoverInput {
        let r = 1.0 / 2f64.sqrt();
        CoverInput {
            vertices: 3,
            edges: vec![(0, 1), (1, 2)],
            t1: vec![vec![0, 1], vec![2]],
            t2: vec![vec![0], vec![1, 2]],
            amps1: vec![vec![c(r, 0.0), c(r, 0.0)], vec![c(1.0, 0.0)]],
            amps2: vec![vec![c(1.0, 0.0)], vec![c(r, 0.0), c(r, 0.0)]],
        }
    }

    #[test]
    fn validate_cover_examples() {
        assert!(validate_cover(&p3_cover()).is_ok());

        let mut broken = p3_cover();
        broken.t2 = vec![vec![0], vec![1]];
        broken.amps2 = vec![vec![c(1.0, 0.0)], vec![c(1.0, 0.0)]];
        // vertex 2 missing from T2 entirely: partition violation comes first
        assert!(matches!(
            validate_cover(&broken),
            Err(CoverError::NotAPartition { .. })
        ));

        let mut uncovered = p3_cover();
        uncovered.t2 = vec![vec![0], vec![1], vec![2]];
        uncovered.amps2 = vec![
            vec![c(1.0, 0.0)],
            vec![c(1.0, 0.0)],
            vec![c(1.0, 0.0)],
        ];
        uncovered.t1 = vec![vec![0, 1], vec![2]];
        assert_eq!(
            validate_cover(&uncovered).err(),
            Some(CoverError::EdgeUncovered { u: 1, v: 2 })
        );

        // triangle with one tessellation covering everything
        let r = 1.0 / 3f64.sqrt();
        let tri = CoverInput {
            vertices: 3,
            edges: vec![(0, 1), (1, 2), (0, 2)],
            t1: vec![vec![0, 1, 2]],
            t2: vec![vec![0], vec![1], vec![2]],
            amps1: vec![vec![c(r, 0.0); 3]],
            amps2: vec![vec![c(1.0, 0.0)]; 3],
        };
        assert!(validate_cover(&tri).is_ok());

        let mut nonclique = tri.clone();
        nonclique.edges = vec![(0, 1), (1, 2)];
        assert!(matches!(
            validate_cover(&nonclique),
            Err(CoverError::PolygonNotClique { .. })
        ));
    }

    #[test]
    fn from_cover_examples() {
        let s = from_cover(&p3_cover(), 1.0).unwrap();
        assert_eq!(s.graph().left_count(), 2);
        assert_eq!(s.graph().right_count(), 2);
        assert_eq!(s.graph().edge_count(), 3);

        // kagome quotient: triangle whose both tessellations are one
        // size-3 polygon each
        let r = 1.0 / 3f64.sqrt();
        let tri = CoverInput {
            vertices: 3,
            edges: vec![(0, 1), (1, 2), (0, 2)],
            t1: vec![vec![0, 1, 2]],
            t2: vec![vec![0, 1, 2]],
            amps1: vec![vec![c(r, 0.0); 3]],
            amps2: vec![vec![c(r, 0.0); 3]],
        };
        let s = from_cover(&tri, 1.0).unwrap();
        assert_eq!(s.graph().vertex_count(), 2);
        assert_eq!(s.graph().edge_count(), 3);

        // single vertex, both polygons {v}
        let single = CoverInput {
            vertices: 1,
            edges: vec![],
            t1: vec![vec![0]],
            t2: vec![vec![0]],
            amps1: vec![vec![c(1.0, 0.0)]],
            amps2: vec![vec![c(1.0, 0.0)]],
        };
        let s = from_cover(&single, 1.0).unwrap();
        assert_eq!(s.graph().edge_count(), 1);
        assert_eq!(s.graph().vertex_count(), 2);
    }

    #[test]
    fn from_cover_round_trips_adjacency() {
        let cover = p3_cover();
        let s = from_cover(&cover, 1.0).unwrap();
        let lg = multigraph::line_graph(s.graph());
        assert_eq!(lg.vertex_count(), cover.vertices);
        for &(u, v) in &cover.edges {
            assert!(lg.has_edge(u, v));
        }
        assert_eq!(lg.edge_count(), cover.edges.len());
    }

    #[test]
    fn operator_columns_are_orthonormal() {
        let g = multigraph::BipartiteMultigraph::build(
            2,
            2,
            vec![(0, 0), (0, 1), (1, 1), (1, 0)],
        )
        .unwrap();
        let s = uniform_amplitudes(&g, std::f64::consts::FRAC_PI_3).unwrap();
        let a = operator_a(&s);
        let b = operator_b(&s);
        let eye_m = Array2::<C64>::eye(2);
        let gram_a = a.t().mapv(|z| z.conj()).dot(&a);
        let gram_b = b.t().mapv(|z| z.conj()).dot(&b);
        assert!((&gram_a - &eye_m).norm_max() < 1e-12);
        assert!((&gram_b - &eye_m).norm_max() < 1e-12);

        // projections are Hermitian idempotents
        let proj = a.dot(&a.t().mapv(|z| z.conj()));
        let herm_dev = (&proj - &proj.t().mapv(|z| z.conj())).norm_max();
        let idem_dev = (&proj.dot(&proj) - &proj).norm_max();
        assert!(herm_dev < 1e-12 && idem_dev < 1e-12);
    }

    #[test]
    fn kagome_quotient_operator_columns() {
        let g = multigraph::BipartiteMultigraph::build(1, 1, vec![(0, 0); 3]).unwrap();
        let s = uniform_amplitudes(&g, 1.0).unwrap();
        let a = operator_a(&s);
        let b = operator_b(&s);
        let r = 1.0 / 3f64.sqrt();
        for e in 0..3 {
            assert!((a[[e, 0]] - c(r, 0.0)).norm() < 1e-15);
            assert!((b[[e, 0]] - c(r, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn construction_rejects_bad_systems() {
        let g = multigraph::BipartiteMultigraph::build(1, 1, vec![(0, 0)]).unwrap();
        let one = vec![c(1.0, 0.0)];
        assert!(matches!(
            TessellatedSystem::new(g.clone(), one.clone(), one.clone(), 0.0),
            Err(SystemError::InvalidTheta(_))
        ));
        assert!(matches!(
            TessellatedSystem::new(g.clone(), vec![c(0.0, 0.0)], one.clone(), 1.0),
            Err(SystemError::ZeroAmplitude { which: 'a', .. })
        ));
        assert!(matches!(
            TessellatedSystem::new(g.clone(), vec![c(0.9, 0.0)], one.clone(), 1.0),
            Err(SystemError::NotNormalized { .. })
        ));
        // within tolerance: renormalized exactly
        let near = vec![c(1.0 + 4e-13, 0.0)];
        let s = TessellatedSystem::new(g, near, one, 1.0).unwrap();
        assert_eq!(s.a(0).re, 1.0);
    }
}
