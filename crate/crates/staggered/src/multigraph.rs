//! Bipartite multigraphs with stable edge identities.
//!
//! The underlying multigraph `G_un` of a 2-tessellable walk graph `G` is
//! bipartite: its left vertices are the polygons of the first tessellation,
//! its right vertices the polygons of the second, and its edges correspond
//! one-to-one with the vertices of `G` (so `G = L(G_un)`). Parallel edges
//! are allowed and edge ids are dense array positions.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::MultigraphError;

/// Connected bipartite multigraph with dense edge ids.
///
/// Vertices of the combined vertex set are numbered `0..m` for the left
/// class and `m..m+n` for the right class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<(usize, usize)>,
    /// Incident edge ids per combined vertex, ascending.
    incidence: Vec<Vec<usize>>,
}

impl BipartiteMultigraph {
    /// Builds a connected bipartite multigraph from `(left, right)` index
    /// pairs. The edge id of a pair is its position in `edge_list`.
    pub fn build(
        left_count: usize,
        right_count: usize,
        edge_list: Vec<(usize, usize)>,
    ) -> Result<Self, MultigraphError> {
        if edge_list.is_empty() {
            return Err(MultigraphError::EmptyEdgeList);
        }
        for (id, &(l, r)) in edge_list.iter().enumerate() {
            if l >= left_count || r >= right_count {
                return Err(MultigraphError::IndexOutOfRange {
                    edge: id,
                    left: l,
                    right: r,
                });
            }
        }
        let mut incidence = vec![Vec::new(); left_count + right_count];
        for (id, &(l, r)) in edge_list.iter().enumerate() {
            incidence[l].push(id);
            incidence[left_count + r].push(id);
        }
        let g = BipartiteMultigraph {
            left_count,
            right_count,
            edges: edge_list,
            incidence,
        };
        if !g.is_connected() {
            return Err(MultigraphError::DisconnectedGraph);
        }
        Ok(g)
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    /// Number of edges, equal to the number of vertices of the walk graph.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.left_count + self.right_count
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn betti_number(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Combined vertex id of the left endpoint of edge `e`.
    pub fn left_end(&self, e: usize) -> usize {
        self.edges[e].0
    }

    /// Combined vertex id of the right endpoint of edge `e`.
    pub fn right_end(&self, e: usize) -> usize {
        self.left_count + self.edges[e].1
    }

    pub fn is_left(&self, v: usize) -> bool {
        v < self.left_count
    }

    /// The endpoint of edge `e` other than `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (l, r) = (self.left_end(e), self.right_end(e));
        if v == l {
            r
        } else {
            debug_assert_eq!(v, r);
            l
        }
    }

    /// Incident edge ids of combined vertex `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    fn is_connected(&self) -> bool {
        let total = self.vertex_count();
        let mut seen = vec![false; total];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == total
    }
}

/// Breadth-first spanning tree rooted at left vertex 0.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    root: usize,
    /// `parent[v] = (parent vertex, connecting edge id)`, `None` at the root.
    parent: Vec<Option<(usize, usize)>>,
    tree_edges: Vec<bool>,
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.tree_edges[e]
    }

    pub fn tree_edge_ids(&self) -> Vec<usize> {
        (0..self.tree_edges.len())
            .filter(|&e| self.tree_edges[e])
            .collect()
    }

    pub fn chord_ids(&self) -> Vec<usize> {
        (0..self.tree_edges.len())
            .filter(|&e| !self.tree_edges[e])
            .collect()
    }

    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v]
    }

    /// Tree path from `from` to `to` as `(edge ids, interior+end vertices)`.
    /// The vertex list starts with `from` and ends with `to`.
    pub fn path(&self, from: usize, to: usize) -> (Vec<usize>, Vec<usize>) {
        // ancestor chains up to the root, then splice at the lowest common
        // ancestor
        let chain = |mut v: usize| {
            let mut vs = vec![v];
            while let Some((p, _)) = self.parent[v] {
                vs.push(p);
                v = p;
            }
            vs
        };
        let a = chain(from);
        let b = chain(to);
        let mut ai = a.len();
        let mut bi = b.len();
        while ai > 0 && bi > 0 && a[ai - 1] == b[bi - 1] {
            ai -= 1;
            bi -= 1;
        }
        // vertices: from ... lca ... to; both chains end at the root, so
        // after stripping the common suffix a[ai] is the lowest common
        // ancestor
        let mut vertices: Vec<usize> = a[..=ai].to_vec();
        for j in (0..bi).rev() {
            vertices.push(b[j]);
        }
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            // one of the two is the parent of the other
            let e = match self.parent[w[0]] {
                Some((p, e)) if p == w[1] => e,
                _ => self.parent[w[1]].expect("tree path step").1,
            };
            edges.push(e);
        }
        (edges, vertices)
    }
}

/// BFS spanning tree from left vertex 0, neighbors explored in ascending
/// edge id. Deterministic given the edge order.
pub fn spanning_tree(g: &BipartiteMultigraph) -> SpanningTree {
    let total = g.vertex_count();
    let mut parent = vec![None; total];
    let mut seen = vec![false; total];
    let mut tree_edges = vec![false; g.edge_count()];
    let root = 0usize;
    seen[root] = true;
    let mut queue = VecDeque::new();
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident_edges(v) {
            let w = g.other_end(e, v);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e));
                tree_edges[e] = true;
                queue.push_back(w);
            }
        }
    }
    SpanningTree {
        root,
        parent,
        tree_edges,
    }
}

/// One fundamental cycle per chord of a spanning tree.
///
/// The edge sequence starts at the chord (`e_1`) and the vertex sequence
/// follows the paper's parity convention: `vertices[j]` is the common
/// vertex of `edges[j]` and `edges[j+1]` (cyclically), with odd-position
/// vertices (`u_1, u_3, ...`) in the right class and even-position
/// vertices (`u_2, ..., u_{2k}`) in the left class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub chord: usize,
    /// `e_1, ..., e_{2k}`; `edges[0]` is the chord.
    pub edges: Vec<usize>,
    /// `u_1, ..., u_{2k}`; `vertices[2k-1]` is the start vertex `u_{2k}`.
    pub vertices: Vec<usize>,
}

impl FundamentalCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Start vertex `u_{2k}` (left class), shared by the last edge and the
    /// chord.
    pub fn start_vertex(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Rotates the cyclic edge/vertex sequence so that `v` becomes the
    /// start vertex, preserving the traversal direction.
    ///
    /// After the rotation, `edges[0]` is the edge leaving `v` and the last
    /// vertex equals `v`; the class alternation is preserved, so the labels
    /// are canonical when `v` is a left vertex and swapped otherwise.
    pub fn rotated_to_start(&self, v: usize) -> FundamentalCycle {
        let pos = self
            .vertices
            .iter()
            .position(|&u| u == v)
            .expect("vertex on cycle");
        let n = self.edges.len();
        // vertices[pos] is shared by edges[pos] and edges[pos+1]; making it
        // the start vertex means the sequence begins at edges[pos+1]
        let shift = (pos + 1) % n;
        let edges = (0..n).map(|j| self.edges[(shift + j) % n]).collect();
        let vertices = (0..n).map(|j| self.vertices[(shift + j) % n]).collect();
        FundamentalCycle {
            chord: self.chord,
            edges,
            vertices,
        }
    }
}

/// One cycle per chord, ordered by ascending chord id; the count equals the
/// first Betti number.
pub fn fundamental_cycles(g: &BipartiteMultigraph, t: &SpanningTree) -> Vec<FundamentalCycle> {
    t.chord_ids()
        .into_iter()
        .map(|chord| {
            let alpha = g.left_end(chord);
            let beta = g.right_end(chord);
            // chord first, then the tree path from the right endpoint back
            // to the left endpoint; this puts u_1 in the right class
            let (path_edges, path_vertices) = t.path(beta, alpha);
            let mut edges = vec![chord];
            edges.extend(path_edges);
            let vertices = path_vertices;
            debug_assert_eq!(edges.len() % 2, 0);
            debug_assert_eq!(vertices.len(), edges.len());
            debug_assert!(g.is_left(*vertices.last().unwrap()));
            FundamentalCycle {
                chord,
                edges,
                vertices,
            }
        })
        .collect()
}

/// How two fundamental cycles meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverlapKind {
    DisjointWithPath,
    SharedVertex,
    SharedPath,
}

/// Two fundamental cycles together with a connector path (when they are
/// vertex-disjoint) or their classified overlap.
#[derive(Debug, Clone)]
pub struct CyclePathSubgraph {
    pub c0: FundamentalCycle,
    pub c: FundamentalCycle,
    /// Connector edge ids `g_1..g_l`; empty unless disjoint.
    pub connector: Vec<usize>,
    /// Connector vertices `z_1..z_{l+1}` with `z_1` on `c0` and the last
    /// vertex on `c`; empty unless disjoint.
    pub connector_vertices: Vec<usize>,
    /// Shared vertices (ascending) for the overlap cases.
    pub shared_vertices: Vec<usize>,
    pub overlap_kind: OverlapKind,
}

/// Builds the cycle-path subgraph of two distinct fundamental cycles.
///
/// Vertex-disjoint cycles are joined by the shortest path (BFS, ties by
/// ascending edge id) avoiding the edges of both cycles; overlapping cycles
/// get their intersection classified instead.
pub fn cycle_path(
    g: &BipartiteMultigraph,
    c0: &FundamentalCycle,
    c: &FundamentalCycle,
) -> Result<CyclePathSubgraph, MultigraphError> {
    let mut shared: Vec<usize> = c0
        .vertices
        .iter()
        .filter(|v| c.vertices.contains(v))
        .copied()
        .collect();
    shared.sort_unstable();
    shared.dedup();
    if !shared.is_empty() {
        let shares_edge = c0.edges.iter().any(|e| c.edges.contains(e));
        let kind = if shares_edge {
            OverlapKind::SharedPath
        } else {
            debug_assert_eq!(shared.len(), 1);
            OverlapKind::SharedVertex
        };
        return Ok(CyclePathSubgraph {
            c0: c0.clone(),
            c: c.clone(),
            connector: Vec::new(),
            connector_vertices: Vec::new(),
            shared_vertices: shared,
            overlap_kind: kind,
        });
    }

    // multi-source BFS from V(c0) toward V(c), skipping cycle edges
    let forbidden: Vec<bool> = {
        let mut f = vec![false; g.edge_count()];
        for &e in c0.edges.iter().chain(c.edges.iter()) {
            f[e] = true;
        }
        f
    };
    let total = g.vertex_count();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; total];
    let mut seen = vec![false; total];
    let mut queue = VecDeque::new();
    let mut sources = c0.vertices.clone();
    sources.sort_unstable();
    for &v in &sources {
        if !seen[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    let mut hit = None;
    'bfs: while let Some(v) = queue.pop_front() {
        for &e in g.incident_edges(v) {
            if forbidden[e] {
                continue;
            }
            let w = g.other_end(e, v);
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e));
                if c.vertices.contains(&w) {
                    hit = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
    }
    let end = hit.ok_or(MultigraphError::NoConnectingPath)?;
    let mut connector = Vec::new();
    let mut vertices = vec![end];
    let mut v = end;
    while let Some((p, e)) = prev[v] {
        connector.push(e);
        vertices.push(p);
        v = p;
    }
    connector.reverse();
    vertices.reverse();
    Ok(CyclePathSubgraph {
        c0: c0.clone(),
        c: c.clone(),
        connector,
        connector_vertices: vertices,
        shared_vertices: Vec::new(),
        overlap_kind: OverlapKind::DisjointWithPath,
    })
}

/// Adjacency structure of the line graph `L(g)` over edge ids.
///
/// Vertex `i` of the line graph is edge `i` of `g`; two vertices are
/// adjacent iff the edges share an endpoint, so parallel edges become
/// adjacent vertices. The root-graph bijection is the identity on ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl LineGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }
}

pub fn line_graph(g: &BipartiteMultigraph) -> LineGraph {
    let nu = g.edge_count();
    let mut adjacency = vec![Vec::new(); nu];
    for v in 0..g.vertex_count() {
        let inc = g.incident_edges(v);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                if !adjacency[e].contains(&f) {
                    adjacency[e].push(f);
                    adjacency[f].push(e);
                }
            }
        }
    }
    for n in &mut adjacency {
        n.sort_unstable();
    }
    LineGraph { adjacency }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path of 4 vertices: m=2, n=2, three edges, a tree.
    pub(crate) fn p4_path() -> BipartiteMultigraph {
        BipartiteMultigraph::build(2, 2, vec![(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    /// Two vertices joined by three parallel edges (kagome quotient root).
    pub(crate) fn triple_edge() -> BipartiteMultigraph {
        BipartiteMultigraph::build(1, 1, vec![(0, 0), (0, 0), (0, 0)]).unwrap()
    }

    /// 4-cycle.
    pub(crate) fn c4() -> BipartiteMultigraph {
        BipartiteMultigraph::build(2, 2, vec![(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            BipartiteMultigraph::build(1, 1, vec![]),
            Err(MultigraphError::EmptyEdgeList)
        ));
        assert!(matches!(
            BipartiteMultigraph::build(1, 1, vec![(0, 1)]),
            Err(MultigraphError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            BipartiteMultigraph::build(2, 2, vec![(0, 0), (1, 1)]),
            Err(MultigraphError::DisconnectedGraph)
        ));
    }

    #[test]
    fn build_examples() {
        assert_eq!(p4_path().edge_count(), 3);
        let t = triple_edge();
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(c4().betti_number(), 1);
    }

    #[test]
    fn spanning_tree_examples() {
        let g = p4_path();
        let t = spanning_tree(&g);
        assert_eq!(t.tree_edge_ids(), vec![0, 1, 2]);
        assert!(t.chord_ids().is_empty());

        let g = triple_edge();
        let t = spanning_tree(&g);
        assert_eq!(t.tree_edge_ids(), vec![0]);
        assert_eq!(t.chord_ids(), vec![1, 2]);

        let g = c4();
        let t = spanning_tree(&g);
        assert_eq!(t.tree_edge_ids().len(), 3);
        assert_eq!(t.chord_ids().len(), 1);
    }

    #[test]
    fn fundamental_cycle_examples() {
        let g = triple_edge();
        let t = spanning_tree(&g);
        let cycles = fundamental_cycles(&g, &t);
        assert_eq!(cycles.len(), 2);
        for c in &cycles {
            assert_eq!(c.len(), 2);
            assert_eq!(c.edges[1], 0); // tree edge closes each 2-cycle
        }
        assert_eq!(cycles[0].edges, vec![1, 0]);
        assert_eq!(cycles[1].edges, vec![2, 0]);

        let g = c4();
        let t = spanning_tree(&g);
        let cycles = fundamental_cycles(&g, &t);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);

        let g = p4_path();
        let t = spanning_tree(&g);
        assert!(fundamental_cycles(&g, &t).is_empty());
    }

    #[test]
    fn cycle_parity_convention() {
        for g in [triple_edge(), c4()] {
            let t = spanning_tree(&g);
            for c in fundamental_cycles(&g, &t) {
                for (j, &v) in c.vertices.iter().enumerate() {
                    // paper index j+1: odd -> right class, even -> left class
                    if (j + 1) % 2 == 1 {
                        assert!(!g.is_left(v));
                    } else {
                        assert!(g.is_left(v));
                    }
                }
                // consecutive edges share the listed vertex
                let n = c.len();
                for j in 0..n {
                    let e = c.edges[j];
                    let f = c.edges[(j + 1) % n];
                    let v = c.vertices[j];
                    assert!(g.left_end(e) == v || g.right_end(e) == v);
                    assert!(g.left_end(f) == v || g.right_end(f) == v);
                }
            }
        }
    }

    #[test]
    fn rotation_preserves_cycle() {
        let g = c4();
        let t = spanning_tree(&g);
        let c = &fundamental_cycles(&g, &t)[0];
        let v = c.vertices[1]; // a left vertex that is not the start
        let r = c.rotated_to_start(v);
        assert_eq!(r.start_vertex(), v);
        let mut a = c.edges.clone();
        let mut b = r.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn cycle_path_shared_path_on_quotient() {
        let g = triple_edge();
        let t = spanning_tree(&g);
        let cycles = fundamental_cycles(&g, &t);
        let sub = cycle_path(&g, &cycles[0], &cycles[1]).unwrap();
        assert_eq!(sub.overlap_kind, OverlapKind::SharedPath);
        assert!(sub.connector.is_empty());
        assert_eq!(sub.shared_vertices, vec![0, 1]);
    }

    #[test]
    fn cycle_path_shared_vertex() {
        // two 2-cycles of parallel edges hanging off a common left vertex
        let g = BipartiteMultigraph::build(1, 2, vec![(0, 0), (0, 0), (0, 1), (0, 1)]).unwrap();
        let t = spanning_tree(&g);
        let cycles = fundamental_cycles(&g, &t);
        assert_eq!(cycles.len(), 2);
        let sub = cycle_path(&g, &cycles[0], &cycles[1]).unwrap();
        assert_eq!(sub.overlap_kind, OverlapKind::SharedVertex);
        assert_eq!(sub.shared_vertices, vec![0]);
    }

    #[test]
    fn cycle_path_disjoint_bridge() {
        // two parallel-edge pairs joined by a path of two edges through a
        // middle left vertex: beta0 - alpha1 - beta1
        let g = BipartiteMultigraph::build(
            3,
            2,
            vec![(0, 0), (0, 0), (2, 1), (2, 1), (1, 0), (1, 1)],
        )
        .unwrap();
        let t = spanning_tree(&g);
        let cycles = fundamental_cycles(&g, &t);
        assert_eq!(cycles.len(), 2);
        let sub = cycle_path(&g, &cycles[0], &cycles[1]).unwrap();
        assert_eq!(sub.overlap_kind, OverlapKind::DisjointWithPath);
        assert_eq!(sub.connector, vec![4, 5]);
        // connector edges avoid both cycles and are internally simple
        for e in &sub.connector {
            assert!(!sub.c0.edges.contains(e));
            assert!(!sub.c.edges.contains(e));
        }
        assert_eq!(sub.connector_vertices.first(), Some(&3)); // beta0
        assert_eq!(sub.connector_vertices.last(), Some(&4)); // beta1
    }

    #[test]
    fn line_graph_examples() {
        let lg = line_graph(&triple_edge());
        assert_eq!(lg.vertex_count(), 3);
        assert_eq!(lg.edge_count(), 3); // K3
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            assert!(lg.has_edge(u, v));
        }

        let lg = line_graph(&p4_path());
        assert_eq!(lg.vertex_count(), 3);
        assert_eq!(lg.edge_count(), 2); // P3
        assert!(lg.has_edge(0, 1) && lg.has_edge(1, 2) && !lg.has_edge(0, 2));

        let lg = line_graph(&BipartiteMultigraph::build(1, 1, vec![(0, 0)]).unwrap());
        assert_eq!(lg.vertex_count(), 1);
        assert_eq!(lg.edge_count(), 0); // K1
    }

    #[test]
    fn line_graph_edge_count_matches_pair_count() {
        // distinct pairs of edges sharing at least one endpoint; parallel
        // edges share two but contribute a single line-graph edge
        for g in [p4_path(), triple_edge(), c4()] {
            let lg = line_graph(&g);
            let nu = g.edge_count();
            let mut expected = 0;
            for e in 0..nu {
                for f in e + 1..nu {
                    let (le, re) = (g.left_end(e), g.right_end(e));
                    if g.left_end(f) == le || g.right_end(f) == re {
                        expected += 1;
                    }
                }
            }
            assert_eq!(lg.edge_count(), expected);
        }
    }

    #[test]
    fn betti_matches_cycle_count() {
        for g in [p4_path(), triple_edge(), c4()] {
            let t = spanning_tree(&g);
            assert_eq!(fundamental_cycles(&g, &t).len(), g.betti_number());
        }
    }
}
