//! Seeded random multigraphs and walk systems for testing.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::multigraph::BipartiteMultigraph;
use crate::tessellation::TessellatedSystem;

type C64 = Complex64;

/// Deterministic generator for a test seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected bipartite multigraph with `m` left vertices, `n` right
/// vertices, and `nu >= m + n - 1` edges. The first `m + n - 1` edges form
/// a random spanning tree; the rest are uniform chords (parallel edges
/// allowed).
pub fn random_multigraph(r: &mut ChaCha8Rng, m: usize, n: usize, nu: usize) -> BipartiteMultigraph {
    assert!(m >= 1 && n >= 1 && nu >= m + n - 1);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(nu);
    // grow a spanning tree by attaching each fresh vertex to a random
    // already-placed vertex of the opposite side
    let mut left_in = 1usize;
    let mut right_in = 0usize;
    let mut pending: Vec<bool> = Vec::new(); // true = attach a left vertex next
    pending.extend(std::iter::repeat(true).take(m - 1));
    pending.extend(std::iter::repeat(false).take(n));
    // shuffle attachment order, but a left vertex can only attach once a
    // right vertex exists and vice versa; the first attachment must be right
    for i in (1..pending.len()).rev() {
        let j = r.random_range(0..=i);
        pending.swap(i, j);
    }
    if let Some(pos) = pending.iter().position(|&is_left| !is_left) {
        pending.remove(pos);
        pending.insert(0, false);
    }
    for is_left in pending {
        if is_left {
            let right = r.random_range(0..right_in);
            edges.push((left_in, right));
            left_in += 1;
        } else {
            let left = r.random_range(0..left_in);
            edges.push((left, right_in));
            right_in += 1;
        }
    }
    for _ in edges.len()..nu {
        edges.push((r.random_range(0..m), r.random_range(0..n)));
    }
    BipartiteMultigraph::build(m, n, edges).expect("constructed connected")
}

/// Random left/right split with `m, n >= 1` and `m + n <= nu + 1`.
pub fn random_graph_sized(r: &mut ChaCha8Rng, max_nu: usize) -> BipartiteMultigraph {
    let nu = r.random_range(3..=max_nu.max(3));
    let total = r.random_range(2..=nu.min(nu + 1).max(2));
    let m = r.random_range(1..total.max(2));
    let n = total - m;
    let (m, n) = if n == 0 { (m - 1, 1) } else { (m, n) };
    random_multigraph(r, m.max(1), n.max(1), nu)
}

/// Random system: uniformly random phases and mildly varied magnitudes,
/// renormalized per polygon. With generic phases the system is
/// nonreversible whenever the graph has a cycle.
pub fn random_system(r: &mut ChaCha8Rng, g: BipartiteMultigraph, theta: f64) -> TessellatedSystem {
    let nu = g.edges().len();
    let amp = |r: &mut ChaCha8Rng| {
        let mag = r.random_range(0.3..1.0);
        let phase = r.random_range(0.0..std::f64::consts::TAU);
        C64::from_polar(mag, phase)
    };
    let mut a: Vec<C64> = (0..nu).map(|_| amp(r)).collect();
    let mut b: Vec<C64> = (0..nu).map(|_| amp(r)).collect();
    // normalize each polygon's amplitude vector
    let mut left_norm = vec![0.0f64; g.left_count()];
    let mut right_norm = vec![0.0f64; g.right_count()];
    for e in 0..nu {
        left_norm[g.edges()[e].0] += a[e].norm_sqr();
        right_norm[g.edges()[e].1] += b[e].norm_sqr();
    }
    for e in 0..nu {
        a[e] /= left_norm[g.edges()[e].0].sqrt();
        b[e] /= right_norm[g.edges()[e].1].sqrt();
    }
    TessellatedSystem::new(g, a, b, theta).expect("normalized amplitudes")
}
