//! JSON schemas for graphs, systems, covers, reports, and eigenbases.
//!
//! Complex numbers are serialized as `[re, im]` arrays and matrices as
//! row-major arrays of such pairs, so fixtures stay readable from any
//! language. Serialization is deterministic: field order is fixed by the
//! struct definitions and floats use round-trip formatting.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::balance::ReversibilityReport;
use crate::error::SystemError;
use crate::multigraph::BipartiteMultigraph;
use crate::spectral::{EigenBasis, EigenPair, SubspaceTag};
use crate::tessellation::TessellatedSystem;

type C64 = Complex64;

/// `[re, im]` pair.
pub type ComplexJson = [f64; 2];

pub fn complex_to_json(z: C64) -> ComplexJson {
    [z.re, z.im]
}

pub fn complex_from_json(p: ComplexJson) -> C64 {
    C64::new(p[0], p[1])
}

pub fn vector_to_json(v: &Array1<C64>) -> Vec<ComplexJson> {
    v.iter().map(|&z| complex_to_json(z)).collect()
}

pub fn vector_from_json(v: &[ComplexJson]) -> Array1<C64> {
    Array1::from_iter(v.iter().map(|&p| complex_from_json(p)))
}

/// Row-major matrix dump.
pub fn matrix_to_json(m: &Array2<C64>) -> Vec<Vec<ComplexJson>> {
    m.rows()
        .into_iter()
        .map(|r| r.iter().map(|&z| complex_to_json(z)).collect())
        .collect()
}

/// Bipartite multigraph: `{"m": .., "n": .., "edges": [[l, r], ...]}` with
/// the edge id given by array position.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: usize,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphJson {
    pub fn from_graph(g: &BipartiteMultigraph) -> Self {
        GraphJson {
            m: g.left_count(),
            n: g.right_count(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn to_graph(&self) -> Result<BipartiteMultigraph, crate::error::MultigraphError> {
        BipartiteMultigraph::build(self.m, self.n, self.edges.clone())
    }
}

/// Full walk system: graph, per-edge amplitudes, and the coin angle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemJson {
    pub graph: GraphJson,
    pub a: Vec<ComplexJson>,
    pub b: Vec<ComplexJson>,
    pub theta: f64,
}

impl SystemJson {
    pub fn from_system(s: &TessellatedSystem) -> Self {
        SystemJson {
            graph: GraphJson::from_graph(s.graph()),
            a: s.a_all().iter().map(|&z| complex_to_json(z)).collect(),
            b: s.b_all().iter().map(|&z| complex_to_json(z)).collect(),
            theta: s.theta(),
        }
    }

    pub fn to_system(&self) -> Result<TessellatedSystem, SystemError> {
        let g = self.graph.to_graph()?;
        TessellatedSystem::new(
            g,
            self.a.iter().map(|&p| complex_from_json(p)).collect(),
            self.b.iter().map(|&p| complex_from_json(p)).collect(),
            self.theta,
        )
    }
}

/// Tessellation cover of a walk graph, given vertex-side.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub t1: Vec<Vec<usize>>,
    pub t2: Vec<Vec<usize>>,
    pub amps1: Vec<Vec<ComplexJson>>,
    pub amps2: Vec<Vec<ComplexJson>>,
}

impl CoverJson {
    pub fn to_cover_input(&self) -> crate::tessellation::CoverInput {
        crate::tessellation::CoverInput {
            vertices: self.vertices,
            edges: self.edges.clone(),
            t1: self.t1.clone(),
            t2: self.t2.clone(),
            amps1: self
                .amps1
                .iter()
                .map(|v| v.iter().map(|&p| complex_from_json(p)).collect())
                .collect(),
            amps2: self
                .amps2
                .iter()
                .map(|v| v.iter().map(|&p| complex_from_json(p)).collect())
                .collect(),
        }
    }
}

/// Reversibility verdict report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub reversible: bool,
    pub pi: Option<Vec<ComplexJson>>,
    pub max_cycle_defect: f64,
    pub tolerance_used: f64,
    pub borderline: bool,
}

impl ReportJson {
    pub fn from_report(r: &ReversibilityReport) -> Self {
        ReportJson {
            reversible: r.reversible,
            pi: r.pi.as_ref().map(vector_to_json),
            max_cycle_defect: r.max_cycle_defect,
            tolerance_used: r.tolerance_used,
            borderline: r.borderline,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenPairJson {
    pub lambda: ComplexJson,
    pub tag: SubspaceTag,
    pub vector: Vec<ComplexJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiplicityJson {
    pub lambda: ComplexJson,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenBasisJson {
    pub pairs: Vec<EigenPairJson>,
    pub multiplicities: Vec<MultiplicityJson>,
}

impl EigenBasisJson {
    pub fn from_basis(b: &EigenBasis) -> Self {
        EigenBasisJson {
            pairs: b
                .pairs
                .iter()
                .map(|p| EigenPairJson {
                    lambda: complex_to_json(p.lambda),
                    tag: p.tag,
                    vector: vector_to_json(&p.vector),
                })
                .collect(),
            multiplicities: b
                .multiplicities
                .iter()
                .map(|&(lam, count)| MultiplicityJson {
                    lambda: complex_to_json(lam),
                    count,
                })
                .collect(),
        }
    }

    pub fn to_basis(&self) -> EigenBasis {
        EigenBasis {
            pairs: self
                .pairs
                .iter()
                .map(|p| EigenPair {
                    lambda: complex_from_json(p.lambda),
                    tag: p.tag,
                    vector: vector_from_json(&p.vector),
                })
                .collect(),
            multiplicities: self
                .multiplicities
                .iter()
                .map(|m| (complex_from_json(m.lambda), m.count))
                .collect(),
        }
    }
}
