//! Error types, one enum per subsystem.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MultigraphError {
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("edge {edge} has endpoint ({left},{right}) out of range")]
    IndexOutOfRange {
        edge: usize,
        left: usize,
        right: usize,
    },
    #[error("multigraph is disconnected")]
    DisconnectedGraph,
    #[error("no connecting path between the two cycles")]
    NoConnectingPath,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("tessellation {tessellation} is not a partition: vertex {vertex} appears {count} times")]
    NotAPartition {
        tessellation: usize,
        vertex: usize,
        count: usize,
    },
    #[error("polygon {polygon} of tessellation {tessellation} is not a clique: {u} and {v} are not adjacent")]
    PolygonNotClique {
        tessellation: usize,
        polygon: usize,
        u: usize,
        v: usize,
    },
    #[error("edge ({u},{v}) is covered by neither tessellation")]
    EdgeUncovered { u: usize, v: usize },
    #[error("polygon {polygon} of tessellation {tessellation} has {amps} amplitudes for {size} vertices")]
    AmplitudeLengthMismatch {
        tessellation: usize,
        polygon: usize,
        amps: usize,
        size: usize,
    },
}

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("theta must lie strictly inside (0, pi), got {0}")]
    InvalidTheta(f64),
    #[error("amplitude {which}({edge}) is zero; every edge needs nonzero amplitudes")]
    ZeroAmplitude { which: char, edge: usize },
    #[error("polygon {polygon} amplitude vector has squared norm {norm_sq} outside the renormalization tolerance")]
    NotNormalized { polygon: usize, norm_sq: f64 },
    #[error("amplitude map has {got} entries but the graph has {expected} edges")]
    AmplitudeCountMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Graph(#[from] MultigraphError),
}

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("lifted eigenvector has norm {norm}; the T-eigenvector lies in ker(L)")]
    DegenerateLift { norm: f64 },
    #[error("system is not reversible; the single-cycle construction does not apply")]
    NotReversible,
    #[error("system is reversible; the cycle-path construction does not apply")]
    NotNonreversible,
    #[error("cycle closure inconsistent: |defect| = {defect} (balancing index is nonzero)")]
    ClosureInconsistent { defect: f64 },
    #[error("cycle with chord {chord} is balanced (|Delta| = {delta}) in a nonreversible system")]
    DegenerateBalance { chord: usize, delta: f64 },
    #[error("assembled {got} eigenpairs for dimension {expected}")]
    BasisIncomplete { got: usize, expected: usize },
    #[error("constructed vector fails verification: {what} = {value}")]
    VerificationFailed { what: &'static str, value: f64 },
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("matrix is not unitary: max deviation {0}")]
    NotUnitary(f64),
}

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("dispersion formula out of range: |cos eta| = {0}")]
    FormulaOutOfRange(f64),
    #[error("momentum eigenvector is singular at k = {k}, l = {l}")]
    SingularMomentum { k: f64, l: f64 },
    #[error("patch {x}x{y} is too small; need at least 4x4 cells")]
    PatchTooSmall { x: usize, y: usize },
    #[error(transparent)]
    System(#[from] SystemError),
}
