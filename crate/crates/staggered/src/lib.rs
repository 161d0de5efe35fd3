//! Staggered quantum walks on 2-tessellable graphs.
//!
//! The crate builds the evolution operator of a staggered walk from a
//! tessellation cover, decides quantum detailed balance, and constructs a
//! complete eigenbasis from the structure of the underlying bipartite
//! multigraph, cross-checked against a dense eigensolver.

pub mod balance;
pub mod cli;
pub mod error;
pub mod io;
pub mod lattice;
pub mod multigraph;
pub mod operators;
pub mod oracle;
pub mod random;
pub mod spectral;
pub mod tessellation;
pub mod util;

/// Numerical tolerances used across the crate.
pub mod tol {
    /// Construction identities (unitarity, involutions, intertwining).
    pub const CONSTRUCTION: f64 = 1e-12;
    /// Identities derived through a few dense products.
    pub const DERIVED: f64 = 1e-10;
    /// Relative tolerance for determinant comparisons.
    pub const DETERMINANT_REL: f64 = 1e-8;
    /// Reversibility decision on cycle balancing indices.
    pub const REVERSIBILITY: f64 = 1e-9;
    /// Eigenvector residuals `||U v - lambda v||`.
    pub const RESIDUAL: f64 = 1e-9;
    /// Rank decisions on Gram matrices and SVD cutoffs.
    pub const RANK: f64 = 1e-8;
    /// Eigenvalue clustering on the unit circle.
    pub const CLUSTER: f64 = 1e-8;
    /// Below this a balancing index counts as degenerate.
    pub const DEGENERATE_BALANCE: f64 = 1e-10;
    /// Defect magnitudes in this band get a borderline warning.
    pub const BORDERLINE_LOW: f64 = 1e-9;
    pub const BORDERLINE_HIGH: f64 = 1e-6;
}
