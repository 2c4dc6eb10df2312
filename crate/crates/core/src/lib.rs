//! Exact computation and verification toolkit for hypergraph chromatic
//! polynomials.
//!
//! * [`hypergraph`]: the data model, connectivity and JSON I/O
//! * [`chromatic`]: chromatic polynomials and their alternative forms
//! * [`matroid`]: the hypergraphic matroid, partition connectivity and the
//!   maximal bad partition
//! * [`penrose`]: the `|a_1| <= N(H)` inequality, spanning-tree sums and the
//!   bounded-exponential-type bound
//! * [`roots`]: numerical chromatic roots and the root-radius bounds
//! * [`campaign`]: verification sweeps and their reports

pub mod bounds;
pub mod campaign;
pub mod chromatic;
pub mod error;
pub mod generate;
pub mod hypergraph;
pub mod matroid;
pub mod partition;
pub mod penrose;
pub mod poly;
pub mod roots;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, VertexSet, EdgeSet};
pub use poly::IntPolynomial;

use serde::{Deserialize, Serialize};

/// Enumeration limits shared by every operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Maximum edge count for `2^|E|` edge-subset enumeration.
    pub edges: usize,
    /// Maximum vertex count for set-partition enumeration (`Bell(n)` work).
    pub partition: usize,
    /// Maximum `q^n` for brute-force coloring counts.
    pub colorings: u128,
    /// Maximum edge count for the equivalence-class and structure checks,
    /// which do per-subset partition work on top of `2^|E|`.
    pub structure_edges: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            edges: 24,
            partition: 12,
            colorings: 100_000_000,
            structure_edges: 12,
        }
    }
}
