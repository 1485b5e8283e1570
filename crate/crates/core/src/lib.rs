//! Classical and quantum Markov networks on small graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`tensor`]: dense complex matrices, Kronecker products, a Jacobi
//!   Hermitian eigensolver, spectral matrix functions and partial traces.
//! - [`graph`]: site graphs, neighbourhoods, maximal cliques and separator
//!   triples `(A, n(A), rest)`.
//! - [`classical`]: explicit joint probability tables, Shannon entropy,
//!   conditional mutual information, clique factorizations, transfer-matrix
//!   partition functions and sum-product belief propagation.
//! - [`quantum`]: Pauli-string Hamiltonians, Gibbs states, von Neumann
//!   entropy, quantum conditional mutual information and commutation audits.
//! - [`sweep`] and [`plot`]: inverse-temperature sweeps of the conditional
//!   mutual information, CSV output and SVG line plots.
//!
//! Entropies are in nats throughout. Site `0` is the most significant
//! Kronecker factor / mixed-radix digit everywhere.

pub mod classical;
pub mod error;
pub mod graph;
pub mod limits;
pub mod plot;
pub mod quantum;
pub mod sweep;
pub mod tensor;
pub mod verdict;

pub use error::{Error, Result};
pub use graph::{SeparatorTriple, SiteGraph, VertexSet};
pub use tensor::{ComplexMatrix, HermitianEigen};
pub use verdict::{MarkovReport, TripleCmi};
