//! Quantum Markov networks: local Pauli Hamiltonians, Gibbs states,
//! von Neumann entropy and conditional mutual information.
//!
//! Pauli operators are the bare matrices with eigenvalues +-1. Gibbs states
//! use `rho = exp(-beta H) / Z`.

mod hamiltonian;
mod markov;
mod state;

pub use hamiltonian::{
    build_hamiltonian, embed, embed_on, five_spin_preset, LocalHamiltonian, Pauli, PauliTerm, TermGroup,
};
pub use markov::{
    commutation_audit, factorization_gap, is_quantum_markov_network, CommutationReport, CommutatorNorm,
    FactorizationGap, DEFAULT_COMMUTE_TOL,
};
pub use state::{
    gibbs_state, quantum_cmi, subsystem_entropy, von_neumann_entropy, DensityMatrix, GibbsState, DENSITY_TOL,
    EIGENVALUE_CLAMP,
};
