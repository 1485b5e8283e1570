//! Classical Markov networks over explicit probability tables.

mod bp;
mod denoise;
mod factor;
mod table;
mod transfer;

pub use bp::{sum_product_bp, BpResult, BP_CONVERGENCE_TOL, DEFAULT_LOOPY_DAMPING};
pub use denoise::{denoise_demo, denoise_model, BinaryGrid, MAX_DENOISE_SIDE, MAX_EXACT_PIXELS};
pub use factor::{
    hc_factorize, pairwise_joint, pairwise_weights, CliquePotential, EdgePotentialEntry, Factorization,
    FactorizationFile, NodePotentialEntry, PairwiseModel, PairwiseModelFile,
};
pub use table::{classical_cmi, is_markov_network, shannon_entropy, JointTable, NORMALIZATION_TOL};
pub use transfer::transfer_matrix_z;

use serde::{Deserialize, Serialize};

/// JSON form of a chain for [`transfer_matrix_z`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub arities: Vec<usize>,
    /// `terms[i]` is `h(x_i, x_{i+1})` indexed `x_i * arities[i + 1] + x_{i+1}`.
    pub terms: Vec<Vec<f64>>,
}
