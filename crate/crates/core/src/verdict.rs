//! Markov-network verdicts shared by the classical and quantum checks.

use serde::Serialize;

use crate::graph::SeparatorTriple;

/// Default threshold below which a conditional mutual information counts as
/// zero.
pub const DEFAULT_CMI_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleCmi {
    pub triple: SeparatorTriple,
    /// `I(A:C|B)` in nats.
    pub cmi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarkovReport {
    pub is_markov: bool,
    pub tol: f64,
    pub max_cmi: f64,
    pub triples: Vec<TripleCmi>,
}

impl MarkovReport {
    pub(crate) fn from_values(triples: Vec<TripleCmi>, tol: f64) -> Self {
        let max_cmi = triples.iter().map(|t| t.cmi).fold(0.0, f64::max);
        Self {
            is_markov: triples.iter().all(|t| t.cmi <= tol),
            tol,
            max_cmi,
            triples,
        }
    }

    /// The entry for a given triple, if it was checked.
    pub fn find(&self, triple: &SeparatorTriple) -> Option<&TripleCmi> {
        self.triples.iter().find(|t| &t.triple == triple)
    }
}
