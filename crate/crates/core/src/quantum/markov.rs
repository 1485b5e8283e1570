use std::collections::BTreeSet;

use serde::Serialize;

use super::hamiltonian::{build_hamiltonian, sum_terms, LocalHamiltonian};
use super::state::{gibbs_state, quantum_cmi};
use crate::graph::separator_triples;
use crate::tensor::{eigvalsh, matrix_function, partial_trace, kron, ComplexMatrix};
use crate::verdict::{MarkovReport, TripleCmi};
use crate::{Error, Result};

/// Relative commutator tolerance: a pair commutes when
/// `||[A, B]||_F <= tol * ||A||_F * ||B||_F`.
pub const DEFAULT_COMMUTE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorNorm {
    pub first: String,
    pub second: String,
    /// `||[h_first, h_second]||_F` on the full space.
    pub norm: f64,
    /// `tol * ||h_first||_F * ||h_second||_F`.
    pub threshold: f64,
    pub commutes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutationReport {
    pub tol: f64,
    pub all_commute: bool,
    pub pairs: Vec<CommutatorNorm>,
}

impl CommutationReport {
    /// Names of the non-commuting pairs.
    pub fn offending_pairs(&self) -> Vec<(&str, &str)> {
        self.pairs
            .iter()
            .filter(|p| !p.commutes)
            .map(|p| (p.first.as_str(), p.second.as_str()))
            .collect()
    }
}

/// Frobenius norm of `[h_Q, h_Q']` for every unordered pair of groups.
pub fn commutation_audit(h: &LocalHamiltonian, tol: f64) -> Result<CommutationReport> {
    h.total_dim()?;
    let mats = (0..h.groups().len()).map(|k| h.group_matrix(k)).collect::<Result<Vec<_>>>()?;
    let norms: Vec<f64> = mats.iter().map(ComplexMatrix::frobenius_norm).collect();
    let mut pairs = Vec::new();
    for i in 0..mats.len() {
        for j in (i + 1)..mats.len() {
            let norm = mats[i].commutator(&mats[j]).frobenius_norm();
            let threshold = tol * norms[i] * norms[j];
            pairs.push(CommutatorNorm {
                first: h.groups()[i].name.clone(),
                second: h.groups()[j].name.clone(),
                norm,
                threshold,
                commutes: norm <= threshold,
            });
        }
    }
    Ok(CommutationReport {
        tol,
        all_commute: pairs.iter().all(|p| p.commutes),
        pairs,
    })
}

/// Builds the Gibbs state of `h` at `beta` and evaluates the quantum CMI on
/// every separator triple with `|A| <= max_a`.
pub fn is_quantum_markov_network(h: &LocalHamiltonian, beta: f64, max_a: usize, tol: f64) -> Result<MarkovReport> {
    let hm = build_hamiltonian(h)?;
    let gibbs = gibbs_state(&hm, beta, h.dims())?;
    let triples = separator_triples(h.graph(), max_a)
        .into_iter()
        .map(|triple| {
            Ok(TripleCmi {
                cmi: quantum_cmi(&gibbs.rho, &triple)?,
                triple,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MarkovReport::from_values(triples, tol))
}

/// Both sides of the chain factorization of the partition function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationGap {
    /// `Tr exp(-beta H)`.
    pub exact_z: f64,
    /// `Tr(exp(-beta h_1) exp(-beta h_2) ... )`, contracted site by site along
    /// the chain in the written order.
    pub sequential: f64,
    /// `|exact_z - sequential| / |exact_z|`.
    pub gap: f64,
    /// Same contraction with the product order reversed.
    pub sequential_reversed: f64,
    pub gap_reversed: f64,
}

/// Compares `Tr exp(-beta sum_k h_k)` with the nested local contraction
/// `Tr_{s_m}(... Tr_{s_1}(Tr_{s_0}(e^{-beta h_0}) e^{-beta h_1}) ...)`.
///
/// The groups must form a chain: group `k` is supported on `{s_k, s_{k+1}}`
/// for a sequence of distinct sites covering the graph. The two sides agree
/// when the groups commute.
pub fn factorization_gap(h: &LocalHamiltonian, beta: f64) -> Result<FactorizationGap> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::validation(format!("inverse temperature {beta} must be finite and non-negative")));
    }
    let order = chain_order(h)?;
    let dims = h.dims();

    let exact_z: f64 = eigvalsh(&build_hamiltonian(h)?)?
        .iter()
        .map(|&e| (-beta * e).exp())
        .sum();

    let factors = h
        .groups()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let local = sum_terms(&g.terms, &[order[k], order[k + 1]], dims)?;
            matrix_function(&local, |e| (-beta * e).exp())
        })
        .collect::<Result<Vec<_>>>()?;

    let sequential = contract_chain(&factors, &order, dims, false)?;
    let sequential_reversed = contract_chain(&factors, &order, dims, true)?;
    let rel = |v: f64| (exact_z - v).abs() / exact_z.abs();
    Ok(FactorizationGap {
        exact_z,
        sequential,
        gap: rel(sequential),
        sequential_reversed,
        gap_reversed: rel(sequential_reversed),
    })
}

/// Site sequence `s_0, ..., s_m` with group `k` on `{s_k, s_{k+1}}`.
fn chain_order(h: &LocalHamiltonian) -> Result<Vec<usize>> {
    let groups = h.groups();
    let not_chain = |why: String| Error::validation(format!("groups do not form a chain: {why}"));
    if groups.is_empty() {
        return Err(not_chain("no groups".into()));
    }
    if let Some(g) = groups.iter().find(|g| g.support.len() != 2) {
        return Err(not_chain(format!("group {:?} is not supported on two sites", g.name)));
    }
    let (a, b) = (groups[0].support[0], groups[0].support[1]);
    let mut order = match groups.get(1) {
        None => vec![a.min(b), a.max(b)],
        Some(next) if next.support.contains(&b) && !next.support.contains(&a) => vec![a, b],
        Some(next) if next.support.contains(&a) && !next.support.contains(&b) => vec![b, a],
        Some(next) => {
            return Err(not_chain(format!(
                "groups {:?} and {:?} do not share exactly one site",
                groups[0].name, next.name
            )))
        }
    };
    for g in &groups[1..] {
        let last = *order.last().expect("non-empty");
        let next = match (g.support[0], g.support[1]) {
            (x, y) if x == last => y,
            (x, y) if y == last => x,
            _ => return Err(not_chain(format!("group {:?} does not continue the chain at site {last}", g.name))),
        };
        order.push(next);
    }
    let distinct: BTreeSet<usize> = order.iter().copied().collect();
    if distinct.len() != order.len() {
        return Err(not_chain("a site is visited twice".into()));
    }
    if distinct.len() != h.graph().vertex_count() {
        return Err(not_chain("the chain does not cover every site".into()));
    }
    Ok(order)
}

/// Contracts `Tr(E_0 E_1 ... E_{m-1})` (or the reversed product) one site at
/// a time. `E_k` acts on `(order[k], order[k + 1])`, first site most
/// significant.
fn contract_chain(factors: &[ComplexMatrix], order: &[usize], dims: &[usize], reversed: bool) -> Result<f64> {
    // Operator on order[k] after tracing out order[..k].
    let mut carry = ComplexMatrix::identity(dims[order[0]]);
    for (k, e) in factors.iter().enumerate() {
        let lifted = kron(&carry, &ComplexMatrix::identity(dims[order[k + 1]]))?;
        let product = if reversed { e.matmul(&lifted) } else { lifted.matmul(e) };
        carry = partial_trace(&product, &[dims[order[k]], dims[order[k + 1]]], &[0])?;
    }
    let t = carry.trace();
    if t.im.abs() > 1e-9 * t.norm().max(1.0) {
        return Err(Error::Numerical(format!("sequential trace has imaginary part {}", t.im)));
    }
    Ok(t.re)
}
