use crate::graph::{separator_triples, SeparatorTriple, SiteGraph, VertexSet};
use crate::limits::{checked_product, MAX_JOINT_STATES};
use crate::verdict::{MarkovReport, TripleCmi};
use crate::{Error, Result};

/// Explicit joint distribution over discrete variables.
///
/// `probs` is indexed by the mixed-radix assignment with variable 0 the
/// most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct JointTable {
    dims: Vec<usize>,
    probs: Vec<f64>,
}

/// Tolerance on `sum(p) == 1` when a table is supplied directly.
pub const NORMALIZATION_TOL: f64 = 1e-12;

impl JointTable {
    pub fn new(dims: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        let states = state_count(&dims)?;
        if probs.len() != states {
            return Err(Error::validation(format!(
                "table over {dims:?} needs {states} entries, got {}",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| **p < 0.0 || !p.is_finite()) {
            return Err(Error::validation(format!("probability {p} is negative or non-finite")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::validation(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { dims, probs })
    }

    /// Normalizes non-negative weights; returns the table and the
    /// normalization constant.
    pub fn from_weights(dims: Vec<usize>, weights: Vec<f64>) -> Result<(Self, f64)> {
        let states = state_count(&dims)?;
        if weights.len() != states {
            return Err(Error::validation(format!(
                "table over {dims:?} needs {states} entries, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
            return Err(Error::validation("weights must be finite and non-negative"));
        }
        let z: f64 = weights.iter().sum();
        if z <= 0.0 || !z.is_finite() {
            return Err(Error::Numerical(format!("normalization constant {z} is not positive and finite")));
        }
        let probs = weights.into_iter().map(|w| w / z).collect();
        Ok((Self { dims, probs }, z))
    }

    pub fn uniform(dims: Vec<usize>) -> Result<Self> {
        let n = state_count(&dims)?;
        Ok(Self {
            dims,
            probs: vec![1.0 / n as f64; n],
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn variable_count(&self) -> usize {
        self.dims.len()
    }

    /// Probability of a full assignment.
    pub fn prob(&self, assignment: &[usize]) -> f64 {
        self.probs[index_of(&self.dims, assignment)]
    }

    /// Marginal over `subset`, indexed with the smallest variable most
    /// significant. The empty subset yields `[1.0]` (up to round-off).
    pub fn marginal(&self, subset: &VertexSet) -> Result<Vec<f64>> {
        if let Some(&v) = subset.iter().find(|&&v| v >= self.dims.len()) {
            return Err(Error::validation(format!("variable {v} out of range")));
        }
        let kept: Vec<usize> = subset.iter().copied().collect();
        let size: usize = kept.iter().map(|&v| self.dims[v]).product();
        let mut out = vec![0.0; size];
        let mut digits = vec![0usize; self.dims.len()];
        for &p in &self.probs {
            let mut idx = 0;
            for &v in &kept {
                idx = idx * self.dims[v] + digits[v];
            }
            out[idx] += p;
            increment(&mut digits, &self.dims);
        }
        Ok(out)
    }

    /// Per-variable marginals.
    pub fn vertex_marginals(&self) -> Vec<Vec<f64>> {
        (0..self.dims.len())
            .map(|v| self.marginal(&VertexSet::from([v])).expect("in range"))
            .collect()
    }
}

pub(crate) fn state_count(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::validation("variable arities must be non-empty and positive"));
    }
    checked_product(dims, MAX_JOINT_STATES, "joint table states")
}

pub(crate) fn index_of(dims: &[usize], assignment: &[usize]) -> usize {
    assignment.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Advances a mixed-radix counter, least significant digit last.
pub(crate) fn increment(digits: &mut [usize], dims: &[usize]) {
    for k in (0..digits.len()).rev() {
        digits[k] += 1;
        if digits[k] < dims[k] {
            return;
        }
        digits[k] = 0;
    }
}

/// `-sum q ln q` over the marginal of `subset`, in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &JointTable, subset: &VertexSet) -> Result<f64> {
    if subset.is_empty() {
        return Ok(0.0);
    }
    Ok(entropy_of(&p.marginal(subset)?))
}

pub(crate) fn entropy_of(q: &[f64]) -> f64 {
    let h: f64 = q.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum();
    h.max(0.0)
}

/// `I(A:C|B) = H(A,B) + H(C,B) - H(A,B,C) - H(B)` in nats.
pub fn classical_cmi(p: &JointTable, t: &SeparatorTriple) -> Result<f64> {
    t.check_partition(p.variable_count())?;
    let ab: VertexSet = t.a.union(&t.b).copied().collect();
    let cb: VertexSet = t.c.union(&t.b).copied().collect();
    let abc: VertexSet = (0..p.variable_count()).collect();
    Ok(shannon_entropy(p, &ab)? + shannon_entropy(p, &cb)? - shannon_entropy(p, &abc)? - shannon_entropy(p, &t.b)?)
}

/// Evaluates `I(A : rest | n(A))` on every separator triple with
/// `|A| <= max_a`; Markov iff every value is at most `tol`.
pub fn is_markov_network(g: &SiteGraph, p: &JointTable, max_a: usize, tol: f64) -> Result<MarkovReport> {
    if g.local_dims() != p.dims() {
        return Err(Error::validation(format!(
            "graph arities {:?} do not match table arities {:?}",
            g.local_dims(),
            p.dims()
        )));
    }
    let triples = separator_triples(g, max_a)
        .into_iter()
        .map(|triple| Ok(TripleCmi { cmi: classical_cmi(p, &triple)?, triple }))
        .collect::<Result<Vec<_>>>()?;
    Ok(MarkovReport::from_values(triples, tol))
}
