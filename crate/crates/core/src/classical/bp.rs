use std::collections::HashMap;

use super::factor::PairwiseModel;
use crate::{Error, Result};

/// Message change below which synchronous BP is considered converged.
pub const BP_CONVERGENCE_TOL: f64 = 1e-12;

/// Damping used for loopy graphs when the caller has no preference.
pub const DEFAULT_LOOPY_DAMPING: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct BpResult {
    /// Normalized belief per vertex.
    pub marginals: Vec<Vec<f64>>,
    pub converged: bool,
    pub iterations: usize,
    /// Largest message change in the final iteration.
    pub last_change: f64,
}

/// Synchronous (flooding) sum-product belief propagation.
///
/// Messages are normalized to sum to one and updated as
/// `m <- (1 - damping) * new + damping * old`. Exact on trees; on loopy
/// graphs the result is the reached fixed point and `converged` reports
/// whether the change fell below [`BP_CONVERGENCE_TOL`] within `max_iters`.
pub fn sum_product_bp(m: &PairwiseModel, max_iters: usize, damping: f64) -> Result<BpResult> {
    if !(0.0..1.0).contains(&damping) {
        return Err(Error::validation(format!("damping {damping} outside [0, 1)")));
    }
    let g = m.graph();
    let dims = g.local_dims();
    let n = g.vertex_count();

    // Directed edges; message k goes from `from` to `to`.
    let mut directed: Vec<(usize, usize)> = Vec::with_capacity(2 * g.edge_count());
    let mut psi: Vec<&[f64]> = Vec::with_capacity(2 * g.edge_count());
    for ((i, j), table) in m.edge_potentials() {
        directed.push((i, j));
        psi.push(table);
        directed.push((j, i));
        psi.push(table);
    }
    let index: HashMap<(usize, usize), usize> = directed.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let incoming: Vec<Vec<usize>> = (0..n)
        .map(|v| g.adjacent(v).iter().map(|&u| index[&(u, v)]).collect())
        .collect();

    let mut messages: Vec<Vec<f64>> = directed
        .iter()
        .map(|&(_, to)| vec![1.0 / dims[to] as f64; dims[to]])
        .collect();

    let mut converged = false;
    let mut iterations = 0;
    let mut last_change = f64::INFINITY;
    while iterations < max_iters {
        iterations += 1;
        let mut change = 0.0f64;
        let mut updated = Vec::with_capacity(messages.len());
        for (k, &(from, to)) in directed.iter().enumerate() {
            let (df, dt) = (dims[from], dims[to]);
            // Product of node potential and all incoming messages except the
            // one coming back from `to`.
            let mut local: Vec<f64> = m.node_potential(from).to_vec();
            for &q in &incoming[from] {
                if directed[q].0 != to {
                    for (l, &mq) in local.iter_mut().zip(&messages[q]) {
                        *l *= mq;
                    }
                }
            }
            let mut out = vec![0.0; dt];
            for (xf, &lf) in local.iter().enumerate() {
                for (xt, o) in out.iter_mut().enumerate() {
                    let w = if from < to { psi[k][xf * dt + xt] } else { psi[k][xt * df + xf] };
                    *o += lf * w;
                }
            }
            normalize(&mut out)?;
            for (o, &old) in out.iter_mut().zip(&messages[k]) {
                *o = (1.0 - damping) * *o + damping * old;
                change = change.max((*o - old).abs());
            }
            updated.push(out);
        }
        messages = updated;
        last_change = change;
        if change < BP_CONVERGENCE_TOL {
            converged = true;
            break;
        }
    }

    let marginals = (0..n)
        .map(|v| {
            let mut b = m.node_potential(v).to_vec();
            for &q in &incoming[v] {
                for (x, &mq) in b.iter_mut().zip(&messages[q]) {
                    *x *= mq;
                }
            }
            normalize(&mut b)?;
            Ok(b)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BpResult {
        marginals,
        converged,
        iterations,
        last_change,
    })
}

fn normalize(v: &mut [f64]) -> Result<()> {
    let s: f64 = v.iter().sum();
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::Numerical(format!("message normalization {s} is not positive and finite")));
    }
    v.iter_mut().for_each(|x| *x /= s);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SiteGraph;

    #[test]
    fn single_vertex_returns_node_potential() {
        let g = SiteGraph::new(vec![3], []).unwrap();
        let m = PairwiseModel::new(g, vec![vec![1.0, 2.0, 1.0]], vec![]).unwrap();
        let r = sum_product_bp(&m, 10, 0.0).unwrap();
        assert!(r.converged);
        assert_eq!(r.marginals[0], vec![0.25, 0.5, 0.25]);
    }

    #[test]
    fn uniform_tree_gives_uniform_marginals() {
        let g = SiteGraph::new(vec![2, 3, 2, 2], [(0, 1), (1, 2), (1, 3)]).unwrap();
        let r = sum_product_bp(&PairwiseModel::constant(g), 50, 0.0).unwrap();
        assert!(r.converged);
        for (v, b) in r.marginals.iter().enumerate() {
            let d = b.len() as f64;
            assert!(b.iter().all(|&x| (x - 1.0 / d).abs() < 1e-15), "vertex {v}");
        }
    }

    #[test]
    fn bad_damping_rejected() {
        let g = SiteGraph::path(2, 2).unwrap();
        let m = PairwiseModel::constant(g);
        assert!(sum_product_bp(&m, 10, 1.0).is_err());
        assert!(sum_product_bp(&m, 10, -0.1).is_err());
    }

    #[test]
    fn zero_iterations_not_converged() {
        let g = SiteGraph::path(2, 2).unwrap();
        let r = sum_product_bp(&PairwiseModel::constant(g), 0, 0.0).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 0);
    }
}
