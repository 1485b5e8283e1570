use serde::{Deserialize, Serialize};

use super::table::{increment, state_count, JointTable};
use crate::graph::{SiteGraph, VertexSet};
use crate::{Error, Result};

/// Positive weight table over the joint assignments of a clique.
///
/// `table` is indexed by the assignment of `support` in ascending vertex
/// order, smallest vertex most significant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliquePotential {
    pub support: Vec<usize>,
    pub table: Vec<f64>,
}

impl CliquePotential {
    pub fn new(support: Vec<usize>, table: Vec<f64>) -> Result<Self> {
        let p = Self { support, table };
        if p.support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation(format!(
                "potential support {:?} must be strictly ascending",
                p.support
            )));
        }
        if let Some(w) = p.table.iter().find(|w| **w <= 0.0 || !w.is_finite()) {
            return Err(Error::validation(format!("potential entry {w} is not positive and finite")));
        }
        Ok(p)
    }

    fn validate_against(&self, g: &SiteGraph) -> Result<()> {
        let support: VertexSet = self.support.iter().copied().collect();
        if support.len() != self.support.len() || !g.is_clique(&support) {
            return Err(Error::validation(format!("support {:?} is not a clique of the graph", self.support)));
        }
        let expected: usize = self.support.iter().map(|&v| g.local_dims()[v]).product();
        if self.table.len() != expected {
            return Err(Error::validation(format!(
                "potential on {:?} needs {expected} entries, got {}",
                self.support,
                self.table.len()
            )));
        }
        if let Some(w) = self.table.iter().find(|w| **w <= 0.0 || !w.is_finite()) {
            return Err(Error::validation(format!("potential entry {w} is not positive and finite")));
        }
        Ok(())
    }
}

/// A normalized clique product and its normalization constant.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub table: JointTable,
    pub z: f64,
}

/// `P(V) = (1/Z) prod_c W(c)` over the given clique potentials.
pub fn hc_factorize(g: &SiteGraph, potentials: &[CliquePotential]) -> Result<Factorization> {
    for p in potentials {
        p.validate_against(g)?;
    }
    let dims = g.local_dims().to_vec();
    let states = state_count(&dims)?;
    let mut weights = Vec::with_capacity(states);
    let mut digits = vec![0usize; dims.len()];
    for _ in 0..states {
        let w: f64 = potentials
            .iter()
            .map(|p| {
                let idx = p.support.iter().fold(0, |acc, &v| acc * dims[v] + digits[v]);
                p.table[idx]
            })
            .product();
        weights.push(w);
        increment(&mut digits, &dims);
    }
    let (table, z) = JointTable::from_weights(dims, weights)?;
    Ok(Factorization { table, z })
}

/// Pairwise Markov random field with node (evidence) and edge
/// (compatibility) potentials.
///
/// `edge_potentials[k]` belongs to the k-th edge of `graph.edges()` and is
/// indexed `x_i * d_j + x_j` for the edge `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseModel {
    graph: SiteGraph,
    node_potentials: Vec<Vec<f64>>,
    edge_potentials: Vec<Vec<f64>>,
}

impl PairwiseModel {
    pub fn new(graph: SiteGraph, node_potentials: Vec<Vec<f64>>, edge_potentials: Vec<Vec<f64>>) -> Result<Self> {
        let dims = graph.local_dims();
        if node_potentials.len() != graph.vertex_count() {
            return Err(Error::validation(format!(
                "need {} node potentials, got {}",
                graph.vertex_count(),
                node_potentials.len()
            )));
        }
        if edge_potentials.len() != graph.edge_count() {
            return Err(Error::validation(format!(
                "need {} edge potentials, got {}",
                graph.edge_count(),
                edge_potentials.len()
            )));
        }
        for (v, t) in node_potentials.iter().enumerate() {
            check_table(t, dims[v], &format!("node {v}"))?;
        }
        for ((i, j), t) in graph.edges().zip(&edge_potentials) {
            check_table(t, dims[i] * dims[j], &format!("edge ({i}, {j})"))?;
        }
        Ok(Self {
            graph,
            node_potentials,
            edge_potentials,
        })
    }

    /// All potentials identically one.
    pub fn constant(graph: SiteGraph) -> Self {
        let dims = graph.local_dims().to_vec();
        let nodes = dims.iter().map(|&d| vec![1.0; d]).collect();
        let edges = graph.edges().map(|(i, j)| vec![1.0; dims[i] * dims[j]]).collect();
        Self {
            graph,
            node_potentials: nodes,
            edge_potentials: edges,
        }
    }

    pub fn graph(&self) -> &SiteGraph {
        &self.graph
    }

    pub fn node_potential(&self, v: usize) -> &[f64] {
        &self.node_potentials[v]
    }

    pub fn edge_potentials(&self) -> impl Iterator<Item = ((usize, usize), &[f64])> + '_ {
        self.graph.edges().zip(self.edge_potentials.iter().map(Vec::as_slice))
    }
}

fn check_table(t: &[f64], len: usize, what: &str) -> Result<()> {
    if t.len() != len {
        return Err(Error::validation(format!("{what} potential needs {len} entries, got {}", t.len())));
    }
    if let Some(w) = t.iter().find(|w| **w <= 0.0 || !w.is_finite()) {
        return Err(Error::validation(format!("{what} potential entry {w} is not positive and finite")));
    }
    Ok(())
}

/// `P(V) = (1/Z) prod_v nu_v(x_v) prod_(u,v) mu_uv(x_u, x_v)`.
pub fn pairwise_joint(m: &PairwiseModel) -> Result<JointTable> {
    Ok(pairwise_weights(m)?.0)
}

/// [`pairwise_joint`] together with its normalization constant.
pub fn pairwise_weights(m: &PairwiseModel) -> Result<(JointTable, f64)> {
    let dims = m.graph.local_dims().to_vec();
    let states = state_count(&dims)?;
    let edges: Vec<(usize, usize)> = m.graph.edges().collect();
    let mut weights = Vec::with_capacity(states);
    let mut x = vec![0usize; dims.len()];
    for _ in 0..states {
        let mut w = 1.0;
        for (v, phi) in m.node_potentials.iter().enumerate() {
            w *= phi[x[v]];
        }
        for (&(i, j), psi) in edges.iter().zip(&m.edge_potentials) {
            w *= psi[x[i] * dims[j] + x[j]];
        }
        weights.push(w);
        increment(&mut x, &dims);
    }
    JointTable::from_weights(dims, weights)
}

/// JSON form of a pairwise model.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairwiseModelFile {
    pub graph: SiteGraph,
    pub nodes: Vec<NodePotentialEntry>,
    #[serde(default)]
    pub edges: Vec<EdgePotentialEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodePotentialEntry {
    pub vertex: usize,
    pub table: Vec<f64>,
}

/// `table` is indexed `x_edge[0] * d_edge[1] + x_edge[1]` in the order the
/// edge is written.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgePotentialEntry {
    pub edge: [usize; 2],
    pub table: Vec<f64>,
}

impl TryFrom<PairwiseModelFile> for PairwiseModel {
    type Error = Error;

    fn try_from(f: PairwiseModelFile) -> Result<Self> {
        let g = f.graph;
        let n = g.vertex_count();
        let dims = g.local_dims().to_vec();
        let mut nodes: Vec<Option<Vec<f64>>> = vec![None; n];
        for e in f.nodes {
            let slot = nodes
                .get_mut(e.vertex)
                .ok_or_else(|| Error::validation(format!("node potential for unknown vertex {}", e.vertex)))?;
            if slot.replace(e.table).is_some() {
                return Err(Error::validation(format!("duplicate node potential for vertex {}", e.vertex)));
            }
        }
        let nodes = nodes
            .into_iter()
            .enumerate()
            .map(|(v, t)| t.ok_or_else(|| Error::validation(format!("missing node potential for vertex {v}"))))
            .collect::<Result<Vec<_>>>()?;

        let edge_list: Vec<(usize, usize)> = g.edges().collect();
        let mut edges: Vec<Option<Vec<f64>>> = vec![None; edge_list.len()];
        for e in f.edges {
            let [a, b] = e.edge;
            let key = (a.min(b), a.max(b));
            let k = edge_list
                .iter()
                .position(|&x| x == key)
                .ok_or_else(|| Error::validation(format!("potential for edge ({a}, {b}) not in graph")))?;
            let table = if a < b {
                e.table
            } else {
                // Written as (larger, smaller): transpose into (smaller, larger).
                let (da, db) = (dims[a], dims[b]);
                if e.table.len() != da * db {
                    return Err(Error::validation(format!(
                        "edge ({a}, {b}) potential needs {} entries, got {}",
                        da * db,
                        e.table.len()
                    )));
                }
                let mut t = vec![0.0; da * db];
                for xa in 0..da {
                    for xb in 0..db {
                        t[xb * da + xa] = e.table[xa * db + xb];
                    }
                }
                t
            };
            if edges[k].replace(table).is_some() {
                return Err(Error::validation(format!("duplicate potential for edge ({a}, {b})")));
            }
        }
        let edges = edges
            .into_iter()
            .zip(&edge_list)
            .map(|(t, &(i, j))| t.ok_or_else(|| Error::validation(format!("missing potential for edge ({i}, {j})"))))
            .collect::<Result<Vec<_>>>()?;
        PairwiseModel::new(g, nodes, edges)
    }
}

impl From<&PairwiseModel> for PairwiseModelFile {
    fn from(m: &PairwiseModel) -> Self {
        PairwiseModelFile {
            graph: m.graph.clone(),
            nodes: m
                .node_potentials
                .iter()
                .enumerate()
                .map(|(vertex, t)| NodePotentialEntry { vertex, table: t.clone() })
                .collect(),
            edges: m
                .edge_potentials()
                .map(|((i, j), t)| EdgePotentialEntry { edge: [i, j], table: t.to_vec() })
                .collect(),
        }
    }
}

/// JSON form of a clique factorization: a graph plus its potentials.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationFile {
    pub graph: SiteGraph,
    pub potentials: Vec<CliquePotential>,
}
