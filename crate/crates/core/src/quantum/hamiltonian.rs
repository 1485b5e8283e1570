use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::graph::{SiteGraph, VertexSet};
use crate::limits::{checked_product, max_dim};
use crate::tensor::ComplexMatrix;
use crate::{Error, Result};

/// Single-qubit Pauli operator (eigenvalues +-1, no factor of 1/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'X' | 'x' => Ok(Pauli::X),
            'Y' | 'y' => Ok(Pauli::Y),
            'Z' | 'z' => Ok(Pauli::Z),
            other => Err(Error::validation(format!("unknown Pauli {other:?}"))),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// `P |bit> = phase |bit'>`.
    #[inline]
    fn act(self, bit: usize) -> (usize, Complex64) {
        match self {
            Pauli::X => (bit ^ 1, Complex64::new(1.0, 0.0)),
            Pauli::Y => (bit ^ 1, if bit == 0 { Complex64::new(0.0, 1.0) } else { Complex64::new(0.0, -1.0) }),
            Pauli::Z => (bit, if bit == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(-1.0, 0.0) }),
        }
    }

    /// Dense 2x2 matrix.
    pub fn matrix(self) -> ComplexMatrix {
        let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        let data = match self {
            Pauli::X => vec![o, l, l, o],
            Pauli::Y => vec![o, -i, i, o],
            Pauli::Z => vec![l, o, o, -l],
        };
        ComplexMatrix::from_vec(2, data).expect("2x2")
    }
}

/// `coeff * P_1 (x) P_2 (x) ...` on the listed sites, identity elsewhere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PauliTermFile", into = "PauliTermFile")]
pub struct PauliTerm {
    sites: Vec<usize>,
    paulis: Vec<Pauli>,
    coeff: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PauliTermFile {
    sites: Vec<usize>,
    paulis: String,
    coeff: f64,
}

impl TryFrom<PauliTermFile> for PauliTerm {
    type Error = Error;
    fn try_from(f: PauliTermFile) -> Result<Self> {
        let paulis = f.paulis.chars().map(Pauli::from_char).collect::<Result<Vec<_>>>()?;
        PauliTerm::new(f.sites, paulis, f.coeff)
    }
}

impl From<PauliTerm> for PauliTermFile {
    fn from(t: PauliTerm) -> Self {
        PauliTermFile {
            paulis: t.pauli_string(),
            sites: t.sites,
            coeff: t.coeff,
        }
    }
}

impl PauliTerm {
    pub fn new(sites: Vec<usize>, paulis: Vec<Pauli>, coeff: f64) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::validation("a Pauli term needs at least one site"));
        }
        if sites.len() != paulis.len() {
            return Err(Error::validation(format!(
                "{} sites but {} Pauli factors",
                sites.len(),
                paulis.len()
            )));
        }
        if sites.iter().collect::<BTreeSet<_>>().len() != sites.len() {
            return Err(Error::validation(format!("repeated site in Pauli term {sites:?}")));
        }
        if !coeff.is_finite() {
            return Err(Error::validation("Pauli term coefficient must be finite"));
        }
        Ok(Self { sites, paulis, coeff })
    }

    /// Parses e.g. `("XX", [0, 1], 1.0)`.
    pub fn parse(paulis: &str, sites: &[usize], coeff: f64) -> Result<Self> {
        let ps = paulis.chars().map(Pauli::from_char).collect::<Result<Vec<_>>>()?;
        Self::new(sites.to_vec(), ps, coeff)
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn paulis(&self) -> &[Pauli] {
        &self.paulis
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn pauli_string(&self) -> String {
        self.paulis.iter().map(|p| p.as_char()).collect()
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (s, p) in self.sites.iter().zip(&self.paulis) {
            write!(f, " {}{}", p.as_char(), s)?;
        }
        Ok(())
    }
}

/// One local term `h_Q` of `H = sum_Q h_Q`: a named sum of Pauli terms
/// supported on `support`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermGroup {
    pub name: String,
    pub support: Vec<usize>,
    pub terms: Vec<PauliTerm>,
}

/// A Hamiltonian written as a sum of clique-supported groups on a graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HamiltonianFile", into = "HamiltonianFile")]
pub struct LocalHamiltonian {
    graph: SiteGraph,
    groups: Vec<TermGroup>,
}

/// `{"graph": {...}, "groups": [{"name", "support", "terms"}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HamiltonianFile {
    graph: SiteGraph,
    groups: Vec<TermGroup>,
}

impl TryFrom<HamiltonianFile> for LocalHamiltonian {
    type Error = Error;
    fn try_from(f: HamiltonianFile) -> Result<Self> {
        LocalHamiltonian::new(f.graph, f.groups)
    }
}

impl From<LocalHamiltonian> for HamiltonianFile {
    fn from(h: LocalHamiltonian) -> Self {
        HamiltonianFile {
            graph: h.graph,
            groups: h.groups,
        }
    }
}

impl LocalHamiltonian {
    pub fn new(graph: SiteGraph, groups: Vec<TermGroup>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for group in &groups {
            if !names.insert(group.name.as_str()) {
                return Err(Error::validation(format!("duplicate group name {:?}", group.name)));
            }
            let support: VertexSet = group.support.iter().copied().collect();
            if support.len() != group.support.len() {
                return Err(Error::validation(format!("group {:?} repeats a support site", group.name)));
            }
            graph.check_vertices(&support)?;
            if !graph.is_clique(&support) {
                return Err(Error::validation(format!(
                    "support {:?} of group {:?} is not a clique of the graph",
                    group.support, group.name
                )));
            }
            for term in &group.terms {
                if let Some(s) = term.sites.iter().find(|s| !support.contains(s)) {
                    return Err(Error::validation(format!(
                        "term {term} of group {:?} acts on site {s} outside its support",
                        group.name
                    )));
                }
                check_qubit_sites(term, graph.local_dims())?;
            }
        }
        Ok(Self { graph, groups })
    }

    pub fn graph(&self) -> &SiteGraph {
        &self.graph
    }

    pub fn groups(&self) -> &[TermGroup] {
        &self.groups
    }

    pub fn dims(&self) -> &[usize] {
        self.graph.local_dims()
    }

    /// Total Hilbert-space dimension, checked against [`max_dim`].
    pub fn total_dim(&self) -> Result<usize> {
        checked_product(self.dims(), max_dim(), "Hilbert space dimension")
    }

    /// Full-space matrix of one group.
    pub fn group_matrix(&self, index: usize) -> Result<ComplexMatrix> {
        let sites: Vec<usize> = (0..self.graph.vertex_count()).collect();
        sum_terms(&self.groups[index].terms, &sites, self.dims())
    }
}

fn check_qubit_sites(term: &PauliTerm, dims: &[usize]) -> Result<()> {
    for &s in &term.sites {
        match dims.get(s) {
            None => return Err(Error::validation(format!("term {term} acts on missing site {s}"))),
            Some(&2) => {}
            Some(&d) => {
                return Err(Error::validation(format!(
                    "term {term} puts a Pauli on site {s} of dimension {d}"
                )))
            }
        }
    }
    Ok(())
}

/// `coeff * (x)_v M_v` on the full graph, site 0 most significant.
pub fn embed(term: &PauliTerm, graph: &SiteGraph) -> Result<ComplexMatrix> {
    let sites: Vec<usize> = (0..graph.vertex_count()).collect();
    embed_on(term, &sites, graph.local_dims())
}

/// Embeds `term` into the ordered subsystem `sites` (first listed site most
/// significant). `dims` are the local dimensions of the whole graph.
///
/// Each Pauli string maps a basis state to a single basis state with a
/// phase, so the matrix is filled column by column without forming
/// Kronecker products.
pub fn embed_on(term: &PauliTerm, sites: &[usize], dims: &[usize]) -> Result<ComplexMatrix> {
    check_qubit_sites(term, dims)?;
    let local_dims: Vec<usize> = sites
        .iter()
        .map(|&s| dims.get(s).copied().ok_or_else(|| Error::validation(format!("site {s} out of range"))))
        .collect::<Result<_>>()?;
    let dim = checked_product(&local_dims, max_dim(), "Hilbert space dimension")?;
    let mut strides = vec![1usize; sites.len()];
    for k in (0..sites.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * local_dims[k + 1];
    }
    let mut factors = Vec::with_capacity(term.sites.len());
    for (&s, &p) in term.sites.iter().zip(&term.paulis) {
        let pos = sites
            .iter()
            .position(|&x| x == s)
            .ok_or_else(|| Error::validation(format!("term {term} acts on site {s} outside the subsystem")))?;
        factors.push((strides[pos], p));
    }
    let mut m = ComplexMatrix::zeros(dim);
    for input in 0..dim {
        let mut output = input;
        let mut phase = Complex64::new(term.coeff, 0.0);
        for &(stride, p) in &factors {
            let bit = (input / stride) % 2;
            let (new_bit, ph) = p.act(bit);
            output = output - bit * stride + new_bit * stride;
            phase *= ph;
        }
        m[(output, input)] += phase;
    }
    Ok(m)
}

pub(crate) fn sum_terms(terms: &[PauliTerm], sites: &[usize], dims: &[usize]) -> Result<ComplexMatrix> {
    let local: Vec<usize> = sites.iter().map(|&s| dims[s]).collect();
    let dim = checked_product(&local, max_dim(), "Hilbert space dimension")?;
    let mut total = ComplexMatrix::zeros(dim);
    for t in terms {
        total = &total + &embed_on(t, sites, dims)?;
    }
    Ok(total)
}

/// `H = sum_Q h_Q` on the full space; the zero matrix when there are no
/// terms.
pub fn build_hamiltonian(h: &LocalHamiltonian) -> Result<ComplexMatrix> {
    let dim = h.total_dim()?;
    let mut total = ComplexMatrix::zeros(dim);
    for k in 0..h.groups.len() {
        total = &total + &h.group_matrix(k)?;
    }
    Ok(total)
}

/// Five spins on a path with XX couplings and local Z fields, 0-indexed:
///
/// ```text
/// h12 = X0 X1 + h1 Z0
/// h23 = X1 X2 + (h2 / 2) Z2
/// h34 = X2 X3 + (h2 / 2) Z2
/// h45 = X3 X4 + h3 Z4
/// ```
///
/// Group names keep the 1-based spin labels. With `h2 != 0`, `h23` and
/// `h34` fail to commute; every other pair commutes.
pub fn five_spin_preset(h1: f64, h2: f64, h3: f64) -> LocalHamiltonian {
    let graph = SiteGraph::path(5, 2).expect("valid path");
    let xx = |a: usize| PauliTerm::new(vec![a, a + 1], vec![Pauli::X, Pauli::X], 1.0).expect("valid");
    let z = |s: usize, c: f64| PauliTerm::new(vec![s], vec![Pauli::Z], c).expect("valid");
    let group = |name: &str, a: usize, terms: Vec<PauliTerm>| TermGroup {
        name: name.to_string(),
        support: vec![a, a + 1],
        terms,
    };
    let groups = vec![
        group("h12", 0, vec![xx(0), z(0, h1)]),
        group("h23", 1, vec![xx(1), z(2, 0.5 * h2)]),
        group("h34", 2, vec![xx(2), z(2, 0.5 * h2)]),
        group("h45", 3, vec![xx(3), z(4, h3)]),
    ];
    LocalHamiltonian::new(graph, groups).expect("preset is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_z_on_one_site() {
        let g = SiteGraph::new(vec![2], []).unwrap();
        let m = embed(&PauliTerm::parse("Z", &[0], 1.0).unwrap(), &g).unwrap();
        assert_eq!(m, ComplexMatrix::from_diag(&[1.0, -1.0]));
    }

    #[test]
    fn xx_is_antidiagonal() {
        let g = SiteGraph::path(2, 2).unwrap();
        let m = embed(&PauliTerm::parse("XX", &[0, 1], 1.0).unwrap(), &g).unwrap();
        let mut expected = ComplexMatrix::zeros(4);
        for i in 0..4 {
            expected[(i, 3 - i)] = Complex64::new(1.0, 0.0);
        }
        assert_eq!(m, expected);
    }

    #[test]
    fn y_matches_dense_matrix() {
        let g = SiteGraph::new(vec![2], []).unwrap();
        let m = embed(&PauliTerm::parse("Y", &[0], 1.0).unwrap(), &g).unwrap();
        assert_eq!(m, Pauli::Y.matrix());
    }

    #[test]
    fn pauli_on_qutrit_rejected() {
        let g = SiteGraph::new(vec![2, 3], [(0, 1)]).unwrap();
        assert!(embed(&PauliTerm::parse("Z", &[1], 1.0).unwrap(), &g).is_err());
        // Identity on the qutrit is fine.
        let m = embed(&PauliTerm::parse("Z", &[0], 1.0).unwrap(), &g).unwrap();
        assert_eq!(m.dim(), 6);
        assert_eq!(m.trace(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn term_validation() {
        assert!(PauliTerm::parse("XQ", &[0, 1], 1.0).is_err());
        assert!(PauliTerm::parse("XX", &[0, 0], 1.0).is_err());
        assert!(PauliTerm::parse("X", &[0, 1], 1.0).is_err());
        assert!(PauliTerm::parse("", &[], 1.0).is_err());
        assert!(PauliTerm::parse("X", &[0], f64::NAN).is_err());
    }

    #[test]
    fn empty_hamiltonian_is_zero() {
        let h = LocalHamiltonian::new(SiteGraph::path(3, 2).unwrap(), vec![]).unwrap();
        assert_eq!(build_hamiltonian(&h).unwrap(), ComplexMatrix::zeros(8));
    }

    #[test]
    fn single_field_is_diagonal() {
        let g = SiteGraph::path(2, 2).unwrap();
        let group = TermGroup {
            name: "f".into(),
            support: vec![1],
            terms: vec![PauliTerm::parse("Z", &[1], 0.7).unwrap()],
        };
        let h = LocalHamiltonian::new(g, vec![group]).unwrap();
        let m = build_hamiltonian(&h).unwrap();
        assert_eq!(m, ComplexMatrix::from_diag(&[0.7, -0.7, 0.7, -0.7]));
    }

    #[test]
    fn group_validation() {
        let g = SiteGraph::path(3, 2).unwrap();
        let outside = TermGroup {
            name: "a".into(),
            support: vec![0, 1],
            terms: vec![PauliTerm::parse("Z", &[2], 1.0).unwrap()],
        };
        assert!(LocalHamiltonian::new(g.clone(), vec![outside]).is_err());
        let not_clique = TermGroup {
            name: "a".into(),
            support: vec![0, 2],
            terms: vec![],
        };
        assert!(LocalHamiltonian::new(g.clone(), vec![not_clique]).is_err());
        let dup = TermGroup {
            name: "a".into(),
            support: vec![0],
            terms: vec![],
        };
        assert!(LocalHamiltonian::new(g, vec![dup.clone(), dup]).is_err());
    }

    #[test]
    fn hamiltonian_json_round_trip() {
        let h = five_spin_preset(2.0, 0.0, 2.0);
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.contains(r#"{"sites":[0,1],"paulis":"XX","coeff":1.0}"#));
        let back: LocalHamiltonian = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn preset_structure() {
        let h = five_spin_preset(1.0, 2.0, 3.0);
        let names: Vec<&str> = h.groups().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["h12", "h23", "h34", "h45"]);
        assert_eq!(h.groups()[1].terms[1].coeff(), 1.0);
        assert_eq!(h.groups()[2].terms[1].sites(), &[2]);
        assert_eq!(h.groups()[3].terms[1].coeff(), 3.0);
    }
}
