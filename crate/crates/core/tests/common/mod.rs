//! Test-only oracles, independent of the library's computational paths.
#![allow(dead_code)]

use num_complex::Complex64;
use qgm_core::graph::SiteGraph;
use qgm_core::quantum::{LocalHamiltonian, Pauli, PauliTerm, TermGroup};
use qgm_core::tensor::ComplexMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| random_complex(rng)).collect();
    ComplexMatrix::from_vec(dim, data).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let a = random_matrix(rng, dim);
    let mut h = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            h[(i, j)] = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
        }
    }
    h
}

/// `G G† / tr(G G†)` for a random complex `G` of the given rank.
pub fn random_density(rng: &mut impl Rng, dim: usize, rank: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for _ in 0..rank {
        let v: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
        m = &m + &ComplexMatrix::outer(&v);
    }
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

/// Entry formula `(a (x) b)[i*db + k, j*db + l] = a[i,j] b[k,l]` by loops.
pub fn kron_oracle(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `exp(a)` by scaling and squaring with a 30-term Taylor series.
pub fn expm_taylor(a: &ComplexMatrix) -> ComplexMatrix {
    let norm = a.frobenius_norm();
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let scaled = a.scale_real(1.0 / 2f64.powi(s));
    let n = a.dim();
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..=30 {
        term = term.matmul(&scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..s {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Dense 2x2 Pauli by name; identity for `I`.
pub fn pauli_dense(c: char) -> ComplexMatrix {
    let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
    let data = match c {
        'I' => vec![l, o, o, l],
        'X' => vec![o, l, l, o],
        'Y' => vec![o, -i, i, o],
        'Z' => vec![l, o, o, -l],
        _ => panic!("bad pauli {c}"),
    };
    ComplexMatrix::from_vec(2, data).unwrap()
}

/// `coeff * (x)_k ops[k]` by explicit Kronecker products (via the loop
/// oracle), `ops` a full-length string over `IXYZ`.
pub fn pauli_string_oracle(ops: &str, coeff: f64) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(1);
    for c in ops.chars() {
        acc = kron_oracle(&acc, &pauli_dense(c));
    }
    acc.scale_real(coeff)
}

/// Brute-force partial trace keeping `keep` (ascending), via explicit
/// multi-index decoding of every matrix entry.
pub fn partial_trace_oracle(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> ComplexMatrix {
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut digits = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            digits[k] = idx % dims[k];
            idx /= dims[k];
        }
        digits
    };
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let mut out = ComplexMatrix::zeros(kept_dim);
    for r in 0..rho.dim() {
        let dr = decode(r);
        for c in 0..rho.dim() {
            let dc = decode(c);
            let traced_equal = (0..dims.len()).filter(|k| !keep.contains(k)).all(|k| dr[k] == dc[k]);
            if !traced_equal {
                continue;
            }
            let ri = keep.iter().fold(0, |acc, &k| acc * dims[k] + dr[k]);
            let ci = keep.iter().fold(0, |acc, &k| acc * dims[k] + dc[k]);
            out[(ri, ci)] += rho[(r, c)];
        }
    }
    out
}

/// Uniformly random labelled tree on `n` vertices (random attachment).
pub fn random_tree(rng: &mut impl Rng, n: usize, dims: Vec<usize>) -> SiteGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n).map(|k| (order[rng.gen_range(0..k)], order[k])).collect();
    SiteGraph::new(dims, edges).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, local_dim: usize) -> SiteGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    SiteGraph::new(vec![local_dim; n], edges).unwrap()
}

/// Every full assignment of `dims`, variable 0 most significant.
pub fn assignments(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}


fn random_pauli(rng: &mut impl Rng) -> Pauli {
    [Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..3)]
}

/// Random path or tree on `n` qubits.
pub fn random_qubit_graph(rng: &mut impl Rng, n: usize) -> SiteGraph {
    if rng.gen_bool(0.5) {
        SiteGraph::path(n, 2).unwrap()
    } else {
        random_tree(rng, n, vec![2; n])
    }
}

/// One group per edge: `J Z_i Z_j + a Z_i + b Z_j`. All groups are diagonal,
/// hence commuting.
pub fn random_zz_family(rng: &mut impl Rng, g: SiteGraph) -> LocalHamiltonian {
    let groups = g
        .edges()
        .map(|(i, j)| TermGroup {
            name: format!("zz{i}_{j}"),
            support: vec![i, j],
            terms: vec![
                PauliTerm::new(vec![i, j], vec![Pauli::Z, Pauli::Z], rng.gen_range(-2.0..2.0)).unwrap(),
                PauliTerm::new(vec![i], vec![Pauli::Z], rng.gen_range(-2.0..2.0)).unwrap(),
                PauliTerm::new(vec![j], vec![Pauli::Z], rng.gen_range(-2.0..2.0)).unwrap(),
            ],
        })
        .collect();
    LocalHamiltonian::new(g, groups).unwrap()
}

/// Groups on a random matching of edges plus single-site groups on the
/// unmatched vertices, each with arbitrary (non-commuting) Pauli content.
/// Supports are pairwise disjoint, so the groups commute.
pub fn random_disjoint_family(rng: &mut impl Rng, g: SiteGraph) -> LocalHamiltonian {
    let mut used = vec![false; g.vertex_count()];
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(rng);
    let mut groups = Vec::new();
    for (i, j) in edges {
        if used[i] || used[j] || rng.gen_bool(0.3) {
            continue;
        }
        used[i] = true;
        used[j] = true;
        let terms = vec![
            PauliTerm::new(vec![i, j], vec![random_pauli(rng), random_pauli(rng)], rng.gen_range(-2.0..2.0)).unwrap(),
            PauliTerm::new(vec![i, j], vec![random_pauli(rng), random_pauli(rng)], rng.gen_range(-2.0..2.0)).unwrap(),
            PauliTerm::new(vec![i], vec![random_pauli(rng)], rng.gen_range(-2.0..2.0)).unwrap(),
        ];
        groups.push(TermGroup {
            name: format!("pair{i}_{j}"),
            support: vec![i, j],
            terms,
        });
    }
    for v in 0..g.vertex_count() {
        if !used[v] {
            groups.push(TermGroup {
                name: format!("site{v}"),
                support: vec![v],
                terms: vec![
                    PauliTerm::new(vec![v], vec![Pauli::X], rng.gen_range(-2.0..2.0)).unwrap(),
                    PauliTerm::new(vec![v], vec![Pauli::Z], rng.gen_range(-2.0..2.0)).unwrap(),
                ],
            });
        }
    }
    LocalHamiltonian::new(g, groups).unwrap()
}

/// One group per edge with random two-site and one-site Pauli terms;
/// generally non-commuting.
pub fn random_local_hamiltonian(rng: &mut impl Rng, g: SiteGraph) -> LocalHamiltonian {
    let groups = g
        .edges()
        .map(|(i, j)| TermGroup {
            name: format!("h{i}_{j}"),
            support: vec![i, j],
            terms: vec![
                PauliTerm::new(vec![i, j], vec![random_pauli(rng), random_pauli(rng)], rng.gen_range(-2.0..2.0)).unwrap(),
                PauliTerm::new(vec![j], vec![random_pauli(rng)], rng.gen_range(-2.0..2.0)).unwrap(),
            ],
        })
        .collect();
    LocalHamiltonian::new(g, groups).unwrap()
}
