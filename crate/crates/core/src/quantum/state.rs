use num_complex::Complex64;

use crate::graph::{SeparatorTriple, VertexSet};
use crate::tensor::{eigh, eigvalsh, partial_trace, ComplexMatrix};
use crate::{Error, Result};

/// Tolerance for the Hermitian, unit-trace and positivity checks.
pub const DENSITY_TOL: f64 = 1e-10;

/// Eigenvalues below this contribute nothing to the von Neumann entropy.
pub const EIGENVALUE_CLAMP: f64 = 1e-14;

/// Hermitian, positive semidefinite, unit-trace operator on a multi-site
/// Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        check_dims(&dims, &matrix)?;
        let defect = matrix.hermitian_defect();
        if defect > DENSITY_TOL {
            return Err(Error::validation(format!("density matrix is not Hermitian (defect {defect:e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::validation(format!("density matrix has trace {tr}")));
        }
        let min = eigvalsh(&matrix)?[0];
        if min < -DENSITY_TOL {
            return Err(Error::validation(format!("density matrix has negative eigenvalue {min:e}")));
        }
        Ok(Self { dims, matrix })
    }

    /// `M / tr(M)` for a Hermitian positive semidefinite `M`.
    pub fn normalized(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let tr = matrix.trace().re;
        if tr <= 0.0 || !tr.is_finite() {
            return Err(Error::validation(format!("cannot normalize operator with trace {tr}")));
        }
        Self::new(dims, matrix.hermitian_part().scale_real(1.0 / tr))
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let d: usize = dims.iter().product();
        Self::new(dims, ComplexMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    pub(crate) fn from_trusted(dims: Vec<usize>, matrix: ComplexMatrix) -> Self {
        Self { dims, matrix }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn site_count(&self) -> usize {
        self.dims.len()
    }

    /// Reduced operator on `keep`, tracing out every other site.
    pub fn reduce(&self, keep: &VertexSet) -> Result<ComplexMatrix> {
        if let Some(&s) = keep.iter().find(|&&s| s >= self.dims.len()) {
            return Err(Error::validation(format!("site {s} out of range")));
        }
        let traced: Vec<usize> = (0..self.dims.len()).filter(|s| !keep.contains(s)).collect();
        partial_trace(&self.matrix, &self.dims, &traced)
    }

    /// Re-runs the invariant checks.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.dims.clone(), self.matrix.clone()).map(|_| ())
    }
}

fn check_dims(dims: &[usize], m: &ComplexMatrix) -> Result<()> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || total != m.dim() {
        return Err(Error::validation(format!(
            "site dimensions {dims:?} do not match matrix dimension {}",
            m.dim()
        )));
    }
    Ok(())
}

/// Thermal state and partition function.
#[derive(Clone, Debug)]
pub struct GibbsState {
    pub rho: DensityMatrix,
    /// `Tr exp(-beta H)`; may overflow to infinity for large `beta * |E_min|`.
    pub z: f64,
    /// `ln Tr exp(-beta H)`, always finite.
    pub ln_z: f64,
}

/// `rho = exp(-beta H) / Z` via the spectral decomposition of `H`, with the
/// ground energy subtracted before exponentiating.
pub fn gibbs_state(h: &ComplexMatrix, beta: f64, dims: &[usize]) -> Result<GibbsState> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::validation(format!("inverse temperature {beta} must be finite and non-negative")));
    }
    check_dims(dims, h)?;
    if beta == 0.0 {
        let d = h.dim() as f64;
        return Ok(GibbsState {
            rho: DensityMatrix::from_trusted(dims.to_vec(), ComplexMatrix::identity(h.dim()).scale_real(1.0 / d)),
            z: d,
            ln_z: d.ln(),
        });
    }
    let eig = eigh(h)?;
    let e0 = eig.eigenvalues[0];
    let weights: Vec<f64> = eig.eigenvalues.iter().map(|&e| (-beta * (e - e0)).exp()).collect();
    let z_shifted: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|w| w / z_shifted).collect();
    let ln_z = z_shifted.ln() - beta * e0;
    let rho = eig.reconstruct_with(&probs);
    Ok(GibbsState {
        rho: DensityMatrix::from_trusted(dims.to_vec(), rho),
        z: ln_z.exp(),
        ln_z,
    })
}

/// `S(rho) = -tr(rho ln rho)` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    matrix_entropy(rho.matrix())
}

pub(crate) fn matrix_entropy(m: &ComplexMatrix) -> Result<f64> {
    // Neumaier summation: degenerate spectra add many equal terms.
    let (mut s, mut comp) = (0.0f64, 0.0f64);
    for l in eigvalsh(m)?.into_iter().filter(|&l| l >= EIGENVALUE_CLAMP) {
        let term = -l * l.ln();
        let t = s + term;
        comp += if s.abs() >= term.abs() { (s - t) + term } else { (term - t) + s };
        s = t;
    }
    Ok((s + comp).clamp(0.0, (m.dim() as f64).ln()))
}

/// Entropy of the reduced state on `sites`; zero for the empty set.
pub fn subsystem_entropy(rho: &DensityMatrix, sites: &VertexSet) -> Result<f64> {
    if sites.is_empty() {
        return Ok(0.0);
    }
    matrix_entropy(&rho.reduce(sites)?)
}

/// `I(A:C|B) = S(AB) + S(CB) - S(ABC) - S(B)` in nats.
pub fn quantum_cmi(rho: &DensityMatrix, t: &SeparatorTriple) -> Result<f64> {
    t.check_partition(rho.site_count())?;
    let ab: VertexSet = t.a.union(&t.b).copied().collect();
    let cb: VertexSet = t.c.union(&t.b).copied().collect();
    Ok(subsystem_entropy(rho, &ab)? + subsystem_entropy(rho, &cb)?
        - von_neumann_entropy(rho)?
        - subsystem_entropy(rho, &t.b)?)
}
