use num_complex::Complex64;

use super::{ComplexMatrix, HERMITIAN_TOL};
use crate::{Error, Result};

/// Stopping rules for the cyclic Jacobi eigensolver.
#[derive(Clone, Copy, Debug)]
pub struct JacobiOptions {
    pub max_sweeps: usize,
    /// Converged once the off-diagonal Frobenius norm drops to
    /// `relative_threshold * ||A||_F`.
    pub relative_threshold: f64,
    /// Per-entry tolerance for the Hermiticity precondition.
    pub hermitian_tol: f64,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            max_sweeps: 100,
            relative_threshold: 1e-14,
            hermitian_tol: HERMITIAN_TOL,
        }
    }
}

/// Eigendecomposition `A = V diag(lambda) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(values) V†`, Hermitian by construction.
    pub fn reconstruct_with(&self, values: &[f64]) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        assert_eq!(values.len(), n);
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &lambda) in values.iter().enumerate() {
                    if lambda != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * lambda;
                    }
                }
                if i == j {
                    out[(i, i)] = Complex64::new(acc.re, 0.0);
                } else {
                    out[(i, j)] = acc;
                    out[(j, i)] = acc.conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(&self.eigenvalues)
    }
}

/// Hermitian eigendecomposition with default [`JacobiOptions`].
pub fn eigh(a: &ComplexMatrix) -> Result<HermitianEigen> {
    eigh_with(a, &JacobiOptions::default())
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eigh(a)?.eigenvalues)
}

/// Cyclic complex Jacobi. Each rotation zeroes one off-diagonal pair by
/// first removing the phase of `a_pq` and then applying a real Givens
/// rotation.
pub fn eigh_with(a: &ComplexMatrix, opts: &JacobiOptions) -> Result<HermitianEigen> {
    let defect = a.hermitian_defect();
    if defect > opts.hermitian_tol {
        return Err(Error::validation(format!(
            "eigh requires a Hermitian matrix (defect {defect:e})"
        )));
    }
    if a.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::validation("eigh input contains non-finite entries"));
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = opts.relative_threshold * a.frobenius_norm();

    let mut converged = off_diagonal_norm(&m) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < opts.max_sweeps {
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&m) <= threshold;
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi eigensolver did not converge in {} sweeps",
            opts.max_sweeps
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Applies `M <- U† M U`, `V <- V U` with
/// `U = [[c, s e^{i phi}], [-s e^{-i phi}, c]]` on the (p, q) plane, where
/// `a_pq = |a_pq| e^{i phi}`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    if t == 0.0 {
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = m.dim();
    let s_phase = phase * s; // s e^{i phi}
    let s_phase_conj = s_phase.conj();

    // Columns: M <- M U.
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c - mkq * s_phase_conj;
        m[(k, q)] = mkp * s_phase + mkq * c;
    }
    // Rows: M <- U† M.
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c - mqk * s_phase;
        m[(q, k)] = mpk * s_phase_conj + mqk * c;
    }
    m[(p, p)] = Complex64::new(app - t * r, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s_phase_conj;
        v[(k, q)] = vkp * s_phase + vkq * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_spectrum_sorted() {
        let e = eigh(&ComplexMatrix::from_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = eigh(&x).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&x) < 1e-15);
    }

    #[test]
    fn pauli_y_spectrum() {
        let y = ComplexMatrix::from_vec(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let e = eigh(&y).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&y) < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(eigh(&a), Err(Error::Validation(_))));
    }

    #[test]
    fn one_by_one() {
        let e = eigh(&ComplexMatrix::from_diag(&[-4.5])).unwrap();
        assert_eq!(e.eigenvalues, vec![-4.5]);
    }
}
