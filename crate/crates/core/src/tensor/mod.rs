//! Dense complex linear algebra for operators and density matrices.

mod eigen;
mod partial;

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use crate::limits::{checked_product, max_dim};
use crate::{Error, Result};

pub use eigen::{eigh, eigvalsh, HermitianEigen, JacobiOptions};
pub use partial::partial_trace;

/// Default per-entry tolerance for Hermiticity checks on eigensolver input.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::validation("matrix dimension must be at least 1"));
        }
        if data.len() != dim * dim {
            return Err(Error::validation(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::validation("rows must form a square matrix"));
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_vec(dim, data)
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Rank-one projector `|v><v|` (no normalisation applied).
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let out_row = &mut out[i * n..(i + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            out[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let v = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// Sum of singular values; for Hermitian input this is `sum |lambda_i|`.
    pub fn trace_norm_hermitian(&self) -> Result<f64> {
        Ok(eigvalsh(self)?.iter().map(|l| l.abs()).sum())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product with `a` as the more significant factor, capped at
/// [`max_dim`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_limit(a, b, max_dim())
}

pub fn kron_with_limit(a: &ComplexMatrix, b: &ComplexMatrix, limit: usize) -> Result<ComplexMatrix> {
    let n = checked_product(&[a.dim, b.dim], limit, "kronecker product dimension")?;
    let (da, db) = (a.dim, b.dim);
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..db {
                let row = (i * db + k) * n + j * db;
                for l in 0..db {
                    data[row + l] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(ComplexMatrix { dim: n, data })
}

/// Spectral functional calculus `V diag(f(lambda)) V†` for Hermitian `a`.
///
/// Fails with [`Error::Domain`] if `f` returns a non-finite value at any
/// eigenvalue (for example `ln` of a negative or zero eigenvalue).
pub fn matrix_function<F>(a: &ComplexMatrix, f: F) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> f64,
{
    let eig = eigh(a)?;
    let mut mapped = Vec::with_capacity(eig.eigenvalues.len());
    for &lambda in &eig.eigenvalues {
        let v = f(lambda);
        if !v.is_finite() {
            return Err(Error::Domain(format!(
                "function is not finite at eigenvalue {lambda:e}"
            )));
        }
        mapped.push(v);
    }
    Ok(eig.reconstruct_with(&mapped))
}

/// `exp(a)` for Hermitian `a`.
pub fn expm_hermitian(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_function(a, f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_diag(&[1.0, -1.0])
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_x_sigma_z() {
        let m = kron(&sigma_x(), &sigma_z()).unwrap();
        let mut expected = ComplexMatrix::zeros(4);
        expected[(0, 2)] = c(1.0);
        expected[(1, 3)] = c(-1.0);
        expected[(2, 0)] = c(1.0);
        expected[(3, 1)] = c(-1.0);
        assert_eq!(m, expected);
    }

    #[test]
    fn kron_capacity() {
        let a = ComplexMatrix::identity(128);
        let b = ComplexMatrix::identity(256);
        let err = kron_with_limit(&a, &b, 1 << 14).unwrap_err();
        assert!(matches!(err, Error::Capacity { required: 32768, .. }));
    }

    #[test]
    fn from_vec_rejects_bad_shapes() {
        assert!(ComplexMatrix::from_vec(0, vec![]).is_err());
        assert!(ComplexMatrix::from_vec(2, vec![c(1.0); 3]).is_err());
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = expm_hermitian(&ComplexMatrix::zeros(3)).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn exp_of_diagonal() {
        let e = expm_hermitian(&ComplexMatrix::from_diag(&[1.0, 2.0])).unwrap();
        let expected = ComplexMatrix::from_diag(&[1f64.exp(), 2f64.exp()]);
        assert!(e.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn log_of_negative_spectrum_is_domain_error() {
        let a = ComplexMatrix::from_diag(&[1.0, -0.5]);
        assert!(matches!(matrix_function(&a, f64::ln), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_map_returns_input() {
        let a = ComplexMatrix::from_vec(
            2,
            vec![c(1.0), Complex64::new(0.3, -0.7), Complex64::new(0.3, 0.7), c(-2.0)],
        )
        .unwrap();
        let b = matrix_function(&a, |x| x).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-10);
    }

    #[test]
    fn commutator_of_paulis() {
        // [X, Z] = -2iY
        let comm = sigma_x().commutator(&sigma_z());
        assert!((comm.frobenius_norm() - 8f64.sqrt()).abs() < 1e-15);
    }
}
