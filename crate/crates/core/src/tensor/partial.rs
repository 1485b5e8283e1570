use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

/// Traces out `traced_sites` of a multipartite operator.
///
/// `dims[k]` is the local dimension of site `k`; site 0 is the most
/// significant factor. The kept sites retain their relative order. Tracing
/// every site yields the `1x1` matrix `[tr(rho)]`.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], traced_sites: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::validation("site dimensions must be non-empty and positive"));
    }
    if total != rho.dim() {
        return Err(Error::validation(format!(
            "site dimensions multiply to {total}, matrix has dimension {}",
            rho.dim()
        )));
    }
    let mut traced = vec![false; dims.len()];
    for &s in traced_sites {
        if s >= dims.len() {
            return Err(Error::validation(format!("site {s} out of range for {} sites", dims.len())));
        }
        traced[s] = true;
    }

    // Stride of each site in the full index.
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let kept: Vec<usize> = (0..dims.len()).filter(|&k| !traced[k]).collect();
    let gone: Vec<usize> = (0..dims.len()).filter(|&k| traced[k]).collect();

    let kept_offsets = offsets(&kept, dims, &strides);
    let gone_offsets = offsets(&gone, dims, &strides);

    let out_dim = kept_offsets.len();
    let mut out = ComplexMatrix::zeros(out_dim);
    for (i, &row_base) in kept_offsets.iter().enumerate() {
        for (j, &col_base) in kept_offsets.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &t in &gone_offsets {
                acc += rho[(row_base + t, col_base + t)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Full-index offsets of every joint assignment of `sites`, enumerated with
/// the first listed site most significant.
fn offsets(sites: &[usize], dims: &[usize], strides: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &s in sites {
        let mut next = Vec::with_capacity(out.len() * dims[s]);
        for &base in &out {
            for digit in 0..dims[s] {
                next.push(base + digit * strides[s]);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::kron;

    #[test]
    fn product_state_reduces_to_factor() {
        let rho_a = ComplexMatrix::from_vec(
            2,
            vec![
                Complex64::new(0.7, 0.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                Complex64::new(0.3, 0.0),
            ],
        )
        .unwrap();
        let rho_b = ComplexMatrix::from_diag(&[0.25, 0.5, 0.25]);
        let joint = kron(&rho_a, &rho_b).unwrap();
        let reduced = partial_trace(&joint, &[2, 3], &[1]).unwrap();
        assert!(reduced.max_abs_diff(&rho_a) < 1e-15);
        let other = partial_trace(&joint, &[2, 3], &[0]).unwrap();
        assert!(other.max_abs_diff(&rho_b) < 1e-15);
    }

    #[test]
    fn full_trace_is_scalar() {
        let rho = ComplexMatrix::from_diag(&[0.1, 0.2, 0.3, 0.4]);
        let t = partial_trace(&rho, &[2, 2], &[0, 1]).unwrap();
        assert_eq!(t.dim(), 1);
        assert!((t[(0, 0)] - rho.trace()).norm() < 1e-15);
    }

    #[test]
    fn bell_state_marginal_is_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [
            Complex64::new(h, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
        ];
        let rho = ComplexMatrix::outer(&psi);
        for site in 0..2 {
            let r = partial_trace(&rho, &[2, 2], &[site]).unwrap();
            assert!(r.max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.5])) < 1e-15);
        }
    }

    #[test]
    fn mismatched_dims_rejected() {
        let rho = ComplexMatrix::identity(4);
        assert!(partial_trace(&rho, &[2, 3], &[0]).is_err());
        assert!(partial_trace(&rho, &[2, 2], &[2]).is_err());
    }
}
