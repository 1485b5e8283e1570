use crate::{Error, Result};

/// Partition function `Z = sum_x exp(-sum_i h_i(x_i, x_{i+1}))` of an open
/// chain, by summing out one variable at a time from the left.
///
/// `chain_terms[i]` is indexed `x_i * arities[i + 1] + x_{i+1}`.
pub fn transfer_matrix_z(chain_terms: &[Vec<f64>], arities: &[usize]) -> Result<f64> {
    if arities.len() < 2 {
        return Err(Error::validation("a chain needs at least two variables"));
    }
    if chain_terms.len() != arities.len() - 1 {
        return Err(Error::validation(format!(
            "{} variables need {} edge terms, got {}",
            arities.len(),
            arities.len() - 1,
            chain_terms.len()
        )));
    }
    if arities.contains(&0) {
        return Err(Error::validation("arities must be positive"));
    }
    for (i, h) in chain_terms.iter().enumerate() {
        let want = arities[i] * arities[i + 1];
        if h.len() != want {
            return Err(Error::validation(format!("edge term {i} needs {want} entries, got {}", h.len())));
        }
        if h.iter().any(|x| !x.is_finite()) {
            return Err(Error::validation(format!("edge term {i} has non-finite entries")));
        }
    }

    // message[x] = partial sum over everything left of the current variable.
    let mut message = vec![1.0; arities[0]];
    for (i, h) in chain_terms.iter().enumerate() {
        let next_dim = arities[i + 1];
        let mut next = vec![0.0; next_dim];
        for (x, &m) in message.iter().enumerate() {
            for (y, slot) in next.iter_mut().enumerate() {
                *slot += m * (-h[x * next_dim + y]).exp();
            }
        }
        message = next;
    }
    let z: f64 = message.iter().sum();
    if !z.is_finite() {
        return Err(Error::Numerical(format!("partition function overflowed ({z})")));
    }
    Ok(z)
}
