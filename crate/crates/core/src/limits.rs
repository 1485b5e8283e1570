//! Size caps for dense objects.

use std::sync::OnceLock;

use crate::{Error, Result};

/// Default cap on the total Hilbert-space dimension of a dense operator.
pub const DEFAULT_MAX_DIM: usize = 1 << 14;

/// Cap on the number of joint states an explicit probability table may hold.
pub const MAX_JOINT_STATES: usize = 1 << 20;

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "QGM_MAX_DIM";

/// The active dimension cap: `QGM_MAX_DIM` if set to a positive integer,
/// otherwise [`DEFAULT_MAX_DIM`]. Read once per process.
pub fn max_dim() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_DIM)
    })
}

/// Product of `dims` as an exact integer, failing if it exceeds `limit`.
pub(crate) fn checked_product(dims: &[usize], limit: usize, what: &'static str) -> Result<usize> {
    let required = dims.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
    if required > limit as u128 {
        return Err(Error::Capacity {
            what,
            required,
            limit: limit as u128,
        });
    }
    Ok(required as usize)
}
