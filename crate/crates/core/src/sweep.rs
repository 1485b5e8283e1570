//! Inverse-temperature sweeps of `I(A:C|B)` and the combined
//! commutation / Markov check.

use serde::Serialize;

use crate::graph::SeparatorTriple;
use crate::quantum::{
    build_hamiltonian, commutation_audit, gibbs_state, is_quantum_markov_network, quantum_cmi, CommutationReport,
    LocalHamiltonian,
};
use crate::verdict::MarkovReport;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "beta,cmi_nats";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub triple: SeparatorTriple,
    pub beta_min: f64,
    pub beta_max: f64,
    pub steps: usize,
}

impl SweepConfig {
    pub fn validate(&self, site_count: usize) -> Result<()> {
        self.triple.check_partition(site_count)?;
        linspace(self.beta_min, self.beta_max, self.steps).map(|_| ())
    }

    pub fn betas(&self) -> Result<Vec<f64>> {
        linspace(self.beta_min, self.beta_max, self.steps)
    }
}

/// `steps` evenly spaced values from `min` to `max` inclusive; a single
/// step yields `[min]`.
pub fn linspace(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if !min.is_finite() || !max.is_finite() {
        return Err(Error::validation("sweep bounds must be finite"));
    }
    if min < 0.0 {
        return Err(Error::validation(format!("beta_min {min} is negative")));
    }
    if min > max {
        return Err(Error::validation(format!("beta_min {min} exceeds beta_max {max}")));
    }
    if steps == 0 {
        return Err(Error::validation("steps must be at least 1"));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let span = max - min;
    let last = (steps - 1) as f64;
    let mut out: Vec<f64> = (0..steps).map(|k| min + span * (k as f64 / last)).collect();
    out[steps - 1] = max;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub beta: f64,
    pub cmi: f64,
}

/// `I(A:C|B)` of the Gibbs state of `h` at every beta on the grid, in grid
/// order. Each point is computed independently, so results do not depend on
/// evaluation order.
pub fn run_cmi_sweep(h: &LocalHamiltonian, cfg: &SweepConfig) -> Result<Vec<SweepPoint>> {
    cfg.validate(h.graph().vertex_count())?;
    let hm = build_hamiltonian(h)?;
    let betas = cfg.betas()?;
    let point = |beta: f64| -> Result<SweepPoint> {
        let g = gibbs_state(&hm, beta, h.dims())?;
        Ok(SweepPoint {
            beta,
            cmi: quantum_cmi(&g.rho, &cfg.triple)?,
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        betas.into_par_iter().map(point).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        betas.into_iter().map(point).collect()
    }
}

/// Header plus one `beta,cmi` row per point, 17 significant digits each.
pub fn to_csv(points: &[SweepPoint]) -> String {
    let mut out = String::with_capacity(48 * (points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!("{:.16e},{:.16e}\n", p.beta, p.cmi));
    }
    out
}

/// Reads the output of [`to_csv`]; the header is optional.
pub fn parse_csv(text: &str) -> Result<Vec<SweepPoint>> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line == CSV_HEADER) {
            continue;
        }
        let bad = || Error::validation(format!("line {}: expected two numbers, got {line:?}", lineno + 1));
        let (b, c) = line.split_once(',').ok_or_else(bad)?;
        let beta: f64 = b.trim().parse().map_err(|_| bad())?;
        let cmi: f64 = c.trim().parse().map_err(|_| bad())?;
        points.push(SweepPoint { beta, cmi });
    }
    Ok(points)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub beta: f64,
    pub commutation: CommutationReport,
    pub markov: MarkovReport,
    /// `all_commute` implies `is_markov`.
    pub consistent: bool,
}

pub fn run_check(h: &LocalHamiltonian, beta: f64, max_a: usize, tol: f64, commute_tol: f64) -> Result<CheckReport> {
    let commutation = commutation_audit(h, commute_tol)?;
    let markov = is_quantum_markov_network(h, beta, max_a, tol)?;
    let consistent = !commutation.all_commute || markov.is_markov;
    Ok(CheckReport {
        beta,
        commutation,
        markov,
        consistent,
    })
}
