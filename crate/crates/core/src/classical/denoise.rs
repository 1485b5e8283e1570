use std::fmt;
use std::str::FromStr;

use super::bp::{sum_product_bp, DEFAULT_LOOPY_DAMPING};
use super::factor::{pairwise_joint, PairwiseModel};
use crate::graph::SiteGraph;
use crate::{Error, Result};

/// Largest grid side accepted by [`denoise_demo`].
pub const MAX_DENOISE_SIDE: usize = 8;
/// Grids with at most this many pixels are marginalized exactly.
pub const MAX_EXACT_PIXELS: usize = 16;
const LOOPY_MAX_ITERS: usize = 2000;

/// Black-and-white image, row-major, pixels in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryGrid {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl BinaryGrid {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::validation("image must have at least one pixel"));
        }
        if pixels.len() != rows * cols {
            return Err(Error::validation(format!(
                "{rows}x{cols} image needs {} pixels, got {}",
                rows * cols,
                pixels.len()
            )));
        }
        if pixels.iter().any(|&p| p > 1) {
            return Err(Error::validation("pixels must be 0 or 1"));
        }
        Ok(Self { rows, cols, pixels })
    }

    pub fn filled(rows: usize, cols: usize, value: u8) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.pixels[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u8) {
        assert!(value <= 1);
        self.pixels[r * self.cols + c] = value;
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }
}

/// Parses lines of `0`/`1` characters; blank lines and surrounding
/// whitespace are ignored.
impl FromStr for BinaryGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cols = None;
        let mut pixels = Vec::new();
        let mut rows = 0;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Vec<u8> = line
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Error::validation(format!("line {}: unexpected character {other:?}", lineno + 1))),
                })
                .collect::<Result<_>>()?;
            match cols {
                None => cols = Some(row.len()),
                Some(c) if c != row.len() => {
                    return Err(Error::validation(format!(
                        "line {}: expected {c} pixels, got {}",
                        lineno + 1,
                        row.len()
                    )))
                }
                _ => {}
            }
            pixels.extend(row);
            rows += 1;
        }
        Self::new(rows, cols.unwrap_or(0), pixels)
    }
}

impl fmt::Display for BinaryGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Grid MRF for a noisy image: `Psi(x_i, x_j) = exp(coupling [x_i = x_j])`
/// between 4-neighbours and `Phi(x_i, y_i) = exp(evidence [x_i = y_i])`.
pub fn denoise_model(noisy: &BinaryGrid, coupling: f64, evidence_strength: f64) -> Result<PairwiseModel> {
    if !coupling.is_finite() || !evidence_strength.is_finite() {
        return Err(Error::validation("coupling and evidence strength must be finite"));
    }
    let g = SiteGraph::grid(noisy.rows, noisy.cols, 2)?;
    let same = coupling.exp();
    let edges = vec![vec![same, 1.0, 1.0, same]; g.edge_count()];
    let agree = evidence_strength.exp();
    let nodes = noisy
        .pixels
        .iter()
        .map(|&y| if y == 0 { vec![agree, 1.0] } else { vec![1.0, agree] })
        .collect();
    PairwiseModel::new(g, nodes, edges)
}

/// Restores each pixel to the argmax of its posterior marginal. Exact
/// marginalization up to [`MAX_EXACT_PIXELS`] pixels, damped loopy BP beyond.
/// Ties go to 0.
pub fn denoise_demo(noisy: &BinaryGrid, coupling: f64, evidence_strength: f64) -> Result<BinaryGrid> {
    if noisy.rows > MAX_DENOISE_SIDE || noisy.cols > MAX_DENOISE_SIDE {
        return Err(Error::Capacity {
            what: "denoise grid side",
            required: noisy.rows.max(noisy.cols) as u128,
            limit: MAX_DENOISE_SIDE as u128,
        });
    }
    let model = denoise_model(noisy, coupling, evidence_strength)?;
    let marginals = if noisy.pixels.len() <= MAX_EXACT_PIXELS {
        pairwise_joint(&model)?.vertex_marginals()
    } else {
        sum_product_bp(&model, LOOPY_MAX_ITERS, DEFAULT_LOOPY_DAMPING)?.marginals
    };
    let pixels = marginals.iter().map(|m| u8::from(m[1] > m[0])).collect();
    BinaryGrid::new(noisy.rows, noisy.cols, pixels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g: BinaryGrid = "010\n111\n\n".parse().unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 3));
        assert_eq!(g.to_string(), "010\n111\n");
        assert!("01\n1".parse::<BinaryGrid>().is_err());
        assert!("0a".parse::<BinaryGrid>().is_err());
        assert!("".parse::<BinaryGrid>().is_err());
    }

    #[test]
    fn strong_evidence_keeps_input() {
        let img: BinaryGrid = "1100\n1001\n0110\n0011\n".parse().unwrap();
        assert_eq!(denoise_demo(&img, 1.0, 10.0).unwrap(), img);
    }

    #[test]
    fn zero_coupling_keeps_input() {
        let img: BinaryGrid = "10101\n01010\n11100\n00011\n10001\n".parse().unwrap();
        for evidence in [0.01, 0.5, 3.0] {
            assert_eq!(denoise_demo(&img, 0.0, evidence).unwrap(), img);
        }
    }

    #[test]
    fn oversized_grid_is_capacity_error() {
        let img = BinaryGrid::filled(9, 2, 0).unwrap();
        assert!(matches!(denoise_demo(&img, 1.0, 1.0), Err(Error::Capacity { .. })));
    }

    #[test]
    fn ties_break_to_zero() {
        // No evidence and no coupling: every marginal is exactly 1/2.
        let img = BinaryGrid::filled(2, 2, 1).unwrap();
        assert_eq!(denoise_demo(&img, 0.0, 0.0).unwrap(), BinaryGrid::filled(2, 2, 0).unwrap());
    }
}
