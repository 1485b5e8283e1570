//! Browser bindings for the five-spin experiment and the denoising demo.
//!
//! Each export returns a string (JSON, SVG or a text grid); failures come
//! back as a thrown JS string. The `*_impl` functions hold the logic so it
//! can be tested natively.

use qgm_core::classical::{denoise_demo, BinaryGrid};
use qgm_core::graph::SeparatorTriple;
use qgm_core::plot::{render_plot, PlotLabels};
use qgm_core::quantum::{commutation_audit, factorization_gap, five_spin_preset, DEFAULT_COMMUTE_TOL};
use qgm_core::sweep::{run_cmi_sweep, to_csv, SweepConfig};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Upper bound on sweep points so a slider drag stays responsive.
pub const MAX_STEPS: usize = 201;

/// `{"csv": ..., "svg": ...}` for `I(A:C|B)` with `A={0,1}`, `B={2}`,
/// `C={3,4}` on `[0, beta_max]`.
#[wasm_bindgen]
pub fn cmi_sweep(h1: f64, h2: f64, h3: f64, beta_max: f64, steps: usize) -> Result<String, JsValue> {
    cmi_sweep_impl(h1, h2, h3, beta_max, steps).map_err(|e| JsValue::from_str(&e))
}

/// Commutation audit plus the factorization gap at `beta`, as JSON.
#[wasm_bindgen]
pub fn commutation_report(h1: f64, h2: f64, h3: f64, beta: f64) -> Result<String, JsValue> {
    commutation_report_impl(h1, h2, h3, beta).map_err(|e| JsValue::from_str(&e))
}

/// Denoised grid for a text image of `0`/`1` rows (at most 8x8).
#[wasm_bindgen]
pub fn denoise(grid: &str, coupling: f64, evidence: f64) -> Result<String, JsValue> {
    denoise_impl(grid, coupling, evidence).map_err(|e| JsValue::from_str(&e))
}

fn finite_fields(h: [f64; 3]) -> Result<(), String> {
    if h.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err("fields must be finite".into())
    }
}

pub fn cmi_sweep_impl(h1: f64, h2: f64, h3: f64, beta_max: f64, steps: usize) -> Result<String, String> {
    finite_fields([h1, h2, h3])?;
    if steps > MAX_STEPS {
        return Err(format!("at most {MAX_STEPS} steps"));
    }
    let cfg = SweepConfig {
        triple: SeparatorTriple::new([0, 1], [2], [3, 4], 5).map_err(|e| e.to_string())?,
        beta_min: 0.0,
        beta_max,
        steps,
    };
    let points = run_cmi_sweep(&five_spin_preset(h1, h2, h3), &cfg).map_err(|e| e.to_string())?;
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.beta, p.cmi)).collect();
    let labels = PlotLabels {
        title: format!("I(A:C|B), h1={h1}, h2={h2}, h3={h3}"),
        ..PlotLabels::default()
    };
    let svg = render_plot(&xy, &labels).map_err(|e| e.to_string())?;
    Ok(json!({ "csv": to_csv(&points), "svg": svg }).to_string())
}

pub fn commutation_report_impl(h1: f64, h2: f64, h3: f64, beta: f64) -> Result<String, String> {
    finite_fields([h1, h2, h3])?;
    let h = five_spin_preset(h1, h2, h3);
    let audit = commutation_audit(&h, DEFAULT_COMMUTE_TOL).map_err(|e| e.to_string())?;
    let gap = factorization_gap(&h, beta).map_err(|e| e.to_string())?;
    Ok(json!({ "commutation": audit, "factorization": gap }).to_string())
}

pub fn denoise_impl(grid: &str, coupling: f64, evidence: f64) -> Result<String, String> {
    let noisy: BinaryGrid = grid.parse().map_err(|e: qgm_core::Error| e.to_string())?;
    denoise_demo(&noisy, coupling, evidence)
        .map(|g| g.to_string())
        .map_err(|e| e.to_string())
}
