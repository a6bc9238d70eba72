//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes plain numbers or strings and returns numbers or a JSON
//! string, so the same functions run natively under `cargo test`. Failures
//! come back as `{"error": "..."}` rather than exceptions.

use qlatency::circuit::{lower, parse_any, Circuit};
use qlatency::estimator::{queue_delay, CoverageGrid};
use qlatency::generate::random_circuit;
use qlatency::{estimate, FabricConfig};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn error_json(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

fn fabric(width: usize, length: usize, capacity: usize, speed: f64) -> Result<FabricConfig, String> {
    let cfg = FabricConfig {
        channel_capacity: capacity,
        speed,
        ..FabricConfig::default().with_fabric(width, length)
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

#[derive(Serialize)]
struct Grid {
    width: usize,
    length: usize,
    side: usize,
    clamped: bool,
    /// Row-major by x.
    cells: Vec<f64>,
}

/// Single-zone coverage probability of every ULB for zone area `area`.
#[wasm_bindgen]
pub fn coverage_grid(width: usize, length: usize, area: f64) -> String {
    if width == 0 || length == 0 || !(area.is_finite() && area >= 0.0) {
        return error_json("fabric must be at least 1x1 and the zone area finite");
    }
    let g = CoverageGrid::new(width, length, area);
    serde_json::to_string(&Grid {
        width,
        length,
        side: g.side,
        clamped: g.clamped,
        cells: g.cells,
    })
    .expect("grid serializes")
}

#[derive(Serialize)]
struct Occupancy {
    q: usize,
    expected_area: f64,
    delay: f64,
}

/// `E[S_q]` for `q = 0..=min(qubits, q_max)` with the congestion delay of
/// each level for an uncongested delay of 1.
#[wasm_bindgen]
pub fn coverage_distribution(width: usize, length: usize, area: f64, qubits: usize, q_max: usize, capacity: usize) -> String {
    if width == 0 || length == 0 || capacity == 0 || !(area.is_finite() && area >= 0.0) {
        return error_json("fabric, capacity and zone area must be positive");
    }
    let g = CoverageGrid::new(width, length, area);
    let top = qubits.min(q_max);
    let levels: Vec<Occupancy> = g
        .expected_coverage(qubits, 0..=top)
        .into_iter()
        .enumerate()
        .map(|(q, e)| Occupancy {
            q,
            expected_area: e,
            delay: if q == 0 { 0.0 } else { queue_delay(q, capacity, 1.0) },
        })
        .collect();
    serde_json::to_string(&levels).expect("levels serialize")
}

fn estimate_json(c: &Circuit, cfg: &FabricConfig, speeds: &[f64]) -> String {
    let result = match estimate(c, cfg) {
        Ok(r) => r,
        Err(e) => return error_json(e),
    };
    // Latency against routing speed, for the curve plot.
    let curve: Vec<(f64, f64)> = speeds
        .iter()
        .filter_map(|&v| {
            let trial = FabricConfig { speed: v, ..cfg.clone() };
            estimate(c, &trial).ok().map(|r| (v, r.latency_us))
        })
        .collect();
    serde_json::json!({ "result": result, "speed_curve": curve }).to_string()
}

fn speed_sweep() -> Vec<f64> {
    (0..=24).map(|i| 10f64.powf(-5.0 + i as f64 / 6.0)).collect()
}

/// Estimates a pasted netlist (`.qn` or `.real`), lowering it if needed.
#[wasm_bindgen]
pub fn estimate_netlist(text: &str, width: usize, length: usize, capacity: usize, speed: f64) -> String {
    let cfg = match fabric(width, length, capacity, speed) {
        Ok(c) => c,
        Err(e) => return error_json(e),
    };
    match parse_any(text) {
        Ok(c) => {
            let c = if c.is_fault_tolerant() { c } else { lower(&c) };
            estimate_json(&c, &cfg, &speed_sweep())
        }
        Err(e) => error_json(e),
    }
}

/// Estimates a seeded random FT circuit.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn estimate_random(
    qubits: usize,
    ops: usize,
    cnot_fraction: f64,
    seed: u32,
    width: usize,
    length: usize,
    capacity: usize,
    speed: f64,
) -> String {
    let cfg = match fabric(width, length, capacity, speed) {
        Ok(c) => c,
        Err(e) => return error_json(e),
    };
    match random_circuit(qubits, ops, cnot_fraction, seed as u64) {
        Ok(c) => estimate_json(&c, &cfg, &speed_sweep()),
        Err(e) => error_json(e),
    }
}
