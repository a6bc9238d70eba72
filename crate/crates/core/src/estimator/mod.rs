//! Latency estimation without mapping.
//!
//! The estimate is the critical-path length of the dependency graph after
//! adding an average routing latency to every operation: `2 * T_move` for
//! one-qubit operations and a coverage/queueing-derived `L_CNOT` for CNOTs.
//!
//! `L_CNOT` comes from a random presence-zone model. Each qubit owns a zone
//! sized by its interaction degree; zones land uniformly on the fabric, and
//! a ULB covered by `q` zones routes at the congested delay `d_q`.

mod coverage;
mod routing;

use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, GateKind};
use crate::config::{ConfigError, FabricConfig, PathFactor};
use crate::iig::Iig;
use crate::qodg::{self, CriticalCounts, QodgError};

pub use coverage::{binomial, zone_side, BinomialRangeError, BinomialRow, CoverageGrid};
pub use routing::{
    hamiltonian_estimate, l_cnot_avg, queue_delay, uncongested_delay, QueueModel, UncongestedDelay,
    TOUR_LOWER_BOUND, TOUR_OFFSET, TOUR_SLOPE, TOUR_UPPER_BOUND,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Graph(#[from] QodgError),
}

/// One occupancy level of the coverage model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OccupancyTerm {
    pub q: usize,
    /// `E[S_q]`, ULB².
    pub expected_area: f64,
    /// `d_q`, microseconds.
    pub delay: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimationResult {
    /// Estimated latency `D`, microseconds.
    pub latency_us: f64,
    pub latency_s: f64,
    pub qubit_count: usize,
    pub operation_count: usize,
    pub qodg_nodes: usize,
    pub qodg_edges: usize,
    /// `L_CNOT^avg`, microseconds.
    pub l_cnot_avg: f64,
    /// `L_g^avg`, microseconds.
    pub l_g_avg: f64,
    /// `d_uncong`, microseconds; zero without two-qubit operations.
    pub d_uncong: f64,
    /// Average presence-zone area `B`, ULB²; `None` without interactions.
    pub average_zone_area: Option<f64>,
    pub zone_side: Option<usize>,
    pub zone_clamped: bool,
    pub q_max: usize,
    pub path_factor: PathFactor,
    pub critical: CriticalCounts,
    pub per_q: Vec<OccupancyTerm>,
}

impl EstimationResult {
    /// Re-evaluates `D` as a sum over critical-path operation counts.
    pub fn latency_from_counts(&self, cfg: &FabricConfig) -> f64 {
        let mut d = self.critical.cnot as f64 * (cfg.delays.cnot + self.l_cnot_avg);
        for kind in GateKind::ONE_QUBIT_FT {
            let n = self.critical.count(kind);
            if n > 0 {
                let base = cfg.delays.get(kind).expect("FT kind has a delay");
                d += n as f64 * (base + self.l_g_avg);
            }
        }
        d
    }
}

/// Intermediate CNOT routing quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct CnotRouting {
    pub l_cnot_avg: f64,
    pub d_uncong: f64,
    pub average_zone_area: f64,
    pub grid: CoverageGrid,
    pub per_q: Vec<OccupancyTerm>,
}

/// Average CNOT routing latency from the interaction graph. `None` when
/// there is nothing to route (no CNOTs, or a single qubit).
pub fn cnot_routing(iig: &Iig, cfg: &FabricConfig) -> Option<CnotRouting> {
    let qubits = iig.qubit_count();
    if qubits < 2 {
        return None;
    }
    let zs = iig.zone_stats().ok()?;
    let d_uncong = uncongested_delay(&zs, cfg)?.average;
    let b = zs.average_area();
    let grid = CoverageGrid::new(cfg.width, cfg.length, b);
    let top = qubits.min(cfg.q_max);
    let es = grid.expected_coverage(qubits, 1..=top);
    let model = QueueModel::new(cfg.channel_capacity, d_uncong);
    let per_q: Vec<OccupancyTerm> = es
        .into_iter()
        .enumerate()
        .map(|(i, e)| OccupancyTerm {
            q: i + 1,
            expected_area: e,
            delay: model.delay(i + 1),
        })
        .collect();
    let terms: Vec<(usize, f64)> = per_q.iter().map(|t| (t.q, t.expected_area)).collect();
    Some(CnotRouting {
        l_cnot_avg: l_cnot_avg(&terms, cfg.channel_capacity, d_uncong),
        d_uncong,
        average_zone_area: b,
        grid,
        per_q,
    })
}

/// Estimates the mapped latency of an FT circuit.
pub fn estimate(c: &Circuit, cfg: &FabricConfig) -> Result<EstimationResult, EstimateError> {
    cfg.validate()?;
    let iig = Iig::build(c);
    let routing = cnot_routing(&iig, cfg);
    let l_cnot = routing.as_ref().map_or(0.0, |r| r.l_cnot_avg);
    let l_g = cfg.l_g_avg();

    let summary = qodg::summarize(c, &cfg.delays, l_cnot, l_g)?;
    let (nodes, edges, critical) = (summary.node_count, summary.edge_count, summary.critical);
    let latency_us = critical.path_length;

    Ok(EstimationResult {
        latency_us,
        latency_s: latency_us * 1e-6,
        qubit_count: c.qubit_count(),
        operation_count: c.len(),
        qodg_nodes: nodes,
        qodg_edges: edges,
        l_cnot_avg: l_cnot,
        l_g_avg: l_g,
        d_uncong: routing.as_ref().map_or(0.0, |r| r.d_uncong),
        average_zone_area: routing.as_ref().map(|r| r.average_zone_area),
        zone_side: routing.as_ref().map(|r| r.grid.side),
        zone_clamped: routing.as_ref().is_some_and(|r| r.grid.clamped),
        q_max: cfg.q_max,
        path_factor: cfg.path_factor,
        critical,
        per_q: routing.map(|r| r.per_q).unwrap_or_default(),
    })
}
