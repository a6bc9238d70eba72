//! Routing-latency model: uncongested in-zone travel and channel queueing.

use serde::Serialize;

use crate::config::{FabricConfig, PathFactor};
use crate::iig::ZoneStats;

/// Random-TSP tour length bounds for `n` uniform points in the unit square:
/// `slope * sqrt(n) + offset`.
pub const TOUR_LOWER_BOUND: (f64, f64) = (0.708, 0.551);
pub const TOUR_UPPER_BOUND: (f64, f64) = (0.718, 0.731);
/// Midpoint of the two bounds.
pub const TOUR_SLOPE: f64 = 0.713;
pub const TOUR_OFFSET: f64 = 0.641;

/// Expected shortest open path through `degree + 1` random points in a
/// zone of area `zone_area`, in ULB.
///
/// `degree` must be at least 1.
pub fn hamiltonian_estimate(degree: usize, zone_area: f64, factor: PathFactor) -> f64 {
    assert!(degree >= 1, "path estimate needs at least one partner");
    let points = (degree + 1) as f64;
    zone_area.sqrt() * (TOUR_SLOPE * points.sqrt() + TOUR_OFFSET) * factor.factor(degree)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncongestedDelay {
    /// `d_uncong,i` per qubit, `None` for qubits without partners.
    pub per_qubit: Vec<Option<f64>>,
    /// Interaction-weighted mean over interacting qubits, microseconds.
    pub average: f64,
}

/// Average in-zone routing latency with uncongested channels.
///
/// Returns `None` when no qubit has a partner.
pub fn uncongested_delay(zs: &ZoneStats, cfg: &FabricConfig) -> Option<UncongestedDelay> {
    let per_qubit: Vec<Option<f64>> = zs
        .degree
        .iter()
        .zip(&zs.zone_area)
        .map(|(&m, &b)| {
            (m >= 1).then(|| hamiltonian_estimate(m, b as f64, cfg.path_factor) / (cfg.speed * m as f64))
        })
        .collect();
    let mut num = 0.0;
    let mut den = 0.0;
    for (d, &w) in per_qubit.iter().zip(&zs.weight_sum) {
        if let Some(d) = d {
            num += w as f64 * d;
            den += w as f64;
        }
    }
    (den > 0.0).then(|| UncongestedDelay {
        per_qubit,
        average: num / den,
    })
}

/// M/M/1 view of a routing channel holding `q` qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueModel {
    pub capacity: usize,
    pub d_uncong: f64,
}

impl QueueModel {
    pub fn new(capacity: usize, d_uncong: f64) -> Self {
        assert!(capacity >= 1);
        QueueModel { capacity, d_uncong }
    }

    /// Service rate `mu = N_c / d_uncong`.
    pub fn service_rate(&self) -> f64 {
        self.capacity as f64 / self.d_uncong
    }

    /// Arrival rate that yields mean queue length `q`: `q N_c / ((1 + q) d_uncong)`.
    pub fn arrival_rate(&self, q: usize) -> f64 {
        let q = q as f64;
        q * self.capacity as f64 / ((1.0 + q) * self.d_uncong)
    }

    /// Mean queue length `lambda / (mu - lambda)` for arrival rate `lambda`.
    pub fn queue_length(&self, lambda: f64) -> f64 {
        lambda / (self.service_rate() - lambda)
    }

    /// Little's-law waiting time at occupancy `q`: `(1 + q) d_uncong / N_c`.
    pub fn waiting_time(&self, q: usize) -> f64 {
        (1.0 + q as f64) * self.d_uncong / self.capacity as f64
    }

    /// `d_q`: uncongested up to capacity, queueing delay beyond it.
    pub fn delay(&self, q: usize) -> f64 {
        if q <= self.capacity {
            self.d_uncong
        } else {
            self.waiting_time(q)
        }
    }
}

/// `d_q` for occupancy `q`.
pub fn queue_delay(q: usize, capacity: usize, d_uncong: f64) -> f64 {
    QueueModel::new(capacity, d_uncong).delay(q)
}

/// Coverage-weighted routing latency `sum E[S_q] d_q / sum E[S_q]` over the
/// supplied `(q, E[S_q])` terms. Zero when the coverage mass is zero.
pub fn l_cnot_avg(terms: &[(usize, f64)], capacity: usize, d_uncong: f64) -> f64 {
    let model = QueueModel::new(capacity, d_uncong);
    let mass: f64 = terms.iter().map(|&(_, e)| e).sum();
    if !(mass > 0.0) {
        log::warn!("coverage terms sum to zero; routing latency taken as 0");
        return 0.0;
    }
    terms.iter().map(|&(q, e)| e * model.delay(q)).sum::<f64>() / mass
}
