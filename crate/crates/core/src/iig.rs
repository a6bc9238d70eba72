//! Interaction intensity graph and presence-zone statistics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, GateKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IigError {
    #[error("circuit has no two-qubit operations")]
    NoInteractions,
}

/// Undirected qubit graph; `w(i, j)` counts the two-qubit operations
/// between `i` and `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iig {
    qubit_count: usize,
    /// Keyed by `(min, max)`.
    weights: BTreeMap<(usize, usize), u64>,
}

impl Iig {
    pub fn build(c: &Circuit) -> Self {
        // Packed (min, max) keys; sorting first keeps map insertions to one
        // per distinct pair.
        assert!(c.qubit_count() <= u32::MAX as usize, "qubit indices must fit in 32 bits");
        let mut keys: Vec<u64> = c
            .gates()
            .iter()
            .filter(|g| g.kind() == GateKind::Cnot)
            .map(|g| {
                let (a, b) = (g.operands()[0] as u64, g.operands()[1] as u64);
                a.min(b) << 32 | a.max(b)
            })
            .collect();
        keys.sort_unstable();
        let mut weights = BTreeMap::new();
        for run in keys.chunk_by(|x, y| x == y) {
            let key = ((run[0] >> 32) as usize, (run[0] & u32::MAX as u64) as usize);
            weights.insert(key, run.len() as u64);
        }
        Iig {
            qubit_count: c.qubit_count(),
            weights,
        }
    }

    /// Builds a graph directly from weighted edges; zero weights and
    /// self-loops are dropped.
    pub fn from_edges(qubit_count: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let mut weights = BTreeMap::new();
        for (a, b, w) in edges {
            assert!(a < qubit_count && b < qubit_count, "edge outside graph");
            if a != b && w > 0 {
                *weights.entry((a.min(b), a.max(b))).or_insert(0) += w;
            }
        }
        Iig {
            qubit_count,
            weights,
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.weights.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.weights.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    /// `M_i`: number of distinct interaction partners per qubit.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.qubit_count];
        for &(i, j) in self.weights.keys() {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// `W_i`: total weight of edges incident to each qubit.
    pub fn weight_sums(&self) -> Vec<u64> {
        let mut w = vec![0; self.qubit_count];
        for (&(i, j), &wt) in &self.weights {
            w[i] += wt;
            w[j] += wt;
        }
        w
    }

    /// `i j w` per line.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j, w) in self.edges() {
            let _ = writeln!(out, "{i} {j} {w}");
        }
        out
    }

    pub fn zone_stats(&self) -> Result<ZoneStats, IigError> {
        ZoneStats::from_iig(self)
    }
}

/// Presence-zone sizes. A qubit with `M_i` partners gets a square zone of
/// area `B_i = M_i + 1`; `B` is the interaction-weighted mean of `B_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZoneStats {
    pub degree: Vec<usize>,
    pub zone_area: Vec<u64>,
    pub weight_sum: Vec<u64>,
    /// `B` as an exact fraction `(numerator, denominator)`.
    pub average_area_ratio: (u128, u128),
}

impl ZoneStats {
    pub fn from_iig(g: &Iig) -> Result<Self, IigError> {
        let degree = g.degrees();
        let weight_sum = g.weight_sums();
        let zone_area: Vec<u64> = degree.iter().map(|&m| m as u64 + 1).collect();
        let den: u128 = weight_sum.iter().map(|&w| w as u128).sum();
        if den == 0 {
            return Err(IigError::NoInteractions);
        }
        let num: u128 = weight_sum
            .iter()
            .zip(&zone_area)
            .map(|(&w, &b)| w as u128 * b as u128)
            .sum();
        Ok(ZoneStats {
            degree,
            zone_area,
            weight_sum,
            average_area_ratio: (num, den),
        })
    }

    /// `B` in ULB².
    pub fn average_area(&self) -> f64 {
        let (n, d) = self.average_area_ratio;
        n as f64 / d as f64
    }
}
