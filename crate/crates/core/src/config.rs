//! Fabric and technology parameters.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::GateKind;

/// Per-operation delays in microseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateDelays {
    pub cnot: f64,
    pub h: f64,
    pub t: f64,
    pub tdag: f64,
    /// Not part of the published ion-trap parameter table; defaults to the
    /// Pauli delay.
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Default for GateDelays {
    fn default() -> Self {
        GateDelays {
            cnot: 4930.0,
            h: 5440.0,
            t: 10940.0,
            tdag: 10940.0,
            s: 5240.0,
            x: 5240.0,
            y: 5240.0,
            z: 5240.0,
        }
    }
}

impl GateDelays {
    /// Delay of an FT operation; `None` for gates that must be lowered first.
    pub fn get(&self, kind: GateKind) -> Option<f64> {
        Some(match kind {
            GateKind::Cnot => self.cnot,
            GateKind::H => self.h,
            GateKind::T => self.t,
            GateKind::Tdag => self.tdag,
            GateKind::S => self.s,
            GateKind::X => self.x,
            GateKind::Y => self.y,
            GateKind::Z => self.z,
            _ => return None,
        })
    }

    fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> {
        [
            ("d_CNOT", self.cnot),
            ("d_H", self.h),
            ("d_T", self.t),
            ("d_TDAG", self.tdag),
            ("d_S", self.s),
            ("d_X", self.x),
            ("d_Y", self.y),
            ("d_Z", self.z),
        ]
        .into_iter()
    }
}

/// Length factor turning an expected tour into an expected open path over
/// `M + 1` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathFactor {
    /// `(M - 1) / M`.
    #[default]
    Standard,
    /// `M / (M + 1)`: a path over `M + 1` points has `M` edges, a tour `M + 1`.
    Corrected,
}

impl PathFactor {
    pub fn factor(self, degree: usize) -> f64 {
        let m = degree as f64;
        match self {
            PathFactor::Standard => (m - 1.0) / m,
            PathFactor::Corrected => m / (m + 1.0),
        }
    }
}

impl std::str::FromStr for PathFactor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(PathFactor::Standard),
            "corrected" => Ok(PathFactor::Corrected),
            other => Err(format!("unknown path factor `{other}` (expected standard|corrected)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("fabric must be at least 1x1, got {0}x{1}")]
    Fabric(usize, usize),
    #[error("channel capacity must be at least 1")]
    ChannelCapacity,
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("q_max must be at least 1")]
    QMax,
}

/// Tiled-architecture description. Defaults are the ion-trap TQA
/// parameters (60x60 fabric, N_c = 5, v = 0.001, T_move = 100 us).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FabricConfig {
    /// Fabric width `a` in ULBs.
    pub width: usize,
    /// Fabric length `b` in ULBs.
    pub length: usize,
    /// Qubits a routing channel carries before it congests.
    pub channel_capacity: usize,
    /// Qubit routing speed, ULB per microsecond.
    pub speed: f64,
    /// Microseconds for one hop to a neighbouring ULB, channel or crossbar.
    pub t_move: f64,
    pub delays: GateDelays,
    /// Highest occupancy order `q` evaluated in the coverage sum.
    pub q_max: usize,
    pub path_factor: PathFactor,
}

impl Default for FabricConfig {
    fn default() -> Self {
        FabricConfig {
            width: 60,
            length: 60,
            channel_capacity: 5,
            speed: 0.001,
            t_move: 100.0,
            delays: GateDelays::default(),
            q_max: 20,
            path_factor: PathFactor::Standard,
        }
    }
}

impl FabricConfig {
    pub fn with_fabric(mut self, width: usize, length: usize) -> Self {
        self.width = width;
        self.length = length;
        self
    }

    pub fn area(&self) -> usize {
        self.width * self.length
    }

    /// Empirical one-qubit routing latency: two neighbour hops.
    pub fn l_g_avg(&self) -> f64 {
        2.0 * self.t_move
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.width == 0 || self.length == 0 {
            return Err(ConfigError::Fabric(self.width, self.length));
        }
        if self.channel_capacity == 0 {
            return Err(ConfigError::ChannelCapacity);
        }
        if self.q_max == 0 {
            return Err(ConfigError::QMax);
        }
        let scalars = [("v", self.speed), ("T_move", self.t_move)];
        for (name, value) in scalars.into_iter().chain(self.delays.iter()) {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ConfigError::NonPositive { name, value });
            }
        }
        Ok(())
    }
}
