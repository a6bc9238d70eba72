//! Fitting the routing speed `v` of the estimator to the reference mapper.

use thiserror::Error;

use super::{simulate, MapperError};
use crate::circuit::Circuit;
use crate::config::FabricConfig;
use crate::estimator::{estimate, EstimateError};
use crate::report::mean_abs_relative_error;

/// Search interval for `v`, ULB per microsecond.
pub const SPEED_RANGE: (f64, f64) = (1e-5, 1e-1);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalibrationError {
    #[error("no training circuits")]
    Empty,
    #[error("estimates do not depend on v for this training set (no routed CNOTs)")]
    Degenerate,
    #[error(transparent)]
    Estimate(#[from] EstimateError),
    #[error(transparent)]
    Mapper(#[from] MapperError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpeedCalibration {
    pub speed: f64,
    /// Mean absolute relative error at `speed` on the training set.
    pub training_error: f64,
    /// Simulated latencies of the training circuits, microseconds.
    pub simulated: Vec<f64>,
    pub evaluations: usize,
}

/// Picks `v` minimising the mean absolute relative error between estimated
/// and simulated latency, by golden-section search on `ln v` over
/// [`SPEED_RANGE`]. Each circuit is simulated once with `seed + index`.
pub fn calibrate_speed(
    training: &[Circuit],
    cfg: &FabricConfig,
    seed: u64,
) -> Result<SpeedCalibration, CalibrationError> {
    if training.is_empty() {
        return Err(CalibrationError::Empty);
    }
    let simulated = training
        .iter()
        .enumerate()
        .map(|(i, c)| simulate(c, cfg, seed.wrapping_add(i as u64)).map(|r| r.latency_us))
        .collect::<Result<Vec<_>, _>>()?;

    let mut evaluations = 0;
    let mut objective = |log_v: f64| -> Result<f64, CalibrationError> {
        evaluations += 1;
        let mut trial = cfg.clone();
        trial.speed = log_v.exp();
        let est = training
            .iter()
            .map(|c| estimate(c, &trial).map(|r| r.latency_us))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(mean_abs_relative_error(&est, &simulated))
    };

    let (mut lo, mut hi) = (SPEED_RANGE.0.ln(), SPEED_RANGE.1.ln());
    let at_lo = objective(lo)?;
    let at_hi = objective(hi)?;
    if at_lo == at_hi {
        return Err(CalibrationError::Degenerate);
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    while hi - lo > 1e-6 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2)?;
        }
    }
    // The interval ends can beat the interior when the optimum sits on a bound.
    let mut best = ((lo + hi) / 2.0, objective((lo + hi) / 2.0)?);
    for cand in [(SPEED_RANGE.0.ln(), at_lo), (SPEED_RANGE.1.ln(), at_hi)] {
        if cand.1 < best.1 {
            best = cand;
        }
    }
    Ok(SpeedCalibration {
        speed: best.0.exp(),
        training_error: best.1,
        simulated,
        evaluations,
    })
}
