//! Fabric configuration from defaults, an optional config file and flags.

use std::path::Path;

use qlatency::{FabricConfig, PathFactor};
use serde::{Deserialize, Serialize};

use crate::args::FabricArgs;
use crate::CliError;

/// Flat key set of the config file. Every key is optional.
#[derive(Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct ConfigFile {
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub N_c: Option<usize>,
    pub v: Option<f64>,
    pub T_move: Option<f64>,
    pub d_CNOT: Option<f64>,
    pub d_H: Option<f64>,
    pub d_T: Option<f64>,
    pub d_TDAG: Option<f64>,
    pub d_S: Option<f64>,
    pub d_X: Option<f64>,
    pub d_Y: Option<f64>,
    pub d_Z: Option<f64>,
    pub q_max: Option<usize>,
    pub path_factor: Option<PathFactor>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn apply(&self, cfg: &mut FabricConfig) {
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        cfg.width = self.a.unwrap_or(cfg.width);
        cfg.length = self.b.unwrap_or(cfg.length);
        cfg.channel_capacity = self.N_c.unwrap_or(cfg.channel_capacity);
        cfg.q_max = self.q_max.unwrap_or(cfg.q_max);
        cfg.path_factor = self.path_factor.unwrap_or(cfg.path_factor);
        set(&mut cfg.speed, self.v);
        set(&mut cfg.t_move, self.T_move);
        let d = &mut cfg.delays;
        set(&mut d.cnot, self.d_CNOT);
        set(&mut d.h, self.d_H);
        set(&mut d.t, self.d_T);
        set(&mut d.tdag, self.d_TDAG);
        set(&mut d.s, self.d_S);
        set(&mut d.x, self.d_X);
        set(&mut d.y, self.d_Y);
        set(&mut d.z, self.d_Z);
    }

    /// Every key spelled out, for writing a complete file.
    pub fn from_config(cfg: &FabricConfig) -> Self {
        let d = cfg.delays;
        ConfigFile {
            a: Some(cfg.width),
            b: Some(cfg.length),
            N_c: Some(cfg.channel_capacity),
            v: Some(cfg.speed),
            T_move: Some(cfg.t_move),
            d_CNOT: Some(d.cnot),
            d_H: Some(d.h),
            d_T: Some(d.t),
            d_TDAG: Some(d.tdag),
            d_S: Some(d.s),
            d_X: Some(d.x),
            d_Y: Some(d.y),
            d_Z: Some(d.z),
            q_max: Some(cfg.q_max),
            path_factor: Some(cfg.path_factor),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config serializes")
    }
}

pub fn resolve(args: &FabricArgs) -> Result<FabricConfig, CliError> {
    let mut cfg = FabricConfig::default();
    if let Some(path) = &args.config {
        let text = read_config(path)?;
        ConfigFile::parse(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
            .apply(&mut cfg);
    }
    if let Some((a, b)) = args.fabric {
        cfg = cfg.with_fabric(a, b);
    }
    cfg.channel_capacity = args.capacity.unwrap_or(cfg.channel_capacity);
    cfg.speed = args.speed.unwrap_or(cfg.speed);
    cfg.t_move = args.t_move.unwrap_or(cfg.t_move);
    cfg.q_max = args.qmax.unwrap_or(cfg.q_max);
    cfg.path_factor = args.path_factor.unwrap_or(cfg.path_factor);
    cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(cfg)
}

fn read_config(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
