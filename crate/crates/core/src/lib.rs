//! Latency estimation for quantum circuits on tiled quantum architectures.
//!
//! The pipeline turns a synthesized reversible circuit into fault-tolerant
//! operations ([`circuit`]), builds its dependency graph ([`qodg`]) and
//! interaction graph ([`iig`]), and estimates the mapped latency
//! analytically ([`estimator`]). A simple reference scheduler/placer/router
//! ([`mapper`]) supplies simulated latencies for calibration and checks.
//!
//! ```
//! use qlatency::{circuit, estimator, FabricConfig};
//!
//! let c = circuit::parse_netlist("qubits 1\nh q0\n").unwrap();
//! let r = estimator::estimate(&c, &FabricConfig::default()).unwrap();
//! assert_eq!(r.latency_us, 5640.0);
//! ```

pub mod circuit;
pub mod config;
pub mod estimator;
pub mod generate;
pub mod iig;
pub mod mapper;
pub mod qodg;
pub mod report;

pub use circuit::{Circuit, Gate, GateKind};
pub use config::{FabricConfig, GateDelays, PathFactor};
pub use estimator::{estimate, EstimationResult};
pub use mapper::{simulate, MappingResult};
