//! Reference scheduler/placer/router on the tiled architecture.
//!
//! A deliberately simple, deterministic baseline that produces "actual"
//! latencies to compare estimates against:
//!
//! * qubits start on distinct ULBs chosen uniformly at random (seeded);
//! * ready operations are dispatched earliest-ready first (ties by id);
//! * a one-qubit operation runs in its qubit's ULB, or the nearest idle ULB
//!   when that one is busy;
//! * a CNOT moves both operands to the Manhattan midpoint of their ULBs
//!   (ties toward smaller coordinates, nearest idle ULB on conflict);
//! * every hop between neighbouring ULBs takes `T_move` and occupies one
//!   channel segment; a segment carries at most `N_c` qubits at once and
//!   later arrivals wait for a free slot.

mod calibrate;
mod channel;

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt::{self, Write as _};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, GateKind};
use crate::config::{ConfigError, FabricConfig};
use crate::qodg::{NodeOp, Qodg, QodgError};

pub use calibrate::{calibrate_speed, CalibrationError, SpeedCalibration, SPEED_RANGE};
use channel::Channel;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapperError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Graph(#[from] QodgError),
    #[error("{qubits} qubits do not fit on a {width}x{length} fabric")]
    FabricTooSmall {
        qubits: usize,
        width: usize,
        length: usize,
    },
    #[error("placement lists {found} positions for {expected} qubits")]
    PlacementSize { expected: usize, found: usize },
    #[error("placement position {0:?} is off the fabric or shared")]
    BadPlacement(Ulb),
}

/// ULB coordinate, 0-indexed `(x, y)` with `x < width`, `y < length`.
pub type Ulb = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OpTiming {
    pub start: f64,
    pub finish: f64,
    pub ulb: Ulb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TraceKind {
    Hop,
    Start,
    Finish,
}

impl fmt::Display for TraceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceKind::Hop => "hop",
            TraceKind::Start => "start",
            TraceKind::Finish => "finish",
        })
    }
}

/// One simulator event. For hops `subject` is the qubit and `time` the
/// moment it enters segment `from -> to`; for start/finish it is the
/// operation index and `from == to` is the ULB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEvent {
    pub time: f64,
    pub kind: TraceKind,
    pub subject: usize,
    pub from: Ulb,
    pub to: Ulb,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MappingResult {
    /// Simulated latency, microseconds: the latest operation finish.
    pub latency_us: f64,
    /// Indexed like the circuit's gates.
    pub ops: Vec<OpTiming>,
    pub total_hops: u64,
    /// Longest line of qubits observed waiting for one channel segment.
    pub max_channel_queue: usize,
    #[serde(skip)]
    pub trace: Option<Vec<TraceEvent>>,
}

impl MappingResult {
    /// `time,event,subject,location` rows.
    pub fn trace_csv(&self) -> Option<String> {
        let trace = self.trace.as_ref()?;
        let mut out = String::from("time,event,subject,location\n");
        for e in trace {
            let loc = if e.kind == TraceKind::Hop {
                format!("{}:{}->{}:{}", e.from.0, e.from.1, e.to.0, e.to.1)
            } else {
                format!("{}:{}", e.from.0, e.from.1)
            };
            let _ = writeln!(out, "{},{},{},{}", e.time, e.kind, e.subject, loc);
        }
        Some(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Time(f64);

impl Eq for Time {}

impl PartialOrd for Time {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Time {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Seeded random placement on distinct ULBs.
pub fn random_placement(qubits: usize, width: usize, length: usize, seed: u64) -> Result<Vec<Ulb>, MapperError> {
    if qubits > width * length {
        return Err(MapperError::FabricTooSmall { qubits, width, length });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample(&mut rng, width * length, qubits)
        .into_iter()
        .map(|cell| (cell / length, cell % length))
        .collect())
}

/// Simulates `c` from a seeded random initial placement.
pub fn simulate(c: &Circuit, cfg: &FabricConfig, seed: u64) -> Result<MappingResult, MapperError> {
    cfg.validate()?;
    let placement = random_placement(c.qubit_count(), cfg.width, cfg.length, seed)?;
    Simulator::new(c, cfg, placement, false)?.run()
}

/// Like [`simulate`] but with an explicit initial placement and an optional
/// event trace.
pub fn simulate_with_placement(
    c: &Circuit,
    cfg: &FabricConfig,
    placement: Vec<Ulb>,
    trace: bool,
) -> Result<MappingResult, MapperError> {
    cfg.validate()?;
    Simulator::new(c, cfg, placement, trace)?.run()
}

struct Simulator<'a> {
    cfg: &'a FabricConfig,
    qodg: Qodg,
    position: Vec<Ulb>,
    ulb_busy_until: Vec<f64>,
    /// Horizontal segments `(x, y) - (x + 1, y)` first, then vertical ones.
    channels: Vec<Channel>,
    ops: Vec<OpTiming>,
    total_hops: u64,
    max_queue: usize,
    trace: Option<Vec<TraceEvent>>,
    /// Ready time of the operation being dispatched; never decreases.
    now: f64,
}

impl<'a> Simulator<'a> {
    fn new(c: &Circuit, cfg: &'a FabricConfig, placement: Vec<Ulb>, trace: bool) -> Result<Self, MapperError> {
        let (w, l) = (cfg.width, cfg.length);
        if c.qubit_count() > w * l {
            return Err(MapperError::FabricTooSmall {
                qubits: c.qubit_count(),
                width: w,
                length: l,
            });
        }
        if placement.len() != c.qubit_count() {
            return Err(MapperError::PlacementSize {
                expected: c.qubit_count(),
                found: placement.len(),
            });
        }
        let mut seen = vec![false; w * l];
        for &p in &placement {
            if p.0 >= w || p.1 >= l || std::mem::replace(&mut seen[p.0 * l + p.1], true) {
                return Err(MapperError::BadPlacement(p));
            }
        }
        let segments = (w - 1) * l + w * (l - 1);
        Ok(Simulator {
            cfg,
            qodg: Qodg::build(c)?,
            position: placement,
            ulb_busy_until: vec![0.0; w * l],
            channels: vec![Channel::default(); segments],
            ops: vec![
                OpTiming {
                    start: 0.0,
                    finish: 0.0,
                    ulb: (0, 0)
                };
                c.len()
            ],
            total_hops: 0,
            max_queue: 0,
            trace: trace.then(Vec::new),
            now: 0.0,
        })
    }

    fn ulb_index(&self, u: Ulb) -> usize {
        u.0 * self.cfg.length + u.1
    }

    fn segment(&self, a: Ulb, b: Ulb) -> usize {
        let (w, l) = (self.cfg.width, self.cfg.length);
        if a.1 == b.1 {
            let x = a.0.min(b.0);
            x * l + a.1
        } else {
            let y = a.1.min(b.1);
            (w - 1) * l + a.0 * (l - 1) + y
        }
    }

    /// Nearest ULB to `center` idle at time `t`, scanning rings of growing
    /// Manhattan radius in ascending `(x, y)` order. Falls back to `center`.
    fn nearest_idle(&self, center: Ulb, t: f64) -> Ulb {
        if self.ulb_busy_until[self.ulb_index(center)] <= t {
            return center;
        }
        let (w, l) = (self.cfg.width as isize, self.cfg.length as isize);
        let (cx, cy) = (center.0 as isize, center.1 as isize);
        for r in 1..(w + l) {
            for x in (cx - r).max(0)..=(cx + r).min(w - 1) {
                let dy = r - (x - cx).abs();
                let ys = if dy == 0 { [cy, -1] } else { [cy - dy, cy + dy] };
                for y in ys {
                    if (0..l).contains(&y) {
                        let u = (x as usize, y as usize);
                        if self.ulb_busy_until[self.ulb_index(u)] <= t {
                            return u;
                        }
                    }
                }
            }
        }
        center
    }

    /// Moves `qubit` to `dest` along X then Y, starting at `t`. Returns the
    /// arrival time.
    fn route(&mut self, qubit: usize, dest: Ulb, mut t: f64) -> f64 {
        let mut cur = self.position[qubit];
        let t_move = self.cfg.t_move;
        let cap = self.cfg.channel_capacity;
        while cur != dest {
            let next = if cur.0 != dest.0 {
                (if dest.0 > cur.0 { cur.0 + 1 } else { cur.0 - 1 }, cur.1)
            } else {
                (cur.0, if dest.1 > cur.1 { cur.1 + 1 } else { cur.1 - 1 })
            };
            let seg = self.segment(cur, next);
            let (enter, waiting) = self.channels[seg].reserve(self.now, t, t_move, cap);
            self.max_queue = self.max_queue.max(waiting);
            if let Some(tr) = self.trace.as_mut() {
                tr.push(TraceEvent {
                    time: enter,
                    kind: TraceKind::Hop,
                    subject: qubit,
                    from: cur,
                    to: next,
                });
            }
            t = enter + t_move;
            cur = next;
            self.total_hops += 1;
        }
        self.position[qubit] = dest;
        t
    }

    fn execute(&mut self, op: usize, kind: GateKind, operands: &[usize], ready: f64) -> f64 {
        let target = match kind {
            GateKind::Cnot => {
                let (a, b) = (self.position[operands[0]], self.position[operands[1]]);
                let mid = ((a.0 + b.0) / 2, (a.1 + b.1) / 2);
                self.nearest_idle(mid, ready)
            }
            _ => self.nearest_idle(self.position[operands[0]], ready),
        };
        let mut arrive = ready;
        for &q in operands {
            arrive = arrive.max(self.route(q, target, ready));
        }
        let idx = self.ulb_index(target);
        let start = arrive.max(self.ulb_busy_until[idx]);
        let delay = self.cfg.delays.get(kind).expect("FT circuit");
        let finish = start + delay;
        self.ulb_busy_until[idx] = finish;
        self.ops[op] = OpTiming {
            start,
            finish,
            ulb: target,
        };
        if let Some(tr) = self.trace.as_mut() {
            for (time, kind) in [(start, TraceKind::Start), (finish, TraceKind::Finish)] {
                tr.push(TraceEvent {
                    time,
                    kind,
                    subject: op,
                    from: target,
                    to: target,
                });
            }
        }
        finish
    }

    fn run(mut self) -> Result<MappingResult, MapperError> {
        let n = self.qodg.node_count();
        let start = self.qodg.start();
        let mut pending: Vec<usize> = (0..n).map(|v| self.qodg.predecessors(v).len()).collect();
        let mut ready_at = vec![0.0f64; n];
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((Time(0.0), start)));
        let mut latency = 0.0f64;

        while let Some(Reverse((Time(ready), node))) = heap.pop() {
            self.now = ready;
            let finish = match self.qodg.nodes()[node].op {
                NodeOp::Start | NodeOp::End => ready,
                NodeOp::Gate(kind) => {
                    let operands = self.qodg.nodes()[node].operands.clone();
                    self.execute(node - 1, kind, &operands, ready)
                }
            };
            latency = latency.max(finish);
            for i in 0..self.qodg.successors(node).len() {
                let s = self.qodg.successors(node)[i];
                ready_at[s] = ready_at[s].max(finish);
                pending[s] -= 1;
                if pending[s] == 0 {
                    heap.push(Reverse((Time(ready_at[s]), s)));
                }
            }
        }

        if let Some(tr) = self.trace.as_mut() {
            tr.sort_by(|a, b| a.time.total_cmp(&b.time));
        }
        Ok(MappingResult {
            latency_us: latency,
            ops: self.ops,
            total_hops: self.total_hops,
            max_channel_queue: self.max_queue,
            trace: self.trace,
        })
    }
}
