//! Quantum operation dependency graph.
//!
//! Nodes are FT operations plus a dummy START (id 0) and END node; an edge
//! `u -> v` means `v` consumes a qubit last touched by `u`. Parallel edges
//! are merged so the graph stays simple. Delays live on nodes.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, GateKind};
use crate::config::GateDelays;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeOp {
    Start,
    End,
    Gate(GateKind),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QodgNode {
    pub op: NodeOp,
    pub operands: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QodgError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("graph contains a cycle")]
    Cycle,
    #[error("edge {0} -> {1} references a missing node")]
    DanglingEdge(NodeId, NodeId),
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("no delay configured for {0}")]
    MissingDelay(GateKind),
    #[error("routing latency must be non-negative, got {0}")]
    NegativeLatency(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Qodg {
    nodes: Vec<QodgNode>,
    succs: Vec<Vec<NodeId>>,
    preds: Vec<Vec<NodeId>>,
    start: NodeId,
    end: NodeId,
    delay: Vec<f64>,
}

/// Per-kind operation counts along one maximal START -> END path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalCounts {
    pub cnot: usize,
    /// Keyed by one-qubit mnemonic (`h`, `t`, ...).
    pub one_qubit: BTreeMap<String, usize>,
    /// Path length in microseconds.
    pub path_length: f64,
    #[serde(skip)]
    pub path: Vec<NodeId>,
}

impl CriticalCounts {
    fn tally(kinds: impl Iterator<Item = GateKind>, path_length: f64, path: Vec<NodeId>) -> Self {
        let mut counts = CriticalCounts {
            cnot: 0,
            one_qubit: BTreeMap::new(),
            path_length,
            path,
        };
        for k in kinds {
            match k {
                GateKind::Cnot => counts.cnot += 1,
                k => *counts.one_qubit.entry(k.mnemonic().to_string()).or_default() += 1,
            }
        }
        counts
    }

    pub fn operations(&self) -> usize {
        self.cnot + self.one_qubit.values().sum::<usize>()
    }

    pub fn count(&self, kind: GateKind) -> usize {
        match kind {
            GateKind::Cnot => self.cnot,
            k => self.one_qubit.get(k.mnemonic()).copied().unwrap_or(0),
        }
    }
}

fn push_unique(list: &mut Vec<NodeId>, v: NodeId) -> bool {
    if list.contains(&v) {
        false
    } else {
        list.push(v);
        true
    }
}

impl Qodg {
    /// Builds the graph by per-qubit last-writer chaining.
    pub fn build(c: &Circuit) -> Result<Self, QodgError> {
        c.ensure_fault_tolerant()?;
        let n = c.len() + 2;
        let start = 0;
        let end = n - 1;
        let mut nodes = Vec::with_capacity(n);
        nodes.push(QodgNode {
            op: NodeOp::Start,
            operands: Vec::new(),
        });
        let mut succs = vec![Vec::new(); n];
        let mut preds = vec![Vec::new(); n];
        let mut last: Vec<Option<NodeId>> = vec![None; c.qubit_count()];

        for (i, g) in c.gates().iter().enumerate() {
            let id = i + 1;
            nodes.push(QodgNode {
                op: NodeOp::Gate(g.kind()),
                operands: g.operands().to_vec(),
            });
            for &q in g.operands() {
                let from = last[q].unwrap_or(start);
                if push_unique(&mut preds[id], from) {
                    succs[from].push(id);
                }
                last[q] = Some(id);
            }
        }
        nodes.push(QodgNode {
            op: NodeOp::End,
            operands: Vec::new(),
        });
        for from in last.into_iter().flatten() {
            if push_unique(&mut preds[end], from) {
                succs[from].push(end);
            }
        }
        Ok(Qodg {
            nodes,
            succs,
            preds,
            start,
            end,
            delay: vec![0.0; n],
        })
    }

    /// Builds a graph from explicit parts. Node ids need not be in
    /// topological order; parallel edges are merged.
    pub fn from_edges(
        nodes: Vec<QodgNode>,
        edges: &[(NodeId, NodeId)],
        delay: Vec<f64>,
    ) -> Result<Self, QodgError> {
        let n = nodes.len();
        assert_eq!(delay.len(), n, "one delay per node");
        let find = |op: NodeOp| nodes.iter().position(|nd| nd.op == op);
        let start = find(NodeOp::Start).expect("graph needs a START node");
        let end = find(NodeOp::End).expect("graph needs an END node");
        let mut succs = vec![Vec::new(); n];
        let mut preds = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(QodgError::DanglingEdge(u, v));
            }
            if u == v {
                return Err(QodgError::SelfLoop(u));
            }
            if push_unique(&mut succs[u], v) {
                preds[v].push(u);
            }
        }
        let g = Qodg {
            nodes,
            succs,
            preds,
            start,
            end,
            delay,
        };
        g.topological_order()?;
        Ok(g)
    }

    pub fn nodes(&self) -> &[QodgNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succs.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.succs
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn successors(&self, id: NodeId) -> &[NodeId] {
        &self.succs[id]
    }

    pub fn predecessors(&self, id: NodeId) -> &[NodeId] {
        &self.preds[id]
    }

    pub fn start(&self) -> NodeId {
        self.start
    }

    pub fn end(&self) -> NodeId {
        self.end
    }

    pub fn delay(&self, id: NodeId) -> f64 {
        self.delay[id]
    }

    pub fn delays(&self) -> &[f64] {
        &self.delay
    }

    /// Attaches node delays: gate delay plus the average routing latency of
    /// its class (CNOT or one-qubit). START and END get zero.
    pub fn with_delays(
        mut self,
        delays: &GateDelays,
        l_cnot_avg: f64,
        l_g_avg: f64,
    ) -> Result<Self, QodgError> {
        for l in [l_cnot_avg, l_g_avg] {
            if !(l >= 0.0) {
                return Err(QodgError::NegativeLatency(l));
            }
        }
        for (node, d) in self.nodes.iter().zip(self.delay.iter_mut()) {
            *d = match node.op {
                NodeOp::Start | NodeOp::End => 0.0,
                NodeOp::Gate(k) => {
                    let base = delays.get(k).ok_or(QodgError::MissingDelay(k))?;
                    base + if k == GateKind::Cnot { l_cnot_avg } else { l_g_avg }
                }
            };
        }
        Ok(self)
    }

    /// Kahn's algorithm; fails on a cycle.
    pub fn topological_order(&self) -> Result<Vec<NodeId>, QodgError> {
        let n = self.nodes.len();
        let mut indeg: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut queue: VecDeque<NodeId> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.succs[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(QodgError::Cycle)
        }
    }

    /// Longest START -> END path by summed node delays.
    ///
    /// Among equal-length maximal paths the one chosen is the smallest
    /// predecessor id at each backtracking step from END.
    pub fn critical_path(&self) -> Result<CriticalCounts, QodgError> {
        let order = self.topological_order()?;
        let n = self.nodes.len();
        // Longest distance from START, inclusive of the node's own delay.
        let mut dist = vec![f64::NEG_INFINITY; n];
        dist[self.start] = self.delay[self.start];
        for &u in &order {
            if dist[u] == f64::NEG_INFINITY {
                continue;
            }
            for &v in &self.succs[u] {
                let cand = dist[u] + self.delay[v];
                if cand > dist[v] {
                    dist[v] = cand;
                }
            }
        }

        let mut path = vec![self.end];
        let path_length = if dist[self.end] == f64::NEG_INFINITY {
            // END unreachable: only possible for a gate-free circuit.
            path.push(self.start);
            0.0
        } else {
            let mut cur = self.end;
            while cur != self.start {
                // Same expression as the forward pass, so equality is exact.
                let prev = self.preds[cur]
                    .iter()
                    .copied()
                    .filter(|&p| dist[p] + self.delay[cur] == dist[cur])
                    .min()
                    .expect("a reachable node has a predecessor on a longest path");
                path.push(prev);
                cur = prev;
            }
            dist[self.end]
        };
        path.reverse();

        let kinds: Vec<GateKind> = path
            .iter()
            .filter_map(|&id| match self.nodes[id].op {
                NodeOp::Gate(k) => Some(k),
                _ => None,
            })
            .collect();
        Ok(CriticalCounts::tally(kinds.into_iter(), path_length, path))
    }

    /// Graphviz dump; nodes and edges of `highlight` are drawn in red.
    pub fn to_dot(&self, highlight: Option<&[NodeId]>) -> String {
        let on_path = |id: NodeId| highlight.is_some_and(|p| p.contains(&id));
        let on_edge = |u: NodeId, v: NodeId| highlight.is_some_and(|p| p.windows(2).any(|w| w == [u, v]));
        let mut out = String::from("digraph qodg {\n  rankdir=LR;\n");
        for (id, node) in self.nodes.iter().enumerate() {
            let label = match node.op {
                NodeOp::Start => "start".to_string(),
                NodeOp::End => "end".to_string(),
                NodeOp::Gate(k) => {
                    let ops: Vec<String> = node.operands.iter().map(|q| format!("q{q}")).collect();
                    format!("{id}: {k} {}", ops.join(","))
                }
            };
            let color = if on_path(id) { ", color=red" } else { "" };
            let _ = writeln!(out, "  n{id} [label=\"{label}\"{color}];");
        }
        for (u, v) in self.edges() {
            let color = if on_edge(u, v) { " [color=red]" } else { "" };
            let _ = writeln!(out, "  n{u} -> n{v}{color};");
        }
        out.push_str("}\n");
        out
    }
}

/// Size and critical path of a circuit's dependency graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSummary {
    pub node_count: usize,
    pub edge_count: usize,
    pub critical: CriticalCounts,
}

/// Same result as `Qodg::build(c)?.with_delays(..)?.critical_path()`,
/// tie-breaking included, computed in one pass over the gate list without
/// materialising the graph. Gates are already in topological order, so the
/// distance of a gate is fixed once its operands' last writers are known.
pub fn summarize(
    c: &Circuit,
    delays: &GateDelays,
    l_cnot_avg: f64,
    l_g_avg: f64,
) -> Result<GraphSummary, QodgError> {
    c.ensure_fault_tolerant()?;
    for l in [l_cnot_avg, l_g_avg] {
        if !(l >= 0.0) {
            return Err(QodgError::NegativeLatency(l));
        }
    }
    // Indexed like ONE_QUBIT_FT, CNOT last.
    let mut kind_delay = [None; 8];
    for (slot, kind) in kind_delay.iter_mut().zip(GateKind::ONE_QUBIT_FT.into_iter().chain([GateKind::Cnot])) {
        let routing = if kind == GateKind::Cnot { l_cnot_avg } else { l_g_avg };
        *slot = delays.get(kind).map(|base| base + routing);
    }
    let slot = |k: GateKind| match k {
        GateKind::Cnot => 7,
        k => GateKind::ONE_QUBIT_FT.iter().position(|&f| f == k).expect("circuit is fault tolerant"),
    };

    let n = c.len() + 2;
    let end = n - 1;
    // dist[0] is START.
    let mut dist = vec![0.0f64; n - 1];
    let mut parent = vec![0u32; n - 1];
    let mut last = vec![0usize; c.qubit_count()];
    let mut edges = 0;
    for (i, g) in c.gates().iter().enumerate() {
        let id = i + 1;
        let delay = kind_delay[slot(g.kind())].ok_or(QodgError::MissingDelay(g.kind()))?;
        let ops = g.operands();
        let preds = [last[ops[0]], last[*ops.last().expect("gates have operands")]];
        let distinct = if preds[0] == preds[1] { 1 } else { 2 };
        edges += distinct;
        let best = dist[preds[0]].max(dist[preds[1]]) + delay;
        dist[id] = best;
        parent[id] = pick(&preds[..distinct], &dist, delay, best) as u32;
        for &q in ops {
            last[q] = id;
        }
    }

    let mut writers: Vec<usize> = last.into_iter().filter(|&w| w != 0).collect();
    writers.sort_unstable();
    writers.dedup();
    edges += writers.len();
    let mut path = vec![end];
    let path_length = if writers.is_empty() {
        path.push(0);
        0.0
    } else {
        let best = writers.iter().map(|&w| dist[w]).fold(f64::NEG_INFINITY, f64::max);
        let mut cur = pick(&writers, &dist, 0.0, best);
        while cur != 0 {
            path.push(cur);
            cur = parent[cur] as usize;
        }
        path.push(0);
        best
    };
    path.reverse();
    let kinds = path[1..path.len() - 1].iter().map(|&id| c.gates()[id - 1].kind());
    let critical = CriticalCounts::tally(kinds.collect::<Vec<_>>().into_iter(), path_length, path);
    Ok(GraphSummary {
        node_count: n,
        edge_count: edges,
        critical,
    })
}

/// Smallest predecessor whose distance plus `delay` reproduces `target`.
fn pick(preds: &[NodeId], dist: &[f64], delay: f64, target: f64) -> NodeId {
    preds
        .iter()
        .copied()
        .filter(|&p| dist[p] + delay == target)
        .min()
        .expect("the maximum is attained by some predecessor")
}
