//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;
use qlatency::circuit::{Circuit, GateKind};
use qlatency::qodg::{NodeOp, QodgNode};
use rand::Rng;

pub type Matrix = Vec<Vec<Complex64>>;

fn one_qubit_matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    match kind {
        GateKind::X | GateKind::Not => [[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]],
        GateKind::Y => [[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]],
        GateKind::Z => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]],
        GateKind::H => [[c(h, 0.), c(h, 0.)], [c(h, 0.), c(-h, 0.)]],
        GateKind::S => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(0., 1.)]],
        GateKind::T => [[c(1., 0.), c(0., 0.)], [c(0., 0.), w]],
        GateKind::Tdag => [[c(1., 0.), c(0., 0.)], [c(0., 0.), w.conj()]],
        k => panic!("{k} is not a one-qubit gate"),
    }
}

/// Applies one gate to a state vector; qubit `q` is bit `q` of the index.
fn apply(state: &mut [Complex64], kind: GateKind, ops: &[usize]) {
    let n = state.len();
    let bit = |i: usize, q: usize| (i >> q) & 1 == 1;
    match kind {
        GateKind::Cnot => {
            let (c, t) = (ops[0], ops[1]);
            for i in 0..n {
                if bit(i, c) && !bit(i, t) {
                    state.swap(i, i | (1 << t));
                }
            }
        }
        GateKind::Toffoli { controls } => {
            let t = ops[controls];
            for i in 0..n {
                if ops[..controls].iter().all(|&q| bit(i, q)) && !bit(i, t) {
                    state.swap(i, i | (1 << t));
                }
            }
        }
        GateKind::Fredkin { controls } => {
            let (a, b) = (ops[controls], ops[controls + 1]);
            for i in 0..n {
                if ops[..controls].iter().all(|&q| bit(i, q)) && bit(i, a) && !bit(i, b) {
                    state.swap(i, (i & !(1 << a)) | (1 << b));
                }
            }
        }
        k => {
            let m = one_qubit_matrix(k);
            let q = ops[0];
            for i in 0..n {
                if !bit(i, q) {
                    let j = i | (1 << q);
                    let (a0, a1) = (state[i], state[j]);
                    state[i] = m[0][0] * a0 + m[0][1] * a1;
                    state[j] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
        }
    }
}

/// Full unitary of a circuit on `circuit.qubit_count()` qubits, column-major
/// by input basis state.
pub fn unitary(c: &Circuit) -> Matrix {
    let dim = 1usize << c.qubit_count();
    (0..dim)
        .map(|col| {
            let mut s = vec![Complex64::new(0.0, 0.0); dim];
            s[col] = Complex64::new(1.0, 0.0);
            for g in c.gates() {
                apply(&mut s, g.kind(), g.operands());
            }
            s
        })
        .collect()
}

/// Columns of `u` restricted to inputs whose bits at or above `keep` are
/// zero, and rows likewise; i.e. the action on states with clean ancillas.
pub fn restrict_clean(u: &Matrix, keep: usize) -> Matrix {
    let dim = 1usize << keep;
    u.iter().take(dim).map(|col| col[..dim].to_vec()).collect()
}

/// Largest entry-wise distance between `a` and `b` after removing a global
/// phase fitted on the largest entry of `b`.
pub fn distance_up_to_phase(a: &Matrix, b: &Matrix) -> f64 {
    let mut best = (0usize, 0usize, 0.0f64);
    for (i, col) in b.iter().enumerate() {
        for (j, v) in col.iter().enumerate() {
            if v.norm() > best.2 {
                best = (i, j, v.norm());
            }
        }
    }
    let phase = a[best.0][best.1] / b[best.0][best.1];
    let mut worst = (phase.norm() - 1.0).abs();
    for (ca, cb) in a.iter().zip(b) {
        for (x, y) in ca.iter().zip(cb) {
            worst = worst.max((x - phase * y).norm());
        }
    }
    worst
}

/// Classical action on a basis state of a reversible circuit.
pub fn classical(c: &Circuit, mut s: u64) -> u64 {
    let bit = |s: u64, q: usize| (s >> q) & 1 == 1;
    for g in c.gates() {
        let ops = g.operands();
        match g.kind() {
            GateKind::X | GateKind::Not => s ^= 1 << ops[0],
            GateKind::Cnot if bit(s, ops[0]) => s ^= 1 << ops[1],
            GateKind::Cnot => {}
            GateKind::Toffoli { controls } => {
                if ops[..controls].iter().all(|&q| bit(s, q)) {
                    s ^= 1 << ops[controls];
                }
            }
            GateKind::Fredkin { controls } => {
                let (a, b) = (ops[controls], ops[controls + 1]);
                if ops[..controls].iter().all(|&q| bit(s, q)) && bit(s, a) != bit(s, b) {
                    s ^= (1 << a) | (1 << b);
                }
            }
            k => panic!("{k} is not classical"),
        }
    }
    s
}

/// Random DAG with dummy START/END wired like a dependency graph: START
/// feeds every source, every sink feeds END. Node ids are shuffled so they
/// are not in topological order.
pub struct RandomDag {
    pub nodes: Vec<QodgNode>,
    pub edges: Vec<(usize, usize)>,
    pub delay: Vec<f64>,
    pub start: usize,
    pub end: usize,
}

pub fn random_dag(rng: &mut impl Rng, inner: usize, density: f64, integer_delays: bool) -> RandomDag {
    let n = inner + 2;
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    // Logical order 0 = START, 1..=inner gates, inner + 1 = END.
    let kinds = [GateKind::Cnot, GateKind::H, GateKind::T, GateKind::X];
    let mut nodes = vec![
        QodgNode {
            op: NodeOp::Start,
            operands: vec![]
        };
        n
    ];
    let mut delay = vec![0.0; n];
    for logical in 1..=inner {
        nodes[perm[logical]] = QodgNode {
            op: NodeOp::Gate(kinds[rng.gen_range(0..kinds.len())]),
            operands: vec![],
        };
        delay[perm[logical]] = if integer_delays {
            rng.gen_range(1..20) as f64
        } else {
            rng.gen_range(0.1..10.0)
        };
    }
    nodes[perm[0]] = QodgNode {
        op: NodeOp::Start,
        operands: vec![],
    };
    nodes[perm[n - 1]] = QodgNode {
        op: NodeOp::End,
        operands: vec![],
    };
    let mut edges = Vec::new();
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for a in 1..=inner {
        for b in a + 1..=inner {
            if rng.gen_bool(density) {
                edges.push((perm[a], perm[b]));
                has_out[a] = true;
                has_in[b] = true;
            }
        }
    }
    for v in 1..=inner {
        if !has_in[v] {
            edges.push((perm[0], perm[v]));
        }
        if !has_out[v] {
            edges.push((perm[v], perm[n - 1]));
        }
    }
    if inner == 0 {
        edges.push((perm[0], perm[n - 1]));
    }
    RandomDag {
        nodes,
        edges,
        delay,
        start: perm[0],
        end: perm[n - 1],
    }
}

/// Maximum START -> END path length by enumerating every path.
pub fn brute_force_longest(d: &RandomDag) -> f64 {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(u, v) in &d.edges {
        adj.entry(u).or_default().push(v);
    }
    fn walk(u: usize, end: usize, adj: &HashMap<usize, Vec<usize>>, delay: &[f64], acc: f64, best: &mut f64) {
        let acc = acc + delay[u];
        if u == end {
            *best = best.max(acc);
            return;
        }
        for &v in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            walk(v, end, adj, delay, acc, best);
        }
    }
    let mut best = f64::NEG_INFINITY;
    walk(d.start, d.end, &adj, &d.delay, 0.0, &mut best);
    best
}

/// Coverage probability by listing every placement of an `s x s` zone.
pub fn exhaustive_coverage(a: usize, b: usize, s: usize) -> Vec<f64> {
    let mut hits = vec![0u64; a * b];
    let mut placements = 0u64;
    for x0 in 0..=(a - s) {
        for y0 in 0..=(b - s) {
            placements += 1;
            for x in x0..x0 + s {
                for y in y0..y0 + s {
                    hits[x * b + y] += 1;
                }
            }
        }
    }
    hits.into_iter().map(|h| h as f64 / placements as f64).collect()
}

/// Monte Carlo mean and standard error of `S_q` for `q = 0..=zones`.
pub fn monte_carlo_coverage(
    rng: &mut impl Rng,
    a: usize,
    b: usize,
    s: usize,
    zones: usize,
    trials: usize,
) -> Vec<(f64, f64)> {
    let mut sum = vec![0.0; zones + 1];
    let mut sum_sq = vec![0.0; zones + 1];
    let mut count = vec![0usize; a * b];
    let mut hist = vec![0usize; zones + 1];
    for _ in 0..trials {
        count.iter_mut().for_each(|c| *c = 0);
        for _ in 0..zones {
            let x0 = rng.gen_range(0..=(a - s));
            let y0 = rng.gen_range(0..=(b - s));
            for x in x0..x0 + s {
                for y in y0..y0 + s {
                    count[x * b + y] += 1;
                }
            }
        }
        hist.iter_mut().for_each(|h| *h = 0);
        for &c in &count {
            hist[c] += 1;
        }
        for q in 0..=zones {
            let v = hist[q] as f64;
            sum[q] += v;
            sum_sq[q] += v * v;
        }
    }
    let n = trials as f64;
    (0..=zones)
        .map(|q| {
            let mean = sum[q] / n;
            let var = (sum_sq[q] / n - mean * mean).max(0.0) * n / (n - 1.0);
            (mean, (var / n).sqrt())
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}
