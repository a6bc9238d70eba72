//! Lowering to the fault-tolerant gate set.

use super::{Circuit, CircuitError, Gate, GateKind};

/// Runs the full pipeline: multi-control decomposition, Fredkin removal and
/// Toffoli expansion into Clifford+T.
pub fn lower(c: &Circuit) -> Circuit {
    let c = decompose_multicontrol(c);
    let c = fredkin_to_toffoli(&c).expect("decompose_multicontrol leaves arity <= 3");
    toffoli_to_ft(&c).expect("fredkin_to_toffoli leaves only FT gates and Toffolis")
}

/// Splits every Toffoli with more than two controls, and every Fredkin with
/// more than one, into a compute/uncompute chain of two-control Toffolis.
///
/// Each decomposed gate gets its own fresh ancillas (`n - 2` for an
/// `n`-control Toffoli, `n - 1` for an `n`-control Fredkin). Ancillas are
/// assumed to start in `|0>` and are returned to `|0>`.
pub fn decompose_multicontrol(c: &Circuit) -> Circuit {
    let mut qubit_count = c.qubit_count();
    let mut gates = Vec::with_capacity(c.len());
    let mut ancillas = 0usize;

    for g in c.gates() {
        let ops = g.operands();
        match g.kind() {
            GateKind::Toffoli { controls } if controls > 2 => {
                let (ctrl, target) = ops.split_at(controls);
                let chain = and_chain(ctrl, &mut qubit_count, controls - 2);
                ancillas += controls - 2;
                let last = *chain.last().expect("at least one ancilla");
                emit_chain(&mut gates, ctrl, &chain, Gate::toffoli(last, ctrl[controls - 1], target[0]));
            }
            GateKind::Fredkin { controls } if controls > 1 => {
                let (ctrl, swapped) = ops.split_at(controls);
                let chain = and_chain(ctrl, &mut qubit_count, controls - 1);
                ancillas += controls - 1;
                let last = *chain.last().expect("at least one ancilla");
                let swap = Gate::new(GateKind::Fredkin { controls: 1 }, vec![last, swapped[0], swapped[1]])
                    .expect("fresh ancilla is distinct");
                emit_chain(&mut gates, ctrl, &chain, swap);
            }
            _ => gates.push(g.clone()),
        }
    }

    let mut out = Circuit {
        qubit_count,
        gates,
        labels: None,
    };
    if let Some(labels) = c.labels() {
        let mut labels = labels.to_vec();
        labels.extend((0..ancillas).map(|k| format!("anc{k}")));
        out.labels = Some(labels);
    }
    out
}

/// Allocates `len` fresh ancillas for an AND chain over `ctrl`.
fn and_chain(ctrl: &[usize], qubit_count: &mut usize, len: usize) -> Vec<usize> {
    debug_assert!(len >= 1 && ctrl.len() >= len + 1);
    let chain: Vec<usize> = (*qubit_count..*qubit_count + len).collect();
    *qubit_count += len;
    chain
}

/// `chain[0] = c0 & c1`, `chain[k] = chain[k-1] & c[k+1]`, then `middle`,
/// then the compute steps in reverse.
fn emit_chain(gates: &mut Vec<Gate>, ctrl: &[usize], chain: &[usize], middle: Gate) {
    let compute: Vec<Gate> = chain
        .iter()
        .enumerate()
        .map(|(k, &anc)| {
            let left = if k == 0 { ctrl[0] } else { chain[k - 1] };
            Gate::toffoli(left, ctrl[k + 1], anc)
        })
        .collect();
    gates.extend(compute.iter().cloned());
    gates.push(middle);
    gates.extend(compute.into_iter().rev());
}

/// Replaces each single-control Fredkin `(c; a, b)` by three Toffolis:
/// `(c, a; b) (c, b; a) (c, a; b)`.
pub fn fredkin_to_toffoli(c: &Circuit) -> Result<Circuit, CircuitError> {
    let mut gates = Vec::with_capacity(c.len());
    for g in c.gates() {
        match g.kind() {
            GateKind::Fredkin { controls: 1 } => {
                let [ctl, a, b] = g.operands() else {
                    unreachable!("arity checked at construction")
                };
                gates.push(Gate::toffoli(*ctl, *a, *b));
                gates.push(Gate::toffoli(*ctl, *b, *a));
                gates.push(Gate::toffoli(*ctl, *a, *b));
            }
            kind @ GateKind::Fredkin { .. } => {
                return Err(CircuitError::NotDecomposed {
                    kind,
                    operands: g.operands().len(),
                })
            }
            _ => gates.push(g.clone()),
        }
    }
    Ok(Circuit {
        qubit_count: c.qubit_count,
        gates,
        labels: c.labels.clone(),
    })
}

/// Expands two-control Toffolis into the 15-gate Clifford+T network
/// (6 CNOT, 7 T/T†, 2 H) and renames NOT to X.
pub fn toffoli_to_ft(c: &Circuit) -> Result<Circuit, CircuitError> {
    use GateKind::{Tdag, H, T};
    let mut gates = Vec::with_capacity(c.len());
    for g in c.gates() {
        match g.kind() {
            GateKind::Not => gates.push(Gate::one(GateKind::X, g.operands()[0])),
            GateKind::Toffoli { controls: 2 } => {
                let &[a, b, t] = g.operands() else {
                    unreachable!("arity checked at construction")
                };
                gates.extend([
                    Gate::one(H, t),
                    Gate::cnot(b, t),
                    Gate::one(Tdag, t),
                    Gate::cnot(a, t),
                    Gate::one(T, t),
                    Gate::cnot(b, t),
                    Gate::one(Tdag, t),
                    Gate::cnot(a, t),
                    Gate::one(T, b),
                    Gate::one(T, t),
                    Gate::one(H, t),
                    Gate::cnot(a, b),
                    Gate::one(T, a),
                    Gate::one(Tdag, b),
                    Gate::cnot(a, b),
                ]);
            }
            kind @ (GateKind::Toffoli { .. } | GateKind::Fredkin { .. }) => {
                return Err(CircuitError::NotDecomposed {
                    kind,
                    operands: g.operands().len(),
                })
            }
            _ => gates.push(g.clone()),
        }
    }
    Ok(Circuit {
        qubit_count: c.qubit_count,
        gates,
        labels: c.labels.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Applies a classical reversible circuit (NOT/X, CNOT, Toffoli, Fredkin
    /// of any arity) to a basis state.
    fn apply_classical(c: &Circuit, mut state: u64) -> u64 {
        let bit = |s: u64, q: usize| (s >> q) & 1 == 1;
        for g in c.gates() {
            let ops = g.operands();
            match g.kind() {
                GateKind::Not | GateKind::X => state ^= 1 << ops[0],
                GateKind::Cnot => {
                    if bit(state, ops[0]) {
                        state ^= 1 << ops[1]
                    }
                }
                GateKind::Toffoli { controls } => {
                    if ops[..controls].iter().all(|&q| bit(state, q)) {
                        state ^= 1 << ops[controls];
                    }
                }
                GateKind::Fredkin { controls } => {
                    let (a, b) = (ops[controls], ops[controls + 1]);
                    if ops[..controls].iter().all(|&q| bit(state, q)) && bit(state, a) != bit(state, b) {
                        state ^= (1 << a) | (1 << b);
                    }
                }
                k => panic!("{k} is not classical"),
            }
        }
        state
    }

    fn assert_same_with_clean_ancillas(original: &Circuit, lowered: &Circuit) {
        let n = original.qubit_count();
        let total = lowered.qubit_count();
        for s in 0..(1u64 << n) {
            let want = apply_classical(original, s);
            let got = apply_classical(lowered, s);
            assert_eq!(got, want, "input {s:0width$b}", width = total);
        }
    }

    #[test]
    fn three_input_toffoli_unchanged() {
        let c = Circuit::from_gates(3, vec![Gate::toffoli(0, 1, 2)]).unwrap();
        assert_eq!(decompose_multicontrol(&c), c);
    }

    #[test]
    fn four_control_toffoli_uses_two_ancillas() {
        let g = Gate::new(GateKind::Toffoli { controls: 4 }, vec![0, 1, 2, 3, 4]).unwrap();
        let c = Circuit::from_gates(5, vec![g]).unwrap();
        let d = decompose_multicontrol(&c);
        assert_eq!(d.qubit_count(), 7);
        assert_eq!(d.len(), 5);
        assert!(d
            .gates()
            .iter()
            .all(|g| g.kind() == GateKind::Toffoli { controls: 2 }));
        // All 2^7 basis states with ancillas at 0; the other 2^5 states with a
        // dirty ancilla are outside the contract.
        assert_same_with_clean_ancillas(&c, &d);
    }

    #[test]
    fn ancillas_are_not_shared() {
        let g = Gate::new(GateKind::Toffoli { controls: 4 }, vec![0, 1, 2, 3, 4]).unwrap();
        let c = Circuit::from_gates(5, vec![g.clone(), g]).unwrap();
        let d = decompose_multicontrol(&c);
        assert_eq!(d.qubit_count(), 5 + 4);
        assert_same_with_clean_ancillas(&c, &d);
    }

    #[test]
    fn multi_control_fredkin() {
        let g = Gate::new(GateKind::Fredkin { controls: 3 }, vec![4, 0, 2, 1, 3]).unwrap();
        let c = Circuit::from_gates(5, vec![g, Gate::cnot(1, 0)]).unwrap();
        let d = decompose_multicontrol(&c);
        assert_eq!(d.qubit_count(), 7);
        assert_same_with_clean_ancillas(&c, &d);
        let full = fredkin_to_toffoli(&d).unwrap();
        assert_same_with_clean_ancillas(&c, &full);
    }

    #[test]
    fn fredkin_becomes_three_toffolis() {
        let f = Gate::new(GateKind::Fredkin { controls: 1 }, vec![0, 1, 2]).unwrap();
        let c = Circuit::from_gates(3, vec![f]).unwrap();
        let t = fredkin_to_toffoli(&c).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t
            .gates()
            .iter()
            .all(|g| g.kind() == GateKind::Toffoli { controls: 2 }));
        for s in 0..8u64 {
            let (ctl, a, b) = (s & 1, (s >> 1) & 1, (s >> 2) & 1);
            let want = if ctl == 1 { ctl | (b << 1) | (a << 2) } else { s };
            assert_eq!(apply_classical(&t, s), want);
        }
    }

    #[test]
    fn fredkin_free_identity() {
        let c = Circuit::from_gates(3, vec![Gate::toffoli(0, 1, 2), Gate::cnot(0, 1)]).unwrap();
        assert_eq!(fredkin_to_toffoli(&c).unwrap(), c);
    }

    #[test]
    fn toffoli_gate_census() {
        let c = Circuit::from_gates(3, vec![Gate::toffoli(0, 1, 2)]).unwrap();
        let ft = toffoli_to_ft(&c).unwrap();
        assert_eq!(ft.len(), 15);
        let count = |k: &[GateKind]| ft.gates().iter().filter(|g| k.contains(&g.kind())).count();
        assert_eq!(count(&[GateKind::Cnot]), 6);
        assert_eq!(count(&[GateKind::T, GateKind::Tdag]), 7);
        assert_eq!(count(&[GateKind::H]), 2);
        assert!(ft.is_fault_tolerant());
    }

    #[test]
    fn not_renamed_and_ft_identity() {
        let c = Circuit::from_gates(2, vec![Gate::new(GateKind::Not, vec![1]).unwrap()]).unwrap();
        assert_eq!(toffoli_to_ft(&c).unwrap().gates(), &[Gate::one(GateKind::X, 1)]);
        let ft = Circuit::from_gates(2, vec![Gate::one(GateKind::H, 0), Gate::cnot(0, 1)]).unwrap();
        assert_eq!(toffoli_to_ft(&ft).unwrap(), ft);
    }

    #[test]
    fn undecomposed_input_rejected() {
        let g = Gate::new(GateKind::Toffoli { controls: 3 }, vec![0, 1, 2, 3]).unwrap();
        let c = Circuit::from_gates(4, vec![g]).unwrap();
        assert!(matches!(
            toffoli_to_ft(&c),
            Err(CircuitError::NotDecomposed { .. })
        ));
    }

    #[test]
    fn labels_extended_for_ancillas() {
        let g = Gate::new(GateKind::Toffoli { controls: 3 }, vec![0, 1, 2, 3]).unwrap();
        let c = Circuit::from_gates(4, vec![g])
            .unwrap()
            .with_labels(["a", "b", "c", "d"].map(String::from).to_vec());
        let d = lower(&c);
        assert_eq!(d.labels().unwrap().last().unwrap(), "anc0");
        assert_eq!(d.labels().unwrap().len(), d.qubit_count());
    }
}
