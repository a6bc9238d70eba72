//! Reversible and fault-tolerant circuits.
//!
//! A [`Circuit`] is an ordered gate list over `qubit_count` logical qubits.
//! Synthesized circuits may contain multi-control Toffoli and Fredkin gates;
//! the [`lower`] pipeline rewrites them into the fault-tolerant (FT) set
//! `{CNOT, H, T, T†, S, X, Y, Z}` that the rest of the crate works on.

mod lower;
mod netlist;

use std::fmt;

use thiserror::Error;

pub use lower::{decompose_multicontrol, fredkin_to_toffoli, lower, toffoli_to_ft};
pub use netlist::{parse_any, parse_netlist, parse_real, to_netlist, ParseError, ParseErrorKind};

/// Operation kind.
///
/// The first eight variants form the FT set. `Not`, `Toffoli` and `Fredkin`
/// only appear before lowering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    T,
    Tdag,
    Cnot,
    Not,
    /// Multi-control Toffoli; operands are the controls followed by the target.
    Toffoli { controls: usize },
    /// Controlled swap; operands are the controls followed by the two swapped qubits.
    Fredkin { controls: usize },
}

impl GateKind {
    /// All one-qubit members of the FT set.
    pub const ONE_QUBIT_FT: [GateKind; 7] = [
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::T,
        GateKind::Tdag,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            GateKind::Toffoli { controls } => controls + 1,
            GateKind::Fredkin { controls } => controls + 2,
            _ => 1,
        }
    }

    pub fn is_fault_tolerant(self) -> bool {
        !matches!(
            self,
            GateKind::Not | GateKind::Toffoli { .. } | GateKind::Fredkin { .. }
        )
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::T => "t",
            GateKind::Tdag => "tdag",
            GateKind::Cnot => "cnot",
            GateKind::Not => "not",
            GateKind::Toffoli { .. } => "toffoli",
            GateKind::Fredkin { .. } => "fredkin",
        }
    }

    /// Resolves a netlist mnemonic given the number of operands on the line.
    fn from_mnemonic(name: &str, operands: usize) -> Option<GateKind> {
        Some(match name {
            "x" => GateKind::X,
            "y" => GateKind::Y,
            "z" => GateKind::Z,
            "h" => GateKind::H,
            "s" => GateKind::S,
            "t" => GateKind::T,
            "tdag" => GateKind::Tdag,
            "cnot" => GateKind::Cnot,
            "not" => GateKind::Not,
            "toffoli" => GateKind::Toffoli {
                controls: operands.saturating_sub(1),
            },
            "fredkin" => GateKind::Fredkin {
                controls: operands.saturating_sub(2),
            },
            _ => return None,
        })
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("{kind} takes {expected} operands, got {found}")]
    Arity {
        kind: GateKind,
        expected: usize,
        found: usize,
    },
    #[error("{kind} needs at least {min} controls, got {found}")]
    TooFewControls {
        kind: GateKind,
        min: usize,
        found: usize,
    },
    #[error("qubit q{0} appears twice in one gate")]
    DuplicateOperand(usize),
    #[error("qubit q{index} is not declared (circuit has {qubit_count} qubits)")]
    UndeclaredQubit { index: usize, qubit_count: usize },
    #[error("gate {0} is not in the fault-tolerant set")]
    NotFaultTolerant(GateKind),
    #[error("gate {kind} on {operands} qubits must be decomposed first")]
    NotDecomposed { kind: GateKind, operands: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    operands: Vec<usize>,
}

impl Gate {
    /// Builds a gate, checking arity, minimum control counts and operand
    /// distinctness.
    pub fn new(kind: GateKind, operands: Vec<usize>) -> Result<Self, CircuitError> {
        match kind {
            GateKind::Toffoli { controls } if controls < 2 => {
                return Err(CircuitError::TooFewControls {
                    kind,
                    min: 2,
                    found: controls,
                })
            }
            GateKind::Fredkin { controls } if controls < 1 => {
                return Err(CircuitError::TooFewControls {
                    kind,
                    min: 1,
                    found: controls,
                })
            }
            _ => {}
        }
        if operands.len() != kind.arity() {
            return Err(CircuitError::Arity {
                kind,
                expected: kind.arity(),
                found: operands.len(),
            });
        }
        for (i, q) in operands.iter().enumerate() {
            if operands[..i].contains(q) {
                return Err(CircuitError::DuplicateOperand(*q));
            }
        }
        Ok(Gate { kind, operands })
    }

    pub fn one(kind: GateKind, qubit: usize) -> Self {
        debug_assert_eq!(kind.arity(), 1);
        Gate {
            kind,
            operands: vec![qubit],
        }
    }

    /// CNOT with the given control and target. Panics if they coincide.
    pub fn cnot(control: usize, target: usize) -> Self {
        assert_ne!(control, target, "CNOT control and target must differ");
        Gate {
            kind: GateKind::Cnot,
            operands: vec![control, target],
        }
    }

    /// Two-control Toffoli. Panics on repeated operands.
    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Self {
        Gate::new(GateKind::Toffoli { controls: 2 }, vec![c0, c1, target])
            .expect("toffoli operands must be distinct")
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn operands(&self) -> &[usize] {
        &self.operands
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
    labels: Option<Vec<String>>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Result<Self, CircuitError> {
        if qubit_count == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit {
            qubit_count,
            gates: Vec::new(),
            labels: None,
        })
    }

    /// Builds a circuit from a gate list, validating every operand index.
    pub fn from_gates(qubit_count: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(qubit_count)?;
        c.gates.reserve(gates.len());
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        if let Some(&index) = gate.operands.iter().find(|&&q| q >= self.qubit_count) {
            return Err(CircuitError::UndeclaredQubit {
                index,
                qubit_count: self.qubit_count,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.qubit_count);
        self.labels = Some(labels);
        self
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_fault_tolerant(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_fault_tolerant())
    }

    /// Fails with the first gate outside the FT set.
    pub fn ensure_fault_tolerant(&self) -> Result<(), CircuitError> {
        match self.gates.iter().find(|g| !g.kind.is_fault_tolerant()) {
            Some(g) => Err(CircuitError::NotFaultTolerant(g.kind)),
            None => Ok(()),
        }
    }

    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.kind == GateKind::Cnot)
            .count()
    }
}
