//! Seeded random FT circuits for scaling studies.
//!
//! CNOT partners are drawn with locality: most interactions repeat a recent
//! partner (more recent is likelier), the rest pick a qubit within a small
//! index window. The interaction graph therefore keeps a bounded degree, as
//! in synthesized arithmetic circuits.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};

/// Recent partners remembered per qubit.
const HISTORY: usize = 4;
/// Probability of reusing a remembered partner.
const REUSE: f64 = 0.7;
/// New partners are at most this many indices away (cyclically).
const WINDOW: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("need at least one qubit")]
    NoQubits,
    #[error("CNOTs need at least two qubits")]
    TooFewQubits,
    #[error("cnot fraction must lie in [0, 1], got {0}")]
    Fraction(f64),
}

pub fn random_circuit(
    qubits: usize,
    ops: usize,
    cnot_fraction: f64,
    seed: u64,
) -> Result<Circuit, GenerateError> {
    if !(0.0..=1.0).contains(&cnot_fraction) {
        return Err(GenerateError::Fraction(cnot_fraction));
    }
    if qubits == 0 {
        return Err(GenerateError::NoQubits);
    }
    if qubits < 2 && cnot_fraction > 0.0 {
        return Err(GenerateError::TooFewQubits);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut recent: Vec<Vec<usize>> = vec![Vec::with_capacity(HISTORY); qubits];
    let mut gates = Vec::with_capacity(ops);

    for _ in 0..ops {
        if rng.gen_bool(cnot_fraction) {
            let a = rng.gen_range(0..qubits);
            let b = pick_partner(&mut rng, a, qubits, &recent[a]);
            remember(&mut recent[a], b);
            remember(&mut recent[b], a);
            gates.push(if rng.gen_bool(0.5) { Gate::cnot(a, b) } else { Gate::cnot(b, a) });
        } else {
            let kind = GateKind::ONE_QUBIT_FT[rng.gen_range(0..GateKind::ONE_QUBIT_FT.len())];
            gates.push(Gate::one(kind, rng.gen_range(0..qubits)));
        }
    }
    Ok(Circuit::from_gates(qubits, gates).expect("generated operands are in range"))
}

fn pick_partner(rng: &mut impl Rng, a: usize, qubits: usize, recent: &[usize]) -> usize {
    if !recent.is_empty() && rng.gen_bool(REUSE) {
        // Geometric preference: index k chosen with weight 2^-k.
        let mut k = 0;
        while k + 1 < recent.len() && rng.gen_bool(0.5) {
            k += 1;
        }
        return recent[k];
    }
    let window = WINDOW.min((qubits - 1).div_ceil(2)).max(1);
    loop {
        let offset = rng.gen_range(1..=window);
        let b = if rng.gen_bool(0.5) {
            (a + offset) % qubits
        } else {
            (a + qubits - offset % qubits) % qubits
        };
        if b != a {
            return b;
        }
    }
}

/// Moves `partner` to the front of the history.
fn remember(history: &mut Vec<usize>, partner: usize) {
    if let Some(pos) = history.iter().position(|&p| p == partner) {
        history.remove(pos);
    } else if history.len() == HISTORY {
        history.pop();
    }
    history.insert(0, partner);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iig::Iig;

    #[test]
    fn forced_pair() {
        let c = random_circuit(2, 10, 1.0, 0).unwrap();
        assert_eq!(c.len(), 10);
        assert_eq!(c.cnot_count(), 10);
        let g = Iig::build(&c);
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1, 10)]);
    }

    #[test]
    fn deterministic() {
        let a = random_circuit(50, 10_000, 0.4, 1).unwrap();
        let b = random_circuit(50, 10_000, 0.4, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_circuit(50, 10_000, 0.4, 2).unwrap());
        assert!(a.is_fault_tolerant());
        let frac = a.cnot_count() as f64 / a.len() as f64;
        assert!((frac - 0.4).abs() < 0.03, "{frac}");
    }

    #[test]
    fn bounded_degree() {
        let c = random_circuit(60, 40_000, 0.5, 9).unwrap();
        let max = Iig::build(&c).degrees().into_iter().max().unwrap();
        assert!(max <= 2 * WINDOW, "{max}");
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(random_circuit(1, 5, 0.5, 0), Err(GenerateError::TooFewQubits));
        assert_eq!(random_circuit(0, 5, 0.0, 0), Err(GenerateError::NoQubits));
        assert!(random_circuit(1, 5, 0.0, 0).is_ok());
        assert!(matches!(random_circuit(4, 5, 1.5, 0), Err(GenerateError::Fraction(_))));
    }
}
