//! Text formats.
//!
//! The native format is line based:
//!
//! ```text
//! # comment
//! qubits 3
//! h q0
//! cnot q0 q1          # control, target
//! toffoli q0 q1 q2    # controls..., target
//! ```
//!
//! [`parse_real`] additionally reads the `.real` dialect used by public
//! reversible-logic benchmark suites (`t`/`f`/`p` gates over named variables).

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use super::{Circuit, CircuitError, Gate, GateKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.kind)
    }
}

impl ParseError {
    fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    fn circuit(line: usize, column: usize, err: CircuitError) -> Self {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Circuit(err),
        }
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns, stopping
/// at `comment`.
fn tokens(line: &str, comment: char) -> Vec<(usize, &str)> {
    let body = match line.find(comment) {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (body[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_qubit(tok: &str) -> Option<usize> {
    let digits = tok.strip_prefix('q')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses the native line-based netlist format.
pub fn parse_netlist(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokens(line, '#');
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        let Some(c) = circuit.as_mut() else {
            if head != "qubits" {
                return Err(ParseError::syntax(
                    lineno,
                    col,
                    format!("expected `qubits <N>` header, found `{head}`"),
                ));
            }
            if toks.len() != 2 {
                return Err(ParseError::syntax(lineno, col, "`qubits` takes one count"));
            }
            let (ncol, n) = toks[1];
            let n: usize = n
                .parse()
                .map_err(|_| ParseError::syntax(lineno, ncol, format!("bad qubit count `{n}`")))?;
            circuit = Some(Circuit::new(n).map_err(|e| ParseError::circuit(lineno, ncol, e))?);
            continue;
        };
        let operand_toks = &toks[1..];
        let kind = GateKind::from_mnemonic(head, operand_toks.len())
            .ok_or_else(|| ParseError::syntax(lineno, col, format!("unknown gate `{head}`")))?;
        let mut operands = Vec::with_capacity(operand_toks.len());
        for &(qcol, tok) in operand_toks {
            let q = parse_qubit(tok).ok_or_else(|| {
                ParseError::syntax(lineno, qcol, format!("expected qubit like `q0`, found `{tok}`"))
            })?;
            if q >= c.qubit_count() {
                return Err(ParseError::circuit(
                    lineno,
                    qcol,
                    CircuitError::UndeclaredQubit {
                        index: q,
                        qubit_count: c.qubit_count(),
                    },
                ));
            }
            operands.push(q);
        }
        let gate = Gate::new(kind, operands).map_err(|e| ParseError::circuit(lineno, col, e))?;
        c.push(gate).map_err(|e| ParseError::circuit(lineno, col, e))?;
    }
    circuit.ok_or_else(|| ParseError::syntax(1, 1, "missing `qubits <N>` header"))
}

/// Serializes a circuit in the native format. Labels are not written.
pub fn to_netlist(c: &Circuit) -> String {
    let mut out = String::with_capacity(16 + c.len() * 12);
    let _ = writeln!(out, "qubits {}", c.qubit_count());
    for g in c.gates() {
        out.push_str(g.kind().mnemonic());
        for q in g.operands() {
            let _ = write!(out, " q{q}");
        }
        out.push('\n');
    }
    out
}

/// Reads the `.real` benchmark dialect.
///
/// Supported gate families: `t<n>` (NOT/CNOT/Toffoli), `f<n>` (swap and
/// controlled swap) and `p3` (Peres, expanded to Toffoli + CNOT).
pub fn parse_real(text: &str) -> Result<Circuit, ParseError> {
    let mut numvars: Option<(usize, usize)> = None;
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut circuit: Option<Circuit> = None;
    let mut ended = false;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokens(line, '#');
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        if ended {
            return Err(ParseError::syntax(lineno, col, "content after `.end`"));
        }
        if let Some(directive) = head.strip_prefix('.') {
            match directive {
                "numvars" => {
                    let &(ncol, n) = toks
                        .get(1)
                        .ok_or_else(|| ParseError::syntax(lineno, col, "`.numvars` needs a count"))?;
                    let n = n
                        .parse()
                        .map_err(|_| ParseError::syntax(lineno, ncol, format!("bad count `{n}`")))?;
                    numvars = Some((n, lineno));
                }
                "variables" => {
                    for &(vcol, v) in &toks[1..] {
                        if names.insert(v.to_string(), labels.len()).is_some() {
                            return Err(ParseError::syntax(
                                lineno,
                                vcol,
                                format!("variable `{v}` declared twice"),
                            ));
                        }
                        labels.push(v.to_string());
                    }
                }
                "begin" => {
                    if let Some((n, nline)) = numvars {
                        if n != labels.len() {
                            return Err(ParseError::syntax(
                                nline,
                                1,
                                format!(".numvars {n} but {} variables listed", labels.len()),
                            ));
                        }
                    }
                    if labels.is_empty() {
                        return Err(ParseError::syntax(lineno, col, "`.begin` before `.variables`"));
                    }
                    circuit = Some(
                        Circuit::new(labels.len())
                            .map_err(|e| ParseError::circuit(lineno, col, e))?
                            .with_labels(labels.clone()),
                    );
                }
                "end" => ended = true,
                // .version, .inputs, .outputs, .constants, .garbage, .define ...
                _ => {}
            }
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            return Err(ParseError::syntax(lineno, col, "gate before `.begin`"));
        };
        let mut operands = Vec::with_capacity(toks.len() - 1);
        for &(vcol, v) in &toks[1..] {
            let q = *names.get(v).ok_or_else(|| {
                ParseError::syntax(lineno, vcol, format!("undeclared variable `{v}`"))
            })?;
            operands.push(q);
        }
        for g in real_gate(head, operands).map_err(|e| match e {
            RealGateError::Unknown => {
                ParseError::syntax(lineno, col, format!("unsupported gate `{head}`"))
            }
            RealGateError::Circuit(e) => ParseError::circuit(lineno, col, e),
        })? {
            c.push(g).map_err(|e| ParseError::circuit(lineno, col, e))?;
        }
    }
    circuit.ok_or_else(|| ParseError::syntax(1, 1, "missing `.begin`"))
}

enum RealGateError {
    Unknown,
    Circuit(CircuitError),
}

impl From<CircuitError> for RealGateError {
    fn from(e: CircuitError) -> Self {
        RealGateError::Circuit(e)
    }
}

fn real_gate(head: &str, ops: Vec<usize>) -> Result<Vec<Gate>, RealGateError> {
    let (family, count) = head.split_at(1);
    let declared: usize = count.parse().map_err(|_| RealGateError::Unknown)?;
    let n = ops.len();
    if declared != n {
        let kind = match family {
            "t" => GateKind::Toffoli {
                controls: declared.saturating_sub(1),
            },
            _ => GateKind::Fredkin {
                controls: declared.saturating_sub(2),
            },
        };
        return Err(CircuitError::Arity {
            kind,
            expected: declared,
            found: n,
        }
        .into());
    }
    Ok(match (family, n) {
        ("t", 1) => vec![Gate::new(GateKind::Not, ops)?],
        ("t", 2) => vec![Gate::new(GateKind::Cnot, ops)?],
        ("t", _) => vec![Gate::new(GateKind::Toffoli { controls: n - 1 }, ops)?],
        ("f", 2) => {
            let g = Gate::new(GateKind::Cnot, ops.clone())?;
            let (a, b) = (ops[0], ops[1]);
            vec![g, Gate::cnot(b, a), Gate::cnot(a, b)]
        }
        ("f", _) => vec![Gate::new(GateKind::Fredkin { controls: n - 2 }, ops)?],
        ("p", 3) => {
            let t = Gate::new(GateKind::Toffoli { controls: 2 }, ops.clone())?;
            vec![t, Gate::cnot(ops[0], ops[1])]
        }
        _ => return Err(RealGateError::Unknown),
    })
}

/// Picks the reader from the content: `.real` files start with a directive.
pub fn parse_any(text: &str) -> Result<Circuit, ParseError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with('.') => parse_real(text),
        _ => parse_netlist(text),
    }
}
