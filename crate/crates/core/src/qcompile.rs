//! Lowering of rule sets to reversible circuits.
//!
//! Every base fact gets one qubit prepared by a single `M(θ)` gate so that
//! reading bit 1 means TRUE. Premises are lowered bottom-up onto fresh
//! ancillas:
//!
//! * `a and b` is a Toffoli onto a fresh target.
//! * `a or b` is the De Morgan form `X a; X b; CCN a b -> t; X t; X a; X b`.
//! * `not a` copies with a CNOT and flips the copy.
//!
//! After the preparation layer the circuit only permutes basis states, so
//! measured marginals equal classical propagation of the fact probabilities.

use std::fmt::Write as _;

use indexmap::IndexMap;
use thiserror::Error;

use crate::qgates::GateKind;
use crate::ruledsl::{topo_order, validate, Diagnostic, Expr, RuleSet};
use crate::statevec::{run, Circuit, CircuitOp, SimError, StateVector, MAX_QUBITS};
use crate::uncertainty::{uncertainty_gate, Disbelief};

#[derive(Debug, Error, PartialEq)]
pub enum CompileError {
    #[error("invalid rule set: {}", .0.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("program needs {needed} qubits, the simulator supports at most {MAX_QUBITS}")]
    QubitBudget { needed: usize },
}

/// Which bit value stands for TRUE in compiled circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruthEncoding {
    pub true_bit: u8,
}

impl TruthEncoding {
    pub const TRUE_IS_ONE: TruthEncoding = TruthEncoding { true_bit: 1 };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    And,
    Or,
    Not,
    /// Premise that is a bare fact reference, copied onto the conclusion.
    Copy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ancilla {
    pub qubit: usize,
    pub rule: String,
    pub kind: NodeKind,
}

/// Qubit assignment of a compiled program.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QubitPlan {
    pub fact_qubits: IndexMap<String, usize>,
    pub conclusion_qubits: IndexMap<String, usize>,
    pub ancillas: Vec<Ancilla>,
    pub n_qubits: usize,
}

impl QubitPlan {
    pub fn qubit_of(&self, fact: &str) -> Option<usize> {
        self.fact_qubits.get(fact).or_else(|| self.conclusion_qubits.get(fact)).copied()
    }

    fn fresh(&mut self, rule: &str, kind: NodeKind) -> usize {
        let qubit = self.n_qubits;
        self.n_qubits += 1;
        self.ancillas.push(Ancilla { qubit, rule: rule.to_string(), kind });
        qubit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompiledProgram {
    pub circuit: Circuit,
    pub plan: QubitPlan,
    pub goal: String,
    pub goal_qubit: usize,
    pub truth_encoding: TruthEncoding,
}

impl CompiledProgram {
    pub fn prepare_count(&self) -> usize {
        self.circuit.ops.iter().filter(|op| matches!(op.gate, GateKind::M(_))).count()
    }

    pub fn toffoli_count(&self) -> usize {
        self.circuit.ops.iter().filter(|op| op.controls.len() == 2).count()
    }
}

/// Gate that prepares a fact on `|0⟩` with `P(bit 1) = P(true) = sin²θ(δ)`.
///
/// `M(θ)|0⟩` puts `sin θ` on `|0⟩`; the mirrored angle `θ(100 − δ) = π/2 − θ`
/// moves that amplitude onto `|1⟩`.
pub fn preparation_gate(d: Disbelief) -> GateKind {
    uncertainty_gate(d.complement())
}

pub(crate) fn emit_and(ops: &mut Vec<CircuitOp>, a: usize, b: usize, target: usize) {
    if a == b {
        ops.push(CircuitOp::cn(a, target));
    } else {
        ops.push(CircuitOp::ccn(a, b, target));
    }
}

pub(crate) fn emit_or(ops: &mut Vec<CircuitOp>, a: usize, b: usize, target: usize) {
    if a == b {
        ops.push(CircuitOp::cn(a, target));
        return;
    }
    ops.push(CircuitOp::x(a));
    ops.push(CircuitOp::x(b));
    ops.push(CircuitOp::ccn(a, b, target));
    ops.push(CircuitOp::x(target));
    ops.push(CircuitOp::x(a));
    ops.push(CircuitOp::x(b));
}

pub(crate) fn emit_not(ops: &mut Vec<CircuitOp>, a: usize, target: usize) {
    ops.push(CircuitOp::cn(a, target));
    ops.push(CircuitOp::x(target));
}

struct Lowering {
    plan: QubitPlan,
    ops: Vec<CircuitOp>,
}

impl Lowering {
    fn expr(&mut self, e: &Expr, rule: &str) -> usize {
        match e {
            Expr::Fact(name) => self.plan.qubit_of(name).expect("validated rule set references known facts"),
            Expr::Not(inner) => {
                let a = self.expr(inner, rule);
                let t = self.plan.fresh(rule, NodeKind::Not);
                emit_not(&mut self.ops, a, t);
                t
            }
            Expr::And(l, r) => {
                let (a, b) = (self.expr(l, rule), self.expr(r, rule));
                let t = self.plan.fresh(rule, NodeKind::And);
                emit_and(&mut self.ops, a, b, t);
                t
            }
            Expr::Or(l, r) => {
                let (a, b) = (self.expr(l, rule), self.expr(r, rule));
                let t = self.plan.fresh(rule, NodeKind::Or);
                emit_or(&mut self.ops, a, b, t);
                t
            }
        }
    }
}

pub fn compile(rs: &RuleSet) -> Result<CompiledProgram, CompileError> {
    let diagnostics = validate(rs);
    if !diagnostics.is_empty() {
        return Err(CompileError::Invalid(diagnostics));
    }
    let order = topo_order(rs).expect("validated rule set is acyclic");

    let mut low = Lowering { plan: QubitPlan::default(), ops: Vec::new() };
    for (name, &d) in &rs.base_facts {
        let q = low.plan.n_qubits;
        low.plan.n_qubits += 1;
        low.plan.fact_qubits.insert(name.clone(), q);
        low.ops.push(CircuitOp::single(preparation_gate(d), q));
    }
    for rule in order {
        let mut root = low.expr(&rule.premise, &rule.name);
        if let Expr::Fact(_) = rule.premise {
            let t = low.plan.fresh(&rule.name, NodeKind::Copy);
            low.ops.push(CircuitOp::cn(root, t));
            root = t;
        }
        low.plan.conclusion_qubits.insert(rule.conclusion.clone(), root);
    }

    let needed = low.plan.n_qubits;
    if needed > MAX_QUBITS {
        return Err(CompileError::QubitBudget { needed });
    }
    let goal_qubit = low.plan.qubit_of(&rs.goal).expect("validated goal is reachable");
    let circuit = Circuit { n_qubits: needed, ops: low.ops, measured_qubit: goal_qubit };
    Ok(CompiledProgram {
        circuit,
        plan: low.plan,
        goal: rs.goal.clone(),
        goal_qubit,
        truth_encoding: TruthEncoding::TRUE_IS_ONE,
    })
}

#[derive(Debug, Error, PartialEq)]
pub enum CircuitFormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("controlled {0} gates have no text form")]
    Unsupported(String),
    #[error(transparent)]
    Invalid(#[from] SimError),
}

/// Text form of a circuit, one op per line, in emission order.
pub fn write_circuit(circuit: &Circuit) -> Result<String, CircuitFormatError> {
    let mut out = String::new();
    writeln!(out, "qubits {}", circuit.n_qubits).unwrap();
    for op in &circuit.ops {
        match (op.gate, op.controls.as_slice()) {
            (GateKind::M(theta), []) => writeln!(out, "M(theta={theta:.6}) q{}", op.target),
            (g, []) => writeln!(out, "{} q{}", g.name(), op.target),
            (GateKind::X, [c]) => writeln!(out, "CN q{c} -> q{}", op.target),
            (GateKind::X, [c1, c2]) => writeln!(out, "CCN q{c1} q{c2} -> q{}", op.target),
            (g, _) => return Err(CircuitFormatError::Unsupported(g.name().to_string())),
        }
        .unwrap();
    }
    writeln!(out, "measure q{}", circuit.measured_qubit).unwrap();
    Ok(out)
}

pub fn export_circuit(cp: &CompiledProgram) -> String {
    write_circuit(&cp.circuit).expect("compiled circuits only use X, CN, CCN and M")
}

/// Parses the text form written by [`write_circuit`]. `#` starts a comment.
pub fn import_circuit(text: &str) -> Result<Circuit, CircuitFormatError> {
    let mut n_qubits = None;
    let mut measured = None;
    let mut ops = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| CircuitFormatError::Syntax { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let qubit = |tok: &str| -> Result<usize, CircuitFormatError> {
            tok.strip_prefix('q')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| err(format!("expected qubit like 'q0', found '{tok}'")))
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        if n_qubits.is_none() {
            match words.as_slice() {
                ["qubits", n] => {
                    n_qubits = Some(n.parse::<usize>().map_err(|_| err(format!("bad qubit count '{n}'")))?);
                    continue;
                }
                _ => return Err(err("circuit must start with 'qubits N'".into())),
            }
        }
        if measured.is_some() {
            return Err(err("nothing may follow 'measure'".into()));
        }
        let op = match words.as_slice() {
            ["measure", q] => {
                measured = Some(qubit(q)?);
                continue;
            }
            ["CN", c, "->", t] => CircuitOp::cn(qubit(c)?, qubit(t)?),
            ["CCN", c1, c2, "->", t] => CircuitOp::ccn(qubit(c1)?, qubit(c2)?, qubit(t)?),
            [gate, q] => {
                let kind = match *gate {
                    "X" => GateKind::X,
                    "H" => GateKind::H,
                    "S" => GateKind::S,
                    "T" => GateKind::T,
                    "Z" => GateKind::Z,
                    g => {
                        let theta = g
                            .strip_prefix("M(theta=")
                            .and_then(|rest| rest.strip_suffix(')'))
                            .and_then(|v| v.parse::<f64>().ok())
                            .filter(|v| v.is_finite())
                            .ok_or_else(|| err(format!("unknown gate '{g}'")))?;
                        GateKind::M(theta)
                    }
                };
                CircuitOp::single(kind, qubit(q)?)
            }
            _ => return Err(err(format!("unrecognized line '{line}'"))),
        };
        ops.push(op);
    }

    let n_qubits = n_qubits.ok_or(CircuitFormatError::Syntax { line: 0, message: "empty circuit".into() })?;
    let measured_qubit = measured
        .ok_or(CircuitFormatError::Syntax { line: text.lines().count(), message: "missing 'measure' line".into() })?;
    let circuit = Circuit { n_qubits, ops, measured_qubit };
    circuit.validate()?;
    Ok(circuit)
}

/// The reversible building blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    And,
    Or,
    Not,
}

impl Block {
    pub fn arity(self) -> usize {
        match self {
            Block::Not => 1,
            _ => 2,
        }
    }

    pub fn classical(self, inputs: &[bool]) -> bool {
        match self {
            Block::And => inputs[0] && inputs[1],
            Block::Or => inputs[0] || inputs[1],
            Block::Not => !inputs[0],
        }
    }

    /// The block alone: inputs on `q0` (and `q1`), output on the next qubit.
    pub fn circuit(self) -> Circuit {
        let out = self.arity();
        let mut ops = Vec::new();
        match self {
            Block::And => emit_and(&mut ops, 0, 1, out),
            Block::Or => emit_or(&mut ops, 0, 1, out),
            Block::Not => emit_not(&mut ops, 0, out),
        }
        Circuit { n_qubits: out + 1, ops, measured_qubit: out }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthRow {
    pub inputs: Vec<bool>,
    pub output: bool,
    /// Whether the input qubits came out unchanged.
    pub inputs_restored: bool,
}

/// Simulates a block on every basis input (ancilla in `|0⟩`).
pub fn truth_table_check(block: Block) -> Vec<TruthRow> {
    let circuit = block.circuit();
    let arity = block.arity();
    (0..1usize << arity)
        .map(|bits| {
            // first input is the most significant bit of the row index
            let inputs: Vec<bool> = (0..arity).map(|k| bits >> (arity - 1 - k) & 1 == 1).collect();
            let index = inputs.iter().enumerate().fold(0, |acc, (q, &v)| acc | (usize::from(v) << q));
            let out = run(&circuit, StateVector::basis(circuit.n_qubits, index).unwrap()).unwrap();
            let (hit, _) = out
                .amplitudes()
                .iter()
                .enumerate()
                .find(|(_, a)| (a.norm() - 1.0).abs() < 1e-12)
                .expect("permutation circuit keeps a basis state");
            TruthRow { output: hit >> arity & 1 == 1, inputs_restored: hit & ((1 << arity) - 1) == index, inputs }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemoRow {
    pub a: bool,
    pub b: bool,
    pub output: bool,
    pub count: u64,
    pub measured_pct: f64,
    pub exact_pct: f64,
}

impl DemoRow {
    /// Bits of `a`, `b` and the output, in that order.
    pub fn input_vector(&self) -> String {
        [self.a, self.b, self.output].iter().map(|&v| if v { '1' } else { '0' }).collect()
    }

    pub fn input_truth(&self) -> String {
        [self.a, self.b].iter().map(|&v| if v { '1' } else { '0' }).collect()
    }

    /// Ratio of the smaller to the larger of measured and exact percentage.
    pub fn precision(&self) -> f64 {
        let (lo, hi) = if self.measured_pct < self.exact_pct {
            (self.measured_pct, self.exact_pct)
        } else {
            (self.exact_pct, self.measured_pct)
        };
        if hi == 0.0 {
            1.0
        } else {
            lo / hi
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateDemo {
    pub block: Block,
    pub shots: u64,
    pub seed: u64,
    pub rows: Vec<DemoRow>,
}

/// Runs an AND/OR block on Hadamard-superposed inputs and samples it.
pub fn rq_gate_demo(block: Block, shots: u64, seed: u64) -> Result<GateDemo, SimError> {
    rq_gate_demo_with(block, [GateKind::H, GateKind::H], shots, seed)
}

/// Same as [`rq_gate_demo`] with explicit preparation gates for the inputs.
pub fn rq_gate_demo_with(
    block: Block,
    preparation: [GateKind; 2],
    shots: u64,
    seed: u64,
) -> Result<GateDemo, SimError> {
    assert!(block.arity() == 2, "gate demo needs a two-input block");
    let body = block.circuit();
    let mut circuit = Circuit::new(body.n_qubits, body.measured_qubit);
    circuit.push(CircuitOp::single(preparation[0], 0));
    circuit.push(CircuitOp::single(preparation[1], 1));
    circuit.ops.extend(body.ops);
    let state = run(&circuit, StateVector::init_zero(circuit.n_qubits)?)?;
    let hist = state.sample(shots, seed)?;
    let probs = state.probabilities();

    let rows = [(false, false), (false, true), (true, false), (true, true)]
        .into_iter()
        .map(|(a, b)| {
            let output = block.classical(&[a, b]);
            let index = usize::from(a) | usize::from(b) << 1 | usize::from(output) << 2;
            let count = hist.count(index);
            DemoRow {
                a,
                b,
                output,
                count,
                measured_pct: 100.0 * count as f64 / shots as f64,
                exact_pct: 100.0 * probs[index],
            }
        })
        .collect();
    Ok(GateDemo { block, shots, seed, rows })
}
