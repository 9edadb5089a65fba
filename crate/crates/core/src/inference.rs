//! Running compiled programs and checking them against classical enumeration.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::qcompile::CompiledProgram;
use crate::ruledsl::{topo_order, validate, Diagnostic, RuleSet};
use crate::statevec::{run, SimError, StateVector};
use crate::uncertainty::fact_amplitudes;

/// Enumeration limit of the oracle.
pub const MAX_ORACLE_FACTS: usize = 20;

/// Tolerance of [`cross_validate`].
pub const AGREEMENT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum InferenceError {
    #[error(transparent)]
    Simulation(#[from] SimError),
    #[error("oracle enumerates at most {MAX_ORACLE_FACTS} base facts, program has {0}")]
    OracleBudget(usize),
    #[error("invalid rule set: {}", .0.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Shots { shots: u64, seed: u64 },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => f.write_str("exact"),
            Method::Shots { shots, seed } => write!(f, "shots({shots}, seed={seed})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InferenceResult {
    pub goal: String,
    pub p_true: f64,
    pub p_false: f64,
    pub method: Method,
}

pub fn final_state(cp: &CompiledProgram) -> Result<StateVector, SimError> {
    run(&cp.circuit, StateVector::init_zero(cp.circuit.n_qubits)?)
}

/// Exact probability that the goal qubit reads TRUE.
pub fn infer_exact(cp: &CompiledProgram) -> Result<InferenceResult, InferenceError> {
    let state = final_state(cp)?;
    let p_true = state.marginal_prob_one(cp.goal_qubit)?;
    Ok(InferenceResult { goal: cp.goal.clone(), p_true, p_false: 1.0 - p_true, method: Method::Exact })
}

/// Goal probability estimated from `shots` seeded measurements.
pub fn infer_shots(cp: &CompiledProgram, shots: u64, seed: u64) -> Result<InferenceResult, InferenceError> {
    infer_shots_stream(cp, shots, seed, 0)
}

pub fn infer_shots_stream(
    cp: &CompiledProgram,
    shots: u64,
    seed: u64,
    stream: u64,
) -> Result<InferenceResult, InferenceError> {
    let hist = final_state(cp)?.sample_stream(shots, seed, stream)?;
    let p_true = hist.ones_on(cp.goal_qubit) as f64 / shots as f64;
    Ok(InferenceResult {
        goal: cp.goal.clone(),
        p_true,
        // 1 - x keeps the pair summing to exactly 1.0
        p_false: 1.0 - p_true,
        method: Method::Shots { shots, seed },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub p_true: f64,
    pub enumerated_assignments: u64,
    pub total_weight: f64,
}

/// Classical ground truth: enumerates every truth assignment of the base
/// facts, weights it by the independent fact probabilities and evaluates the
/// rule network directly.
pub fn oracle(rs: &RuleSet) -> Result<OracleResult, InferenceError> {
    let diagnostics = validate(rs);
    if !diagnostics.is_empty() {
        return Err(InferenceError::Invalid(diagnostics));
    }
    let k = rs.base_facts.len();
    if k > MAX_ORACLE_FACTS {
        return Err(InferenceError::OracleBudget(k));
    }
    let order = topo_order(rs).expect("validated rule set is acyclic");
    let p: Vec<f64> = rs.base_facts.values().map(|&d| fact_amplitudes(d).p_true()).collect();

    let mut p_true = 0.0;
    let mut total_weight = 0.0;
    let mut values: HashMap<&str, bool> = HashMap::with_capacity(k + rs.rules.len());
    for assignment in 0u64..1 << k {
        values.clear();
        let mut weight = 1.0;
        for (i, name) in rs.base_facts.keys().enumerate() {
            let v = assignment >> i & 1 == 1;
            weight *= if v { p[i] } else { 1.0 - p[i] };
            values.insert(name, v);
        }
        total_weight += weight;
        if weight == 0.0 {
            continue;
        }
        for rule in &order {
            let v = rule.premise.eval(&|f| values[f]);
            values.insert(&rule.conclusion, v);
        }
        if values[rs.goal.as_str()] {
            p_true += weight;
        }
    }
    Ok(OracleResult { p_true, enumerated_assignments: 1 << k, total_weight })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub exact: f64,
    pub oracle: f64,
    pub abs_diff: f64,
    pub passed: bool,
}

/// Compiles, simulates and enumerates `rs`, comparing the goal probabilities.
pub fn cross_validate(rs: &RuleSet) -> Result<CrossValidation, CrossValidationError> {
    let cp = crate::qcompile::compile(rs)?;
    let exact = infer_exact(&cp)?.p_true;
    let oracle = oracle(rs)?.p_true;
    let abs_diff = (exact - oracle).abs();
    Ok(CrossValidation { exact, oracle, abs_diff, passed: abs_diff <= AGREEMENT_TOLERANCE })
}

#[derive(Debug, Error, PartialEq)]
pub enum CrossValidationError {
    #[error(transparent)]
    Compile(#[from] crate::qcompile::CompileError),
    #[error(transparent)]
    Inference(#[from] InferenceError),
}
