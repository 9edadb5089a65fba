//! Rule-based inference under subjective uncertainty, carried out on a
//! simulated quantum register.
//!
//! Facts carry a degree of disbelief `δ ∈ [0, 100]` which is mapped to a
//! single-qubit rotation. Categorical rules are compiled into reversible
//! blocks (Toffoli-based AND/OR, copy-and-flip NOT), the resulting circuit is
//! simulated on a dense state vector and the goal qubit is measured. A
//! classical enumeration oracle computes the same probability independently.

pub mod inference;
pub mod qcompile;
pub mod qgates;
pub mod ruledsl;
pub mod statevec;
pub mod uncertainty;

pub use inference::{cross_validate, infer_exact, infer_shots, oracle, InferenceResult, Method};
pub use qcompile::{compile, CompiledProgram};
pub use qgates::{Amplitude, GateKind, Matrix2};
pub use ruledsl::{parse, Expr, Rule, RuleSet};
pub use statevec::{Circuit, CircuitOp, ShotHistogram, StateVector};
pub use uncertainty::{Credibility, Disbelief, FactAmplitudes, Label};
