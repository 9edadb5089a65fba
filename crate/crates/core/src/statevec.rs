//! Dense state-vector simulation of small registers.
//!
//! Basis index bit `q` holds qubit `q`, so qubit 0 is the least significant
//! bit. Bitstrings are rendered with the highest qubit on the left.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::qgates::{Amplitude, GateKind, Matrix2};

/// Largest register the dense simulator will allocate.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("register of {0} qubits is outside the supported range 1..={MAX_QUBITS}")]
    QubitRange(usize),
    #[error("qubit q{qubit} is out of range for a {n_qubits}-qubit register")]
    QubitIndex { qubit: usize, n_qubits: usize },
    #[error("operation has {0} controls, at most 2 are supported")]
    TooManyControls(usize),
    #[error("qubit q{0} is used twice by the same operation")]
    RepeatedQubit(usize),
    #[error("state has {found} qubits, circuit expects {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("expected {expected} amplitudes, got {found}")]
    Length { expected: usize, found: usize },
    #[error("state is not normalized: total probability {0}")]
    NotNormalized(f64),
    #[error("shot count must be at least 1")]
    NoShots,
}

/// One gate placement: a catalog gate on `target`, fired only when every
/// control qubit reads 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitOp {
    pub gate: GateKind,
    pub target: usize,
    pub controls: Vec<usize>,
}

impl CircuitOp {
    pub fn single(gate: GateKind, target: usize) -> Self {
        CircuitOp { gate, target, controls: Vec::new() }
    }

    pub fn x(target: usize) -> Self {
        Self::single(GateKind::X, target)
    }

    pub fn cn(control: usize, target: usize) -> Self {
        CircuitOp { gate: GateKind::X, target, controls: vec![control] }
    }

    pub fn ccn(c1: usize, c2: usize, target: usize) -> Self {
        CircuitOp { gate: GateKind::X, target, controls: vec![c1, c2] }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<(), SimError> {
        if self.controls.len() > 2 {
            return Err(SimError::TooManyControls(self.controls.len()));
        }
        for &q in std::iter::once(&self.target).chain(&self.controls) {
            if q >= n_qubits {
                return Err(SimError::QubitIndex { qubit: q, n_qubits });
            }
        }
        if self.controls.contains(&self.target) {
            return Err(SimError::RepeatedQubit(self.target));
        }
        if let [a, b] = self.controls[..] {
            if a == b {
                return Err(SimError::RepeatedQubit(a));
            }
        }
        Ok(())
    }

    /// True for X, CN and CCN, which map basis states to basis states.
    pub fn is_permutation(&self) -> bool {
        self.gate == GateKind::X
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub ops: Vec<CircuitOp>,
    pub measured_qubit: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize, measured_qubit: usize) -> Self {
        Circuit { n_qubits, ops: Vec::new(), measured_qubit }
    }

    pub fn push(&mut self, op: CircuitOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return Err(SimError::QubitRange(self.n_qubits));
        }
        if self.measured_qubit >= self.n_qubits {
            return Err(SimError::QubitIndex { qubit: self.measured_qubit, n_qubits: self.n_qubits });
        }
        self.ops.iter().try_for_each(|op| op.validate(self.n_qubits))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

impl StateVector {
    /// All qubits in `|0⟩`.
    pub fn init_zero(n: usize) -> Result<Self, SimError> {
        Self::basis(n, 0)
    }

    /// The computational basis state with the given index.
    pub fn basis(n: usize, index: usize) -> Result<Self, SimError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(SimError::QubitRange(n));
        }
        let len = 1usize << n;
        if index >= len {
            return Err(SimError::Length { expected: len, found: index + 1 });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); len];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits: n, amplitudes })
    }

    pub fn from_amplitudes(n: usize, amplitudes: Vec<Amplitude>) -> Result<Self, SimError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(SimError::QubitRange(n));
        }
        if amplitudes.len() != 1 << n {
            return Err(SimError::Length { expected: 1 << n, found: amplitudes.len() });
        }
        let state = StateVector { n_qubits: n, amplitudes };
        let norm = state.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
            return Err(SimError::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply(&mut self, op: &CircuitOp) -> Result<(), SimError> {
        op.validate(self.n_qubits)?;
        let m = op.gate.matrix();
        let tbit = 1usize << op.target;
        let cmask = op.controls.iter().fold(0usize, |mask, &c| mask | (1 << c));
        if op.is_permutation() {
            for i in 0..self.amplitudes.len() {
                if i & tbit == 0 && i & cmask == cmask {
                    self.amplitudes.swap(i, i | tbit);
                }
            }
            return Ok(());
        }
        for i in 0..self.amplitudes.len() {
            if i & tbit != 0 || i & cmask != cmask {
                continue;
            }
            let j = i | tbit;
            let [a, b] = m.apply([self.amplitudes[i], self.amplitudes[j]]);
            self.amplitudes[i] = a;
            self.amplitudes[j] = b;
        }
        Ok(())
    }

    /// Applies a bare 2×2 matrix to one qubit.
    pub fn apply_matrix(&mut self, m: &Matrix2, target: usize) -> Result<(), SimError> {
        if target >= self.n_qubits {
            return Err(SimError::QubitIndex { qubit: target, n_qubits: self.n_qubits });
        }
        let tbit = 1usize << target;
        for i in (0..self.amplitudes.len()).filter(|i| i & tbit == 0) {
            let [a, b] = m.apply([self.amplitudes[i], self.amplitudes[i | tbit]]);
            self.amplitudes[i] = a;
            self.amplitudes[i | tbit] = b;
        }
        Ok(())
    }

    pub fn marginal_prob_one(&self, qubit: usize) -> Result<f64, SimError> {
        if qubit >= self.n_qubits {
            return Err(SimError::QubitIndex { qubit, n_qubits: self.n_qubits });
        }
        let bit = 1usize << qubit;
        Ok(self.amplitudes.iter().enumerate().filter(|(i, _)| i & bit != 0).map(|(_, a)| a.norm_sqr()).sum())
    }

    /// Draws `shots` basis states from the Born distribution.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<ShotHistogram, SimError> {
        self.sample_stream(shots, seed, 0)
    }

    /// Like [`sample`](Self::sample) but on an independent ChaCha stream, so
    /// several histograms can share one user-facing seed.
    pub fn sample_stream(&self, shots: u64, seed: u64, stream: u64) -> Result<ShotHistogram, SimError> {
        if shots == 0 {
            return Err(SimError::NoShots);
        }
        let dist = WeightedIndex::new(self.probabilities()).map_err(|_| SimError::NotNormalized(self.norm_sqr()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            *counts.entry(dist.sample(&mut rng)).or_insert(0) += 1;
        }
        Ok(ShotHistogram { n_qubits: self.n_qubits, shots, seed, counts })
    }
}

/// Runs every op of `circuit` in order, starting from `initial`.
pub fn run(circuit: &Circuit, initial: StateVector) -> Result<StateVector, SimError> {
    if initial.n_qubits != circuit.n_qubits {
        return Err(SimError::WidthMismatch { expected: circuit.n_qubits, found: initial.n_qubits });
    }
    circuit.validate()?;
    let mut state = initial;
    for op in &circuit.ops {
        state.apply(op)?;
    }
    Ok(state)
}

/// Measurement counts keyed by basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotHistogram {
    pub n_qubits: usize,
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl ShotHistogram {
    pub fn bitstring(&self, index: usize) -> String {
        (0..self.n_qubits).rev().map(|q| if index >> q & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// Count for a bitstring written highest qubit first.
    pub fn count_bits(&self, bits: &str) -> u64 {
        usize::from_str_radix(bits, 2).map(|i| self.count(i)).unwrap_or(0)
    }

    /// Number of shots in which `qubit` read 1.
    pub fn ones_on(&self, qubit: usize) -> u64 {
        self.counts.iter().filter(|(i, _)| *i >> qubit & 1 == 1).map(|(_, c)| c).sum()
    }

    pub fn by_bitstring(&self) -> BTreeMap<String, u64> {
        self.counts.iter().map(|(&i, &c)| (self.bitstring(i), c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Amplitude {
        Complex64::new(re, im)
    }

    fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
        a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_register() {
        assert_eq!(StateVector::init_zero(1).unwrap().amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(StateVector::init_zero(2).unwrap().amplitudes().len(), 4);
        assert_eq!(StateVector::init_zero(2).unwrap().amplitudes()[0], c(1.0, 0.0));
        assert_eq!(StateVector::init_zero(25), Err(SimError::QubitRange(25)));
        assert_eq!(StateVector::init_zero(0), Err(SimError::QubitRange(0)));
    }

    #[test]
    fn single_gates() {
        let mut s = StateVector::init_zero(1).unwrap();
        s.apply(&CircuitOp::x(0)).unwrap();
        assert_eq!(s, StateVector::basis(1, 1).unwrap());

        let mut s = StateVector::init_zero(1).unwrap();
        s.apply(&CircuitOp::single(GateKind::H, 0)).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn toffoli_fires_on_both_controls() {
        // q0=0, q1=1, q2=1
        let mut s = StateVector::basis(3, 0b110).unwrap();
        s.apply(&CircuitOp::ccn(1, 2, 0)).unwrap();
        assert_eq!(s, StateVector::basis(3, 0b111).unwrap());

        let mut s = StateVector::basis(3, 0b010).unwrap();
        s.apply(&CircuitOp::ccn(1, 2, 0)).unwrap();
        assert_eq!(s, StateVector::basis(3, 0b010).unwrap());
    }

    #[test]
    fn invalid_ops_are_rejected() {
        let mut s = StateVector::init_zero(2).unwrap();
        assert_eq!(s.apply(&CircuitOp::x(2)), Err(SimError::QubitIndex { qubit: 2, n_qubits: 2 }));
        assert_eq!(s.apply(&CircuitOp::cn(1, 1)), Err(SimError::RepeatedQubit(1)));
        assert_eq!(s.apply(&CircuitOp::ccn(0, 0, 1)), Err(SimError::RepeatedQubit(0)));
        let op = CircuitOp { gate: GateKind::X, target: 0, controls: vec![1, 2, 3] };
        assert_eq!(op.validate(4), Err(SimError::TooManyControls(3)));
    }

    #[test]
    fn run_in_order() {
        let init = StateVector::init_zero(2).unwrap();
        let empty = Circuit::new(2, 0);
        assert_eq!(run(&empty, init.clone()).unwrap(), init);

        let mut twice = Circuit::new(2, 0);
        twice.push(CircuitOp::x(0)).push(CircuitOp::x(0));
        assert_eq!(run(&twice, init.clone()).unwrap(), init);

        let wide = StateVector::init_zero(3).unwrap();
        assert_eq!(run(&empty, wide), Err(SimError::WidthMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn marginals() {
        let s = StateVector::from_amplitudes(1, vec![c(0.0, FRAC_1_SQRT_2), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        assert!((s.marginal_prob_one(0).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(StateVector::basis(1, 1).unwrap().marginal_prob_one(0).unwrap(), 1.0);
        let bell = StateVector::from_amplitudes(
            2,
            vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        )
        .unwrap();
        assert!((bell.marginal_prob_one(1).unwrap() - 0.5).abs() < 1e-12);
        assert!(bell.marginal_prob_one(2).is_err());
    }

    #[test]
    fn from_amplitudes_checks_norm() {
        assert!(matches!(
            StateVector::from_amplitudes(1, vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(SimError::NotNormalized(_))
        ));
        assert!(matches!(
            StateVector::from_amplitudes(1, vec![c(1.0, 0.0)]),
            Err(SimError::Length { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn sampling_a_basis_state() {
        let s = StateVector::basis(1, 1).unwrap();
        for seed in [0, 1, 99] {
            let h = s.sample(100, seed).unwrap();
            assert_eq!(h.by_bitstring(), BTreeMap::from([("1".to_string(), 100)]));
        }
        assert_eq!(s.sample(0, 0), Err(SimError::NoShots));
    }

    /// Smallest k with P(Bin(n, p) <= k) >= q, by summing the pmf in log space.
    fn binomial_quantile(n: u64, p: f64, q: f64) -> u64 {
        let mut log_pmf = (n as f64) * (1.0 - p).ln();
        let mut cdf = log_pmf.exp();
        let mut k = 0;
        while cdf < q {
            log_pmf += ((n - k) as f64).ln() - ((k + 1) as f64).ln() + p.ln() - (1.0 - p).ln();
            k += 1;
            cdf += log_pmf.exp();
        }
        k
    }

    #[test]
    fn sampling_hadamard_within_three_sigma() {
        // the fixed band [3960, 4232] must contain the 3σ two-sided
        // quantiles (0.135% / 99.865%) of Bin(8192, 0.5)
        let lo = binomial_quantile(8192, 0.5, 0.00135);
        let hi = binomial_quantile(8192, 0.5, 0.99865);
        assert!(lo >= 3960 && hi <= 4232, "{lo}..{hi}");

        let mut s = StateVector::init_zero(1).unwrap();
        s.apply(&CircuitOp::single(GateKind::H, 0)).unwrap();
        let h = s.sample(8192, 7).unwrap();
        let zeros = h.count_bits("0");
        assert!((3960..=4232).contains(&zeros), "{zeros}");
        assert_eq!(h, s.sample(8192, 7).unwrap());
        assert_eq!(h.counts.values().sum::<u64>(), 8192);
    }

    #[test]
    fn sampling_converges_within_four_sigma() {
        let mut s = StateVector::init_zero(3).unwrap();
        s.apply(&CircuitOp::single(GateKind::M(0.4), 0)).unwrap();
        s.apply(&CircuitOp::single(GateKind::H, 1)).unwrap();
        s.apply(&CircuitOp::ccn(0, 1, 2)).unwrap();
        s.apply(&CircuitOp::single(GateKind::T, 2)).unwrap();
        let shots = 8192u64;
        let h = s.sample(shots, 3).unwrap();
        for (i, p) in s.probabilities().into_iter().enumerate() {
            let sigma = (p * (1.0 - p) / shots as f64).sqrt();
            let freq = h.count(i) as f64 / shots as f64;
            assert!((freq - p).abs() <= 4.0 * sigma + 1e-12, "outcome {i}: {freq} vs {p}");
        }
    }

    #[test]
    fn bitstrings_put_high_qubit_first() {
        let h = StateVector::basis(3, 0b011).unwrap().sample(5, 0).unwrap();
        assert_eq!(h.bitstring(0b011), "011");
        assert_eq!(h.ones_on(0), 5);
        assert_eq!(h.ones_on(2), 0);
    }

    fn arb_op(n: usize) -> impl Strategy<Value = CircuitOp> {
        let gate = prop_oneof![
            Just(GateKind::X),
            Just(GateKind::H),
            Just(GateKind::S),
            Just(GateKind::T),
            Just(GateKind::Z),
            (-3.2..3.2f64).prop_map(GateKind::M),
        ];
        (gate, proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=3.min(n)), any::<bool>()).prop_map(
            |(gate, mut qs, shuffle)| {
                if shuffle {
                    qs.reverse();
                }
                let target = qs.remove(0);
                CircuitOp { gate, target, controls: qs }
            },
        )
    }

    fn arb_circuit() -> impl Strategy<Value = Circuit> {
        (1usize..=10).prop_flat_map(|n| {
            proptest::collection::vec(arb_op(n), 0..=50).prop_map(move |ops| Circuit {
                n_qubits: n,
                ops,
                measured_qubit: 0,
            })
        })
    }

    fn arb_permutation_circuit() -> impl Strategy<Value = (Circuit, usize)> {
        (3usize..=8).prop_flat_map(|n| {
            let op = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=3).prop_map(|mut qs| {
                let t = qs.pop().unwrap();
                CircuitOp { gate: GateKind::X, target: t, controls: qs }
            });
            (proptest::collection::vec(op, 0..40), 0..(1usize << n))
                .prop_map(move |(ops, basis)| (Circuit { n_qubits: n, ops, measured_qubit: 0 }, basis))
        })
    }

    proptest! {
        #[test]
        fn norm_is_preserved(c in arb_circuit()) {
            let out = run(&c, StateVector::init_zero(c.n_qubits).unwrap()).unwrap();
            prop_assert!((out.norm_sqr() - 1.0).abs() <= 1e-9);
        }

        #[test]
        fn permutation_circuits_map_basis_to_basis((c, basis) in arb_permutation_circuit()) {
            let out = run(&c, StateVector::basis(c.n_qubits, basis).unwrap()).unwrap();
            let unit = out.amplitudes().iter().filter(|a| (a.norm() - 1.0).abs() < 1e-12).count();
            let zero = out.amplitudes().iter().filter(|a| a.norm() == 0.0).count();
            prop_assert_eq!(unit, 1);
            prop_assert_eq!(zero, out.amplitudes().len() - 1);
        }

        #[test]
        fn disjoint_single_qubit_gates_commute(
            prep in arb_circuit(),
            a in 0usize..6, b in 0usize..6, theta in -3.0..3.0f64,
            qa in 0usize..10, qb in 0usize..10,
        ) {
            let n = prep.n_qubits;
            prop_assume!(n >= 2);
            let (qa, qb) = (qa % n, qb % n);
            prop_assume!(qa != qb);
            let kind = |i| [GateKind::X, GateKind::H, GateKind::S, GateKind::T, GateKind::Z, GateKind::M(theta)][i];
            let base = run(&prep, StateVector::init_zero(n).unwrap()).unwrap();
            let (ga, gb) = (CircuitOp::single(kind(a), qa), CircuitOp::single(kind(b), qb));
            let mut ab = base.clone();
            ab.apply(&ga).unwrap();
            ab.apply(&gb).unwrap();
            let mut ba = base;
            ba.apply(&gb).unwrap();
            ba.apply(&ga).unwrap();
            prop_assert!(max_diff(&ab, &ba) <= 1e-12);
        }
    }
}
