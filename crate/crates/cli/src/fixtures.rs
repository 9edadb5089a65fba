//! Published reference values the generated tables are compared against.
//!
//! Decimal commas of the source tables are normalized to points.

#![allow(clippy::approx_constant)]

/// Table 5 rows: alpha, theta, |amp0|, |amp1|, P(0), P(1).
pub const TABLE5: [[f64; 6]; 19] = [
    [0.0000, 1.5708, 1.00000, 0.00000, 1.00000, 0.00000],
    [0.1745, 1.4835, 0.99619, 0.08716, 0.99239, 0.00668],
    [0.3491, 1.3963, 0.98481, 0.17365, 0.96985, 0.03015],
    [0.5236, 1.3090, 0.96593, 0.25882, 0.93302, 0.06699],
    [0.6981, 1.2217, 0.93969, 0.34202, 0.88301, 0.11698],
    [0.8727, 1.1345, 0.90631, 0.42262, 0.82140, 0.17861],
    [1.0472, 1.0472, 0.86603, 0.50000, 0.75001, 0.25000],
    [1.2217, 0.9599, 0.81915, 0.57358, 0.67101, 0.32899],
    [1.3963, 0.8727, 0.76604, 0.64279, 0.58682, 0.41318],
    [1.5708, 0.7854, 0.70711, 0.70711, 0.50000, 0.50000],
    [1.7453, 0.6981, 0.64279, 0.76604, 0.41318, 0.58682],
    [1.9199, 0.6109, 0.57358, 0.81915, 0.32899, 0.67101],
    [2.0944, 0.5236, 0.50000, 0.86603, 0.25000, 0.75001],
    [2.2689, 0.4363, 0.42262, 0.90631, 0.17861, 0.82140],
    [2.4435, 0.3491, 0.34202, 0.93969, 0.11698, 0.88302],
    [2.6180, 0.2618, 0.25882, 0.96593, 0.06699, 0.93302],
    [2.7925, 0.1745, 0.17365, 0.98481, 0.03015, 0.96985],
    // |amp0| and P(0) of this row disagree with sin(0.0873) in the source
    [2.9671, 0.0873, 0.08761, 0.99619, 0.00768, 0.99240],
    [3.1416, 0.0000, 0.00000, 1.00000, 0.00000, 1.00000],
];

/// Row of the last Table 5 entry whose two cells are known misprints.
pub const TABLE5_MISPRINT_ROW: usize = 17;

pub struct Table6Row {
    pub disbelief: f64,
    pub credibility: f64,
    pub label: &'static str,
    pub theta: f64,
    pub ket0: f64,
    pub ket1: f64,
    pub p_true: f64,
    pub p_false: f64,
}

#[allow(clippy::too_many_arguments)]
const fn t6(
    disbelief: f64,
    credibility: f64,
    label: &'static str,
    theta: f64,
    ket0: f64,
    ket1: f64,
    p_true: f64,
    p_false: f64,
) -> Table6Row {
    Table6Row { disbelief, credibility, label, theta, ket0, ket1, p_true, p_false }
}

pub const TABLE6: [Table6Row; 11] = [
    t6(0.0, 100.0, "True", 1.57080, 1.000, 0.000, 1.000, 0.000),
    t6(10.0, 90.0, "Almost Certainly True", 1.41372, 0.988, 0.156, 0.976, 0.024),
    t6(20.0, 80.0, "Very Likely", 1.25664, 0.951, 0.309, 0.905, 0.095),
    t6(30.0, 70.0, "Likely", 1.09956, 0.891, 0.454, 0.794, 0.206),
    t6(40.0, 60.0, "Somewhat Likely", 0.94248, 0.809, 0.588, 0.655, 0.345),
    t6(50.0, 50.0, "Unknown", 0.78540, 0.707, 0.707, 0.500, 0.500),
    t6(60.0, 40.0, "Somewhat Unlikely", 0.62832, 0.588, 0.809, 0.345, 0.655),
    t6(70.0, 30.0, "Unlikely", 0.47124, 0.454, 0.891, 0.206, 0.794),
    t6(80.0, 20.0, "Very Unlikely", 0.31416, 0.309, 0.951, 0.095, 0.905),
    t6(90.0, 10.0, "Almost Certainly False", 0.15708, 0.156, 0.988, 0.024, 0.976),
    t6(100.0, 0.0, "False", 0.00000, 0.000, 1.000, 0.000, 1.000),
];

/// Table 7 rows: disbelief, P(true), P(false), amp |0⟩, amp |1⟩.
pub const TABLE7: [[f64; 5]; 11] = [
    [0.0, 1.00000, 0.00000, 1.000, 0.000],
    [10.0, 0.97504, 0.02496, 0.987, 0.158],
    [20.0, 0.90394, 0.09606, 0.951, 0.310],
    [30.0, 0.79289, 0.20711, 0.890, 0.455],
    [40.0, 0.65335, 0.34665, 0.808, 0.589],
    [50.0, 0.49899, 0.50101, 0.706, 0.708],
    [60.0, 0.34623, 0.65377, 0.588, 0.809],
    [70.0, 0.20523, 0.79477, 0.453, 0.891],
    [80.0, 0.09506, 0.90494, 0.308, 0.951],
    [90.0, 0.02496, 0.97504, 0.158, 0.987],
    [100.0, 0.00000, 1.00000, 0.000, 1.000],
];

/// Goal probabilities reported for the all-unknown example network, as
/// printed (true, false).
pub const HEADLINE_PAIR: (f64, f64) = (0.53205, 0.46795);

/// Table 8, fixture version 1: disbeliefs of A..E and the printed P(true).
pub const TABLE8_VERSION: u32 = 1;

pub const TABLE8: [([f64; 5], f64); 28] = [
    ([0.0, 0.0, 20.0, 0.0, 0.0], 1.000),
    ([20.0, 60.0, 0.0, 0.0, 20.0], 0.994),
    ([40.0, 80.0, 0.0, 20.0, 20.0], 0.945),
    ([60.0, 100.0, 20.0, 0.0, 0.0], 1.000),
    ([80.0, 80.0, 20.0, 0.0, 20.0], 0.920),
    ([100.0, 60.0, 20.0, 20.0, 20.0], 0.874),
    ([0.0, 40.0, 0.0, 0.0, 0.0], 1.000),
    ([20.0, 20.0, 0.0, 0.0, 20.0], 1.000),
    ([40.0, 0.0, 0.0, 20.0, 0.0], 1.000),
    ([60.0, 20.0, 0.0, 20.0, 20.0], 0.989),
    ([80.0, 40.0, 20.0, 0.0, 0.0], 1.000),
    ([100.0, 60.0, 20.0, 0.0, 20.0], 0.936),
    ([0.0, 80.0, 20.0, 20.0, 0.0], 0.991),
    ([20.0, 100.0, 20.0, 20.0, 20.0], 0.967),
    ([40.0, 80.0, 0.0, 0.0, 0.0], 1.000),
    ([60.0, 60.0, 0.0, 0.0, 20.0], 0.957),
    ([80.0, 40.0, 0.0, 20.0, 0.0], 0.968),
    ([100.0, 20.0, 0.0, 20.0, 20.0], 0.985),
    ([0.0, 0.0, 20.0, 0.0, 0.0], 1.000),
    ([20.0, 100.0, 20.0, 0.0, 20.0], 0.984),
    ([40.0, 80.0, 20.0, 20.0, 80.0], 0.657),
    ([60.0, 60.0, 20.0, 60.0, 20.0], 0.671),
    ([0.0, 0.0, 0.0, 0.0, 0.0], 1.000),
    ([20.0, 20.0, 20.0, 20.0, 20.0], 0.981),
    ([40.0, 40.0, 40.0, 40.0, 0.0], 0.854),
    ([60.0, 60.0, 60.0, 0.0, 20.0], 0.927),
    ([80.0, 80.0, 20.0, 20.0, 0.0], 0.914),
    ([100.0, 100.0, 100.0, 100.0, 100.0], 0.000),
];

/// The five-fact example network; disbeliefs are filled in per experiment.
pub const EXAMPLE_NETWORK: &str = "\
fact A disbelief 50
fact B disbelief 50
fact C disbelief 50
fact D disbelief 50
fact E disbelief 50
rule R1: if A and B then X
rule R2: if X or C then Y
rule R3: if Y and (D or E) then R
goal R
";
