//! Subjective disbelief and its encoding as a rotation angle.
//!
//! A fact with disbelief `δ ∈ [0, 100]` gets the angle `α = πδ/100` and the
//! rotation `θ = (π − α)/2`. The fact reads TRUE with probability `sin²θ`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use thiserror::Error;

use crate::qgates::GateKind;

#[derive(Debug, Error, PartialEq)]
pub enum UncertaintyError {
    #[error("disbelief {0} is outside [0, 100]")]
    DisbeliefRange(f64),
    #[error("credibility {0} is outside [0, 100]")]
    CredibilityRange(f64),
    #[error("alpha {0} is outside [0, pi]")]
    AlphaRange(f64),
}

/// Degree of subjective disbelief in a fact, on `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Disbelief(f64);

impl Disbelief {
    pub const CERTAIN: Disbelief = Disbelief(0.0);
    pub const UNKNOWN: Disbelief = Disbelief(50.0);
    pub const FALSE: Disbelief = Disbelief(100.0);

    pub fn new(delta: f64) -> Result<Self, UncertaintyError> {
        if (0.0..=100.0).contains(&delta) {
            Ok(Disbelief(delta))
        } else {
            Err(UncertaintyError::DisbeliefRange(delta))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn credibility(self) -> Credibility {
        Credibility(100.0 - self.0)
    }

    /// Disbelief of the negated statement, `100 − δ`.
    pub fn complement(self) -> Disbelief {
        Disbelief(100.0 - self.0)
    }
}

impl fmt::Display for Disbelief {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Confidence in a fact, `100 − δ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Credibility(f64);

impl Credibility {
    pub fn new(value: f64) -> Result<Self, UncertaintyError> {
        if (0.0..=100.0).contains(&value) {
            Ok(Credibility(value))
        } else {
            Err(UncertaintyError::CredibilityRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn disbelief(self) -> Disbelief {
        Disbelief(100.0 - self.0)
    }
}

/// Amplitudes of a prepared fact in abstract TRUE/FALSE roles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactAmplitudes {
    pub theta: f64,
    pub amp_true: f64,
    pub amp_false: f64,
}

impl FactAmplitudes {
    pub fn p_true(&self) -> f64 {
        self.amp_true * self.amp_true
    }

    pub fn p_false(&self) -> f64 {
        self.amp_false * self.amp_false
    }
}

pub fn delta_to_alpha(d: Disbelief) -> f64 {
    PI * (d.value() / 100.0)
}

pub fn alpha_to_theta(alpha: f64) -> Result<f64, UncertaintyError> {
    if !(0.0..=PI).contains(&alpha) {
        return Err(UncertaintyError::AlphaRange(alpha));
    }
    Ok((PI - alpha) / 2.0)
}

pub fn theta_of(d: Disbelief) -> f64 {
    // delta_to_alpha always lands in [0, pi]
    (PI - delta_to_alpha(d)) / 2.0
}

pub fn fact_amplitudes(d: Disbelief) -> FactAmplitudes {
    let theta = theta_of(d);
    let (amp_true, amp_false) = theta.sin_cos();
    FactAmplitudes { theta, amp_true, amp_false }
}

/// `M(θ)` for the fact's disbelief. On `|0⟩` it yields moduli
/// `(sin θ, cos θ)`, i.e. TRUE on `|0⟩`.
pub fn uncertainty_gate(d: Disbelief) -> GateKind {
    GateKind::M(theta_of(d))
}

/// Qualitative reading of a disbelief value, one per decade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    True,
    AlmostCertainlyTrue,
    VeryLikely,
    Likely,
    SomewhatLikely,
    Unknown,
    SomewhatUnlikely,
    Unlikely,
    VeryUnlikely,
    AlmostCertainlyFalse,
    False,
}

impl Label {
    pub const ALL: [Label; 11] = [
        Label::True,
        Label::AlmostCertainlyTrue,
        Label::VeryLikely,
        Label::Likely,
        Label::SomewhatLikely,
        Label::Unknown,
        Label::SomewhatUnlikely,
        Label::Unlikely,
        Label::VeryUnlikely,
        Label::AlmostCertainlyFalse,
        Label::False,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::True => "True",
            Label::AlmostCertainlyTrue => "Almost Certainly True",
            Label::VeryLikely => "Very Likely",
            Label::Likely => "Likely",
            Label::SomewhatLikely => "Somewhat Likely",
            Label::Unknown => "Unknown",
            Label::SomewhatUnlikely => "Somewhat Unlikely",
            Label::Unlikely => "Unlikely",
            Label::VeryUnlikely => "Very Unlikely",
            Label::AlmostCertainlyFalse => "Almost Certainly False",
            Label::False => "False",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Nearest-decade label; a value halfway between two decades goes to the
/// one closer to 50.
pub fn qualitative_label(d: Disbelief) -> Label {
    let scaled = d.value() / 10.0;
    let lower = scaled.floor();
    let frac = scaled - lower;
    let decade = if frac > 0.5 {
        lower + 1.0
    } else if frac < 0.5 {
        lower
    } else if lower < 5.0 {
        lower + 1.0
    } else {
        lower
    };
    Label::ALL[decade.clamp(0.0, 10.0) as usize]
}

/// `θ` back to disbelief, inverse of [`theta_of`].
pub fn theta_to_delta(theta: f64) -> f64 {
    100.0 * (1.0 - theta / FRAC_PI_2)
}
