//! Fixed catalog of single-qubit gates and 2×2 complex matrix algebra.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use thiserror::Error;

/// Complex amplitude of a basis state.
pub type Amplitude = Complex64;

const ZERO: Amplitude = Complex64::new(0.0, 0.0);
const ONE: Amplitude = Complex64::new(1.0, 0.0);

/// Normalization slack accepted by [`modulus_amplitudes`].
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GateError {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("gate product must contain at least one gate")]
    EmptyProduct,
    #[error("amplitude pair is not normalized: |a|^2 + |b|^2 = {0}")]
    NotNormalized(f64),
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2([[Amplitude; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[ONE, ZERO], [ZERO, ONE]]);

    /// Builds a matrix, rejecting NaN or infinite entries.
    pub fn new(entries: [[Amplitude; 2]; 2]) -> Result<Self, GateError> {
        for (row, r) in entries.iter().enumerate() {
            for (col, z) in r.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(GateError::NonFinite { row, col });
                }
            }
        }
        Ok(Matrix2(entries))
    }

    pub fn from_real(entries: [[f64; 2]; 2]) -> Result<Self, GateError> {
        Self::new(entries.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn entries(&self) -> &[[Amplitude; 2]; 2] {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        self.0[row][col]
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix2 {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.dagger()).max_abs_diff(&Matrix2::IDENTITY) <= tol
    }

    /// Matrix-vector product on a single-qubit ket `(a, b)`.
    pub fn apply(&self, ket: [Amplitude; 2]) -> [Amplitude; 2] {
        let m = &self.0;
        [m[0][0] * ket[0] + m[0][1] * ket[1], m[1][0] * ket[0] + m[1][1] * ket[1]]
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Matrix2(out)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "(({}, {}), ({}, {}))", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// The gates the compiler and simulator understand.
///
/// `M(theta)` is the real reflection `((sin θ, cos θ), (cos θ, −sin θ))` used
/// to prepare a fact with a given degree of disbelief.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    H,
    S,
    T,
    Z,
    M(f64),
}

impl GateKind {
    pub fn matrix(&self) -> Matrix2 {
        matrix_of(*self)
    }

    /// Short mnemonic used in circuit listings.
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::T => "T",
            GateKind::Z => "Z",
            GateKind::M(_) => "M",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::M(theta) => write!(f, "M(theta={theta:.6})"),
            other => f.write_str(other.name()),
        }
    }
}

pub fn matrix_of(kind: GateKind) -> Matrix2 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let m = match kind {
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::H => [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]],
        GateKind::S => [[ONE, ZERO], [ZERO, c(0.0, 1.0)]],
        GateKind::T => [[ONE, ZERO], [ZERO, c(s, s)]],
        GateKind::Z => [[ONE, ZERO], [ZERO, c(-1.0, 0.0)]],
        GateKind::M(theta) => {
            let (sin, cos) = theta.sin_cos();
            [[c(sin, 0.0), c(cos, 0.0)], [c(cos, 0.0), c(-sin, 0.0)]]
        }
    };
    Matrix2(m)
}

pub fn mat_mul(a: Matrix2, b: Matrix2) -> Matrix2 {
    a * b
}

pub fn dagger(a: Matrix2) -> Matrix2 {
    a.dagger()
}

pub fn is_unitary(a: Matrix2, tol: f64) -> bool {
    a.is_unitary(tol)
}

/// Result of applying a gate product to `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KetAction {
    pub amplitudes: [Amplitude; 2],
    pub prob0: f64,
    pub prob1: f64,
}

/// Multiplies `kinds` as written (`[H, T, H]` is `H·T·H`) and applies the
/// product to `|0⟩`.
pub fn product_action_on_ket0(kinds: &[GateKind]) -> Result<KetAction, GateError> {
    let product = kinds.iter().map(GateKind::matrix).reduce(|acc, m| acc * m).ok_or(GateError::EmptyProduct)?;
    let amplitudes = product.apply([ONE, ZERO]);
    Ok(KetAction { amplitudes, prob0: amplitudes[0].norm_sqr(), prob1: amplitudes[1].norm_sqr() })
}

/// Drops phases and keeps the moduli of a normalized amplitude pair.
pub fn modulus_amplitudes(pair: [Amplitude; 2]) -> Result<(f64, f64), GateError> {
    let total = pair[0].norm_sqr() + pair[1].norm_sqr();
    if !total.is_finite() || (total - 1.0).abs() > NORM_TOLERANCE {
        return Err(GateError::NotNormalized(total));
    }
    Ok((pair[0].norm(), pair[1].norm()))
}
