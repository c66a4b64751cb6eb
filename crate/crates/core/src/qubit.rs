//! Exact 2x2 Hermitian operator arithmetic in the Pauli basis.
//!
//! Every operator handled here is a real combination `H = scalar*I + vec . sigma`,
//! so eigenvalues, traces, and products reduce to scalar arithmetic on
//! `(scalar, vec)`: the eigenvalues of `H` are `scalar +/- |vec|` and
//! `Tr[H K] = 2 (scalar_H scalar_K + vec_H . vec_K)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for Hermiticity and trace checks on ingested dense matrices.
pub const INPUT_TOL: f64 = 1e-10;
/// Tolerance for internal closed-form identities (state norms, effect bounds).
pub const IDENTITY_TOL: f64 = 1e-12;
/// Below this norm a Pauli vector has no usable direction.
pub const DEGENERATE_VEC_NORM: f64 = 1e-14;

pub type Vec3 = [f64; 3];
/// Dense 2x2 complex matrix, row major.
pub type Matrix2 = [[Complex64; 2]; 2];

pub(crate) fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3(v: Vec3) -> f64 {
    dot3(v, v).sqrt()
}

pub(crate) fn scale3(v: Vec3, c: f64) -> Vec3 {
    [c * v[0], c * v[1], c * v[2]]
}

pub(crate) fn neg3(v: Vec3) -> Vec3 {
    [-v[0], -v[1], -v[2]]
}

/// A Hermitian 2x2 operator `H = scalar*I + vec . sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianOp {
    /// Coefficient of the identity.
    pub scalar: f64,
    /// Coefficients of (sigma_1, sigma_2, sigma_3).
    pub vec: Vec3,
}

impl HermitianOp {
    pub fn new(scalar: f64, vec: Vec3) -> Self {
        Self { scalar, vec }
    }

    /// Eigenvalues `(scalar - |vec|, scalar + |vec|)`, ascending.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let n = norm3(self.vec);
        (self.scalar - n, self.scalar + n)
    }

    /// Pauli coefficients of a dense Hermitian matrix:
    /// `scalar = Tr[M]/2`, `vec_k = Tr[M sigma_k]/2`.
    pub fn decompose(m: &Matrix2) -> Result<Self> {
        let deviation = (m[0][0] - m[0][0].conj())
            .norm()
            .max((m[1][1] - m[1][1].conj()).norm())
            .max((m[0][1] - m[1][0].conj()).norm());
        if deviation > INPUT_TOL {
            return Err(Error::NonHermitianInput { deviation });
        }
        let scalar = 0.5 * (m[0][0] + m[1][1]).re;
        let vec = [
            0.5 * (m[0][1] + m[1][0]).re,
            0.5 * (Complex64::i() * (m[0][1] - m[1][0])).re,
            0.5 * (m[0][0] - m[1][1]).re,
        ];
        Ok(Self { scalar, vec })
    }

    /// Dense matrix `scalar*I + vec . sigma`.
    pub fn reconstruct(&self) -> Matrix2 {
        let [x, y, z] = self.vec;
        [
            [Complex64::new(self.scalar + z, 0.0), Complex64::new(x, -y)],
            [Complex64::new(x, y), Complex64::new(self.scalar - z, 0.0)],
        ]
    }

    /// Trace of the positive part: sum of the strictly positive eigenvalues.
    pub fn positive_part_trace(&self) -> f64 {
        let (lo, hi) = self.eigenvalues();
        lo.max(0.0) + hi.max(0.0)
    }

    /// Orthogonal projector onto the strictly positive eigenspace, encoded as
    /// the `pi_0` effect of a binary test.
    ///
    /// Zero eigenvalues are excluded. Errors with [`Error::DegenerateDirection`]
    /// when the rank-one branch is reached but `vec` is too short to normalize.
    pub fn positive_part_projector(&self) -> Result<BinaryTest> {
        let n = norm3(self.vec);
        if self.scalar - n > 0.0 {
            Ok(BinaryTest::from_parts_unchecked(1.0, [0.0; 3]))
        } else if self.scalar + n > 0.0 {
            if n < DEGENERATE_VEC_NORM {
                return Err(Error::DegenerateDirection(DEGENERATE_VEC_NORM));
            }
            Ok(BinaryTest::from_parts_unchecked(
                0.5,
                scale3(self.vec, 0.5 / n),
            ))
        } else {
            Ok(BinaryTest::from_parts_unchecked(0.0, [0.0; 3]))
        }
    }
}

/// A qubit state stored as its half-Bloch vector `s`, with `s_k = Tr[rho sigma_k]/2`,
/// so `rho = I/2 + s . sigma` and `|s| <= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    s: Vec3,
}

impl QubitState {
    /// Builds a state from its half-Bloch vector (`|s| <= 1/2`).
    pub fn from_half_bloch(s: Vec3) -> Result<Self> {
        let n = norm3(s);
        if n > 0.5 + IDENTITY_TOL {
            return Err(Error::InvalidState(format!(
                "Bloch vector norm {} exceeds 1",
                2.0 * n
            )));
        }
        Ok(Self { s })
    }

    /// Builds a state from a full Bloch vector `r = 2 s` (`|r| <= 1`).
    pub fn from_bloch(r: Vec3) -> Result<Self> {
        Self::from_half_bloch(scale3(r, 0.5))
    }

    /// Ingests a dense density matrix: Hermitian, unit trace, positive.
    pub fn from_matrix(m: &Matrix2) -> Result<Self> {
        let op = HermitianOp::decompose(m)?;
        if (op.scalar - 0.5).abs() > INPUT_TOL {
            return Err(Error::InvalidState(format!(
                "trace {} differs from 1",
                2.0 * op.scalar
            )));
        }
        Self::from_half_bloch(op.vec)
    }

    /// The pure state `cos(theta/2)|0> + sin(theta/2)|1>` at angle `theta`
    /// from the z axis in the xz plane of the Bloch sphere.
    pub fn pure_xz(theta: f64) -> Self {
        Self {
            s: [0.5 * theta.sin(), 0.0, 0.5 * theta.cos()],
        }
    }

    pub fn half_bloch(&self) -> Vec3 {
        self.s
    }

    pub fn bloch(&self) -> Vec3 {
        scale3(self.s, 2.0)
    }

    /// `Tr[rho^2] = 1/2 + 2|s|^2`, in `[1/2, 1]`.
    pub fn purity(&self) -> f64 {
        0.5 + 2.0 * dot3(self.s, self.s)
    }

    pub fn to_operator(&self) -> HermitianOp {
        HermitianOp::new(0.5, self.s)
    }

    pub fn density_matrix(&self) -> Matrix2 {
        self.to_operator().reconstruct()
    }
}

/// A two-outcome POVM `{pi_0, pi_1 = I - pi_0}` stored as the Pauli
/// coefficients of `pi_0 = a*I + b . sigma`; positivity of both effects
/// requires `0 <= a - |b|` and `a + |b| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryTest {
    a: f64,
    b: Vec3,
}

impl BinaryTest {
    pub fn new(a: f64, b: Vec3) -> Result<Self> {
        let n = norm3(b);
        if a - n < -IDENTITY_TOL || a + n > 1.0 + IDENTITY_TOL {
            return Err(Error::InvalidTest(format!(
                "coefficients a = {a}, |b| = {n} violate 0 <= a - |b| and a + |b| <= 1"
            )));
        }
        Ok(Self { a, b })
    }

    pub(crate) fn from_parts_unchecked(a: f64, b: Vec3) -> Self {
        Self { a, b }
    }

    /// The trivial test with `pi_0 = I` (always outputs 0).
    pub fn always_accept() -> Self {
        Self {
            a: 1.0,
            b: [0.0; 3],
        }
    }

    /// The trivial test with `pi_0 = 0` (always outputs 1).
    pub fn always_reject() -> Self {
        Self {
            a: 0.0,
            b: [0.0; 3],
        }
    }

    /// Rank-one projector `(I + axis . sigma)/2` onto a unit Bloch axis.
    pub fn projector(axis: Vec3) -> Result<Self> {
        let n = norm3(axis);
        if n < DEGENERATE_VEC_NORM {
            return Err(Error::DegenerateDirection(DEGENERATE_VEC_NORM));
        }
        Ok(Self {
            a: 0.5,
            b: scale3(axis, 0.5 / n),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> Vec3 {
        self.b
    }

    /// The swapped test `{pi_1, pi_0}`.
    pub fn complement(&self) -> Self {
        Self {
            a: 1.0 - self.a,
            b: neg3(self.b),
        }
    }

    pub fn effect_matrix(&self) -> Matrix2 {
        HermitianOp::new(self.a, self.b).reconstruct()
    }

    pub fn is_rank_one_projective(&self, tol: f64) -> bool {
        (self.a - 0.5).abs() <= tol && (norm3(self.b) - 0.5).abs() <= tol
    }
}

/// Born rule for the `pi_0` outcome: `Tr[rho pi_0] = a + 2 s . b`.
pub fn born(state: &QubitState, test: &BinaryTest) -> f64 {
    test.a + 2.0 * dot3(state.s, test.b)
}

/// `Tr[rho_x rho_y] = 1/2 + 2 s_x . s_y`.
pub fn overlap(x: &QubitState, y: &QubitState) -> f64 {
    0.5 + 2.0 * dot3(x.s, y.s)
}
