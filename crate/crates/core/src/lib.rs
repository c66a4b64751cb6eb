//! Correlation sets of qubit state families under binary tests.
//!
//! For any family of m qubit states, the probability vectors
//! `p_x = Tr[rho_x pi_0]` achievable over all two-outcome POVMs form a convex
//! body with a closed-form description: the convex hull of the two isolated
//! correlations `0` and `u` (all ones) with a low-rank ellipsoid centered at
//! `u/2` whose shape is the Gram matrix `Q = S S^T` of the half-Bloch rows.
//! This crate constructs that body, produces the measurement attaining the
//! boundary in any probing direction, decides membership of observed
//! correlation vectors with checkable certificates, and validates everything
//! against a brute-force random-measurement oracle.
//!
//! Module map:
//! - [`qubit`]: exact 2x2 Pauli-basis algebra (states, binary tests, Born
//!   rule, positive-part projectors),
//! - [`spectral`]: thin factorization of the m x 3 half-Bloch matrix and the
//!   Moore-Penrose quadratic forms of `Q`,
//! - [`correlation`]: support values, extremal tests, the ellipsoid system,
//!   hull membership, boundary sampling, family comparison,
//! - [`oracle`]: random-measurement soundness checks,
//! - [`applications`]: closed forms for pure pairs and equatorial polygons.

pub mod applications;
pub mod correlation;
pub mod error;
pub mod oracle;
pub mod qubit;
pub mod spectral;

pub use correlation::{
    compare_families, ComparisonOutcome, ComparisonVerdict, Correlation, Direction, EllipsoidSpec,
    InsideWitness, MembershipVerdict, OutsideWitness, StateFamily, VerdictTag,
    DEFAULT_MEMBERSHIP_TOL,
};
pub use error::{Error, Result};
pub use qubit::{born, overlap, BinaryTest, HermitianOp, QubitState};
