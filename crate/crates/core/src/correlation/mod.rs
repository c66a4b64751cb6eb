//! Correlation sets of qubit state families: Gram matrix, support values,
//! extremal tests, the pseudoinverse ellipsoid, hull membership, and
//! family comparison.
//!
//! For a family of m states with half-Bloch rows `S`, the achievable
//! correlations `p_x = Tr[rho_x pi_0]` over all binary tests form the convex
//! hull of the isolated points `0` and `u` (all ones) with the ellipsoid
//!
//! ```text
//! (I - Q^-1 Q)(p - u/2) = 0,    (p - u/2)^T Q^-1 (p - u/2) <= 1,
//! ```
//!
//! where `Q = S S^T` and `Q^-1` is its Moore-Penrose pseudoinverse. The
//! support value of the set in direction `w` is attained by the projector
//! onto the positive part of `sum_x w_x rho_x`.

mod compare;
mod membership;

pub use compare::{compare_families, ComparisonOutcome, ComparisonVerdict, COMPARISON_TOL};
pub use membership::{InsideWitness, MembershipVerdict, OutsideWitness, VerdictTag};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qubit::{born, overlap, BinaryTest, HermitianOp, QubitState, Vec3};
use crate::spectral::{self, factorize_with_tolerance, ThinFactorization, DEFAULT_RANK_TOL};

/// Default tolerance for membership decisions.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-9;

/// Relative threshold deciding whether `u` lies in the range of `Q`.
const IN_RANGE_REL_TOL: f64 = 1e-9;

/// A direction to be probed in the space of correlations; any non-zero
/// m-vector, scale is irrelevant.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if !w.iter().any(|x| *x != 0.0) || w.iter().any(|x| !x.is_finite()) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self(w))
    }

    /// Uniform direction on the unit sphere, via normalized Box-Muller draws.
    pub fn random_unit<R: Rng>(m: usize, rng: &mut R) -> Self {
        loop {
            let w: Vec<f64> = (0..m).map(|_| standard_normal(rng)).collect();
            let n = spectral::norm(&w);
            if n > 1e-6 {
                return Self(w.into_iter().map(|x| x / n).collect());
            }
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub(crate) fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// An m-vector of `pi_0` outcome probabilities, one per input state.
/// Vectors produced by the Born rule lie in `[0, 1]^m`; user-supplied vectors
/// for testing may be arbitrary.
#[derive(Debug, Clone, PartialEq)]
pub struct Correlation(Vec<f64>);

impl Correlation {
    pub fn new(p: Vec<f64>) -> Self {
        Self(p)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// An ordered family of qubit states with its cached thin factorization.
#[derive(Debug, Clone)]
pub struct StateFamily {
    states: Vec<QubitState>,
    s_rows: Vec<Vec3>,
    factorization: ThinFactorization,
    rank_tolerance: f64,
}

impl StateFamily {
    pub fn new(states: Vec<QubitState>) -> Result<Self> {
        Self::with_rank_tolerance(states, DEFAULT_RANK_TOL)
    }

    /// Builds the family with an explicit relative rank cutoff for the
    /// factorization of `S`.
    pub fn with_rank_tolerance(states: Vec<QubitState>, rank_tolerance: f64) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if rank_tolerance <= 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "rank_tolerance",
                value: rank_tolerance,
                range: "(0, inf)",
            });
        }
        let s_rows: Vec<Vec3> = states.iter().map(|s| s.half_bloch()).collect();
        let factorization = factorize_with_tolerance(&s_rows, rank_tolerance);
        Ok(Self {
            states,
            s_rows,
            factorization,
            rank_tolerance,
        })
    }

    /// Number of states m.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[QubitState] {
        &self.states
    }

    pub fn state(&self, x: usize) -> &QubitState {
        &self.states[x]
    }

    pub fn half_bloch_rows(&self) -> &[Vec3] {
        &self.s_rows
    }

    pub fn factorization(&self) -> &ThinFactorization {
        &self.factorization
    }

    pub fn rank_tolerance(&self) -> f64 {
        self.rank_tolerance
    }

    /// Rank of the Gram matrix `Q = S S^T`.
    pub fn rank(&self) -> usize {
        self.factorization.rank()
    }

    /// The Gram matrix `Q` with entries `Tr[rho_x rho_y]/2 - 1/4 = s_x . s_y`.
    pub fn gram_matrix(&self) -> Vec<Vec<f64>> {
        self.s_rows
            .iter()
            .map(|a| {
                self.s_rows
                    .iter()
                    .map(|b| crate::qubit::dot3(*a, *b))
                    .collect()
            })
            .collect()
    }

    /// Whether the identity lies in the linear span of the states, equivalent
    /// to the all-ones vector having a component outside the range of `Q`.
    pub fn identity_in_span(&self) -> bool {
        let u = vec![1.0; self.len()];
        let res = self.factorization.range_residual(&u);
        spectral::norm(&res) > IN_RANGE_REL_TOL * (self.len() as f64).sqrt()
    }

    /// Maximum number of linearly independent states: the rank of `S` plus one
    /// when the all-ones vector leaves the column span of `S`.
    pub fn independent_state_count(&self) -> usize {
        self.rank() + usize::from(self.identity_in_span())
    }

    /// The weighted operator `sum_x w_x rho_x` in the Pauli basis:
    /// scalar `u^T w / 2`, vector `S^T w`.
    pub fn weighted_operator(&self, w: &[f64]) -> HermitianOp {
        let mut scalar = 0.0;
        let mut vec = [0.0f64; 3];
        for (wx, row) in w.iter().zip(&self.s_rows) {
            scalar += 0.5 * wx;
            for k in 0..3 {
                vec[k] += wx * row[k];
            }
        }
        HermitianOp::new(scalar, vec)
    }

    /// Support value `W(w)`: the maximum of `p^T w` over all achievable
    /// correlations, equal to the positive-part trace of `sum_x w_x rho_x`.
    pub fn support_value(&self, w: &Direction) -> f64 {
        self.support_value_raw(w.values())
    }

    pub(crate) fn support_value_raw(&self, w: &[f64]) -> f64 {
        assert_eq!(w.len(), self.len(), "direction length must match m");
        self.weighted_operator(w).positive_part_trace()
    }

    /// The binary test whose correlation attains the support value in
    /// direction `w`: the projector onto the positive part of
    /// `sum_x w_x rho_x`. When that operator is too degenerate to pick an
    /// axis, any rank-one projector attains the value and the z-axis
    /// projector is returned for determinism.
    pub fn extremal_test(&self, w: &Direction) -> BinaryTest {
        assert_eq!(w.len(), self.len(), "direction length must match m");
        match self.weighted_operator(w.values()).positive_part_projector() {
            Ok(test) => test,
            Err(_) => BinaryTest::projector([0.0, 0.0, 1.0]).expect("z axis is a unit vector"),
        }
    }

    /// Correlation of an arbitrary test against every state of the family.
    pub fn correlation(&self, test: &BinaryTest) -> Correlation {
        Correlation(self.states.iter().map(|s| born(s, test)).collect())
    }

    /// The boundary correlation generated by the extremal test for `w`;
    /// satisfies `p^T w = W(w)`.
    pub fn boundary_correlation(&self, w: &Direction) -> Correlation {
        self.correlation(&self.extremal_test(w))
    }

    /// Packages the ellipsoid system: center `u/2` and the eigenstructure
    /// of `Q`.
    pub fn ellipsoid_spec(&self) -> EllipsoidSpec {
        EllipsoidSpec {
            center: vec![0.5; self.len()],
            factorization: self.factorization.clone(),
            rank: self.rank(),
        }
    }

    /// The point where the ellipsoid's boundary supports direction `w`:
    /// `p = u/2 + Q w / |S^T w|`. Requires `S^T w` to be non-degenerate.
    pub fn ellipsoid_surface_point(&self, w: &Direction) -> Result<Correlation> {
        if w.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: w.len(),
            });
        }
        let stw = self.apply_s_transpose(w.values());
        let n = crate::qubit::norm3(stw);
        if n <= 1e-14 {
            return Err(Error::DegenerateDirection(1e-14));
        }
        let p = self
            .s_rows
            .iter()
            .map(|row| 0.5 + crate::qubit::dot3(*row, stw) / n)
            .collect();
        Ok(Correlation(p))
    }

    fn apply_s_transpose(&self, w: &[f64]) -> Vec3 {
        let mut out = [0.0f64; 3];
        for (wx, row) in w.iter().zip(&self.s_rows) {
            for k in 0..3 {
                out[k] += wx * row[k];
            }
        }
        out
    }

    /// Decides whether `p` lies in the correlation set, with a certificate.
    pub fn membership(&self, p: &Correlation, tol: f64) -> Result<MembershipVerdict> {
        if p.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: p.len(),
            });
        }
        if tol <= 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "tol",
                value: tol,
                range: "(0, inf)",
            });
        }
        Ok(membership::decide(self, p.values(), tol))
    }

    /// Deterministic boundary sample: seeded uniform directions mapped through
    /// the extremal test. Fixed-width chunks each draw from their own seed
    /// stream, so the output depends only on `(count, seed)`.
    pub fn sample_boundary(&self, count: usize, seed: u64) -> Vec<(Direction, Correlation)> {
        const CHUNK: usize = 1024;
        let mut out = Vec::with_capacity(count);
        let mut chunk_idx = 0u64;
        while out.len() < count {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk_idx);
            let take = CHUNK.min(count - out.len());
            for _ in 0..take {
                let w = Direction::random_unit(self.len(), &mut rng);
                let p = self.boundary_correlation(&w);
                out.push((w, p));
            }
            chunk_idx += 1;
        }
        out
    }
}

/// The ellipsoid part of the correlation set: center `u/2`, the kept
/// eigenstructure of `Q`, and its rank.
#[derive(Debug, Clone)]
pub struct EllipsoidSpec {
    center: Vec<f64>,
    factorization: ThinFactorization,
    rank: usize,
}

impl EllipsoidSpec {
    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factorization(&self) -> &ThinFactorization {
        &self.factorization
    }

    /// `(p - u/2)^T Q^-1 (p - u/2)`; at most 1 on the ellipsoid.
    pub fn quadratic_form(&self, p: &[f64]) -> f64 {
        self.factorization.pinv_quadratic_form(&self.shift(p))
    }

    /// `(I - Q^-1 Q)(p - u/2)`; zero on the ellipsoid's affine hull.
    pub fn affine_residual(&self, p: &[f64]) -> Vec<f64> {
        self.factorization.range_residual(&self.shift(p))
    }

    fn shift(&self, p: &[f64]) -> Vec<f64> {
        assert_eq!(p.len(), self.center.len(), "dimension mismatch");
        p.iter().zip(&self.center).map(|(a, b)| a - b).collect()
    }
}

/// Verifies the overlap-based and factorized Gram computations agree; used by
/// tests and the CLI self-checks.
pub fn gram_consistency_error(family: &StateFamily) -> f64 {
    let q = family.gram_matrix();
    let mut worst = 0.0f64;
    for (i, si) in family.states().iter().enumerate() {
        for (j, sj) in family.states().iter().enumerate() {
            let via_overlap = 0.5 * overlap(si, sj) - 0.25;
            worst = worst.max((q[i][j] - via_overlap).abs());
        }
    }
    worst
}
