//! Worked families in closed form: any pair of pure states, and pure states
//! on the vertices of a regular polygon in the Bloch equatorial plane. Each
//! closed form is cross-checked against the general machinery by the tests.

use num_complex::Complex64;

use crate::correlation::{Correlation, StateFamily};
use crate::error::{Error, Result};
use crate::qubit::QubitState;

/// Tolerance for the polygon affine constraints and norm bound.
pub const MUB_TOL: f64 = 1e-9;
/// The ellipse bound for a non-degenerate pure pair.
pub const PURE_PAIR_ELLIPSE_BOUND: f64 = 0.5;

/// The pair `|0>` and `cos(alpha/2)|0> + sin(alpha/2)|1>`, whose squared
/// overlap is `cos^2(alpha/2)`.
pub fn pure_pair_family(alpha: f64) -> Result<StateFamily> {
    if !(0.0..=std::f64::consts::PI).contains(&alpha) {
        return Err(Error::ParameterOutOfRange {
            name: "alpha",
            value: alpha,
            range: "[0, pi]",
        });
    }
    StateFamily::new(vec![QubitState::pure_xz(0.0), QubitState::pure_xz(alpha)])
}

/// Coefficients `(1/(1+cos a), 1/(1-cos a))` of the pure-pair ellipse; the
/// left side stays at most 1/2 exactly on the correlation set's ellipse.
pub fn pure_pair_ellipse_coefficients(alpha: f64) -> Result<(f64, f64)> {
    if alpha <= 0.0 || alpha >= std::f64::consts::PI {
        return Err(Error::DegenerateAlpha(alpha));
    }
    let c = alpha.cos();
    Ok((1.0 / (1.0 + c), 1.0 / (1.0 - c)))
}

/// Left side of the pure-pair ellipse inequality,
/// `(p0+p1-1)^2/(1+cos a) + (p0-p1)^2/(1-cos a)`; membership in the ellipse
/// is `lhs <= 1/2`. Equals half the general pseudoinverse quadratic form.
pub fn pure_pair_ellipse_lhs(alpha: f64, p: &Correlation) -> Result<f64> {
    let (coeff_sum, coeff_diff) = pure_pair_ellipse_coefficients(alpha)?;
    if p.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.len(),
        });
    }
    let v = p.values();
    let sum = v[0] + v[1] - 1.0;
    let diff = v[0] - v[1];
    Ok(coeff_sum * sum * sum + coeff_diff * diff * diff)
}

/// Degenerate pure pairs collapse the ellipse to a segment: identical states
/// force `p0 = p1`, orthogonal states force `p0 = 1 - p1`. Returns whether
/// `p` sits on that segment within `tol`.
pub fn degenerate_pair_constraint(alpha: f64, p: &Correlation, tol: f64) -> Result<bool> {
    if p.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.len(),
        });
    }
    let v = p.values();
    if alpha == 0.0 {
        Ok((v[0] - v[1]).abs() <= tol && v[0] >= -tol && v[0] <= 1.0 + tol)
    } else if alpha == std::f64::consts::PI {
        Ok((v[0] + v[1] - 1.0).abs() <= tol && v[0] >= -tol && v[0] <= 1.0 + tol)
    } else {
        Err(Error::ParameterOutOfRange {
            name: "alpha",
            value: alpha,
            range: "{0, pi}",
        })
    }
}

/// `m` pure states uniformly distributed on the Bloch equatorial plane:
/// `|phi_x> = cos(pi x / m)|0> + sin(pi x / m)|1>`. Consecutive overlaps are
/// `cos^2(pi/m)` and the Gram matrix is circulant.
pub fn polygon_family(m: usize) -> Result<StateFamily> {
    if m < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "m",
            value: m as f64,
            range: "[2, inf)",
        });
    }
    let states = (0..m)
        .map(|x| QubitState::pure_xz(2.0 * std::f64::consts::PI * x as f64 / m as f64))
        .collect();
    StateFamily::new(states)
}

/// Eigenvalues of the polygon Gram matrix by direct evaluation of the
/// circulant Fourier sum
/// `lambda_j = (1/4) sum_k cos(2 pi k / m) exp(2 pi i j (m - k) / m)`.
/// The spectrum concentrates `m/8` on the first and last harmonics (which
/// coincide at `m = 2`, where the single slot carries `m/4`).
pub fn circulant_eigenvalues(m: usize) -> Result<Vec<Complex64>> {
    if m < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "m",
            value: m as f64,
            range: "[2, inf)",
        });
    }
    let mf = m as f64;
    let tau = 2.0 * std::f64::consts::PI / mf;
    Ok((0..m)
        .map(|j| {
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..m {
                let phase = tau * j as f64 * (m - k) as f64;
                sum += (tau * k as f64).cos() * Complex64::new(phase.cos(), phase.sin());
            }
            0.25 * sum
        })
        .collect())
}

/// The constraints cut out by the two-basis (`m = 4`) polygon: the affine
/// system `p0 + p2 = p1 + p3 = 1` plus the norm bound `|p|^2 <= 3/2`.
#[derive(Debug, Clone, Copy)]
pub struct MubSystem {
    pub sum_02: f64,
    pub sum_13: f64,
    pub norm_squared: f64,
}

impl MubSystem {
    pub fn evaluate(p: &Correlation) -> Result<Self> {
        if p.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: p.len(),
            });
        }
        let v = p.values();
        Ok(Self {
            sum_02: v[0] + v[2],
            sum_13: v[1] + v[3],
            norm_squared: v.iter().map(|x| x * x).sum(),
        })
    }

    pub fn satisfied(&self) -> bool {
        (self.sum_02 - 1.0).abs() <= MUB_TOL
            && (self.sum_13 - 1.0).abs() <= MUB_TOL
            && self.norm_squared <= 1.5 + MUB_TOL
    }
}

/// Whether a 4-vector satisfies the two-basis polygon ellipsoid system.
/// The isolated hull points `0` and `u` violate the affine constraints yet
/// are members of the full correlation set; this checks the ellipsoid only.
pub fn mub_membership(p: &Correlation) -> Result<bool> {
    Ok(MubSystem::evaluate(p)?.satisfied())
}
