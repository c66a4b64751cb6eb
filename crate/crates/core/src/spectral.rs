//! Thin spectral factorization of the m x 3 half-Bloch matrix `S`.
//!
//! The Gram matrix `Q = S S^T` has rank at most 3 no matter how many states the
//! family holds, so all spectral work happens on the 3x3 matrix `S^T S`: a cyclic
//! Jacobi sweep diagonalizes it, eigenvalues below the rank cutoff are dropped,
//! and the kept pairs give the thin factorization `S = U diag(sigma) V^T`. The
//! Moore-Penrose pseudoinverse of `Q` is then `U diag(sigma^-2) U^T`, which is all
//! the ellipsoid system ever needs: quadratic forms and the range projector
//! `Q^-1 Q = U U^T`.

use crate::qubit::Vec3;

/// Relative cutoff separating genuine rank deficiency from round-off.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

const JACOBI_OFF_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 32;

/// Thin factorization `S = U diag(sigma) V^T` with only the singular values
/// above the rank cutoff retained.
#[derive(Debug, Clone)]
pub struct ThinFactorization {
    /// Column-orthonormal m-vectors, one per kept singular value.
    left: Vec<Vec<f64>>,
    /// Kept singular values, descending.
    sigma: Vec<f64>,
    /// Column-orthonormal 3-vectors, one per kept singular value.
    right: Vec<Vec3>,
    rows: usize,
}

impl ThinFactorization {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn left_column(&self, i: usize) -> &[f64] {
        &self.left[i]
    }

    pub fn right_column(&self, i: usize) -> Vec3 {
        self.right[i]
    }

    /// `x^T Q^-1 x` over the kept columns; non-negative.
    pub fn pinv_quadratic_form(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.rows, "vector length must match row count");
        self.left
            .iter()
            .zip(&self.sigma)
            .map(|(u, s)| {
                let c = dot(u, x) / s;
                c * c
            })
            .sum()
    }

    /// `x^T Q^-1 y` over the kept columns.
    pub fn pinv_bilinear_form(&self, x: &[f64], y: &[f64]) -> f64 {
        assert_eq!(x.len(), self.rows, "vector length must match row count");
        assert_eq!(y.len(), self.rows, "vector length must match row count");
        self.left
            .iter()
            .zip(&self.sigma)
            .map(|(u, s)| dot(u, x) * dot(u, y) / (s * s))
            .sum()
    }

    /// `Q^-1 x = U diag(sigma^-2) U^T x`.
    pub fn pinv_apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows, "vector length must match row count");
        let mut out = vec![0.0; self.rows];
        for (u, s) in self.left.iter().zip(&self.sigma) {
            let c = dot(u, x) / (s * s);
            for (o, ui) in out.iter_mut().zip(u) {
                *o += c * ui;
            }
        }
        out
    }

    /// Component of `x` outside the range of `Q`: `(I - U U^T) x`.
    pub fn range_residual(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows, "vector length must match row count");
        let mut out = x.to_vec();
        for u in &self.left {
            let c = dot(u, x);
            for (o, ui) in out.iter_mut().zip(u) {
                *o -= c * ui;
            }
        }
        out
    }

    /// Projection of `x` onto the range of `Q`: `U U^T x`.
    pub fn range_project(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows, "vector length must match row count");
        let mut out = vec![0.0; self.rows];
        for u in &self.left {
            let c = dot(u, x);
            for (o, ui) in out.iter_mut().zip(u) {
                *o += c * ui;
            }
        }
        out
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Factorizes with the default rank cutoff.
pub fn factorize(s_rows: &[Vec3]) -> ThinFactorization {
    factorize_with_tolerance(s_rows, DEFAULT_RANK_TOL)
}

/// Factorizes `S` (given by rows) keeping singular values above
/// `rel_tol * max(1, sigma_max)`.
pub fn factorize_with_tolerance(s_rows: &[Vec3], rel_tol: f64) -> ThinFactorization {
    assert!(!s_rows.is_empty(), "S must have at least one row");
    let m = s_rows.len();

    // 3x3 Gram matrix S^T S
    let mut gram = [[0.0f64; 3]; 3];
    for row in s_rows {
        for j in 0..3 {
            for k in 0..3 {
                gram[j][k] += row[j] * row[k];
            }
        }
    }

    let (mut eigenvalues, vectors) = jacobi_eigen_3x3(gram);
    for value in &mut eigenvalues {
        if *value < 0.0 {
            *value = 0.0;
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eigenvalues[j].partial_cmp(&eigenvalues[i]).unwrap());

    let sigma_max = eigenvalues[order[0]].sqrt();
    let cutoff = rel_tol * sigma_max.max(1.0);
    let cutoff_sq = cutoff * cutoff;

    let mut left: Vec<Vec<f64>> = Vec::new();
    let mut sigma: Vec<f64> = Vec::new();
    let mut right: Vec<Vec3> = Vec::new();
    for &idx in &order {
        if eigenvalues[idx] <= cutoff_sq {
            continue;
        }
        let s = eigenvalues[idx].sqrt();
        let v = [vectors[0][idx], vectors[1][idx], vectors[2][idx]];
        let mut u: Vec<f64> = s_rows
            .iter()
            .map(|row| (row[0] * v[0] + row[1] * v[1] + row[2] * v[2]) / s)
            .collect();
        // Re-orthonormalize against the columns already kept so the range
        // projector stays a projector even for nearly graded spectra.
        for prev in &left {
            let c = dot(prev, &u);
            for (ui, pi) in u.iter_mut().zip(prev) {
                *ui -= c * pi;
            }
        }
        let n = norm(&u);
        if n <= f64::EPSILON * (m as f64).sqrt() {
            continue;
        }
        for ui in &mut u {
            *ui /= n;
        }
        left.push(u);
        sigma.push(s);
        right.push(v);
    }

    ThinFactorization {
        left,
        sigma,
        right,
        rows: m,
    }
}

/// Cyclic Jacobi diagonalization of a symmetric 3x3 matrix. Returns the
/// eigenvalues (diagonal of the rotated matrix) and the matrix of eigenvector
/// columns.
fn jacobi_eigen_3x3(mut a: [[f64; 3]; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
    let mut v = [[0.0; 3]; 3];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let mut scale = 0.0f64;
    for row in &a {
        for &x in row {
            scale += x * x;
        }
    }
    let threshold = JACOBI_OFF_TOL * scale.sqrt().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off = (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]).sqrt();
        if off < threshold {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq.abs() < f64::MIN_POSITIVE {
                continue;
            }
            // rotation angle that zeroes a[p][q]
            let theta = 0.5 * (a[q][q] - a[p][p]) / apq;
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;

            let app = a[p][p];
            let aqq = a[q][q];
            a[p][p] = app - t * apq;
            a[q][q] = aqq + t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let r = 3 - p - q;
            let arp = a[r][p];
            let arq = a[r][q];
            a[r][p] = c * arp - s * arq;
            a[p][r] = a[r][p];
            a[r][q] = s * arp + c * arq;
            a[q][r] = a[r][q];

            for row in &mut v {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }

    ([a[0][0], a[1][1], a[2][2]], v)
}
