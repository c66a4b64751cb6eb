//! Hull membership with machine-checkable certificates.
//!
//! A correlation `p` belongs to the set iff it can be written
//! `p = beta*u + gamma*e` with `beta, gamma >= 0`, `beta + gamma <= 1`, and
//! `e` on or inside the ellipsoid. Substituting `e = u/2 + x` with `x` in the
//! range of `Q` reduces this to a search over the combined coefficient
//! `c = beta + gamma/2`: the residual `r = p - c*u` must lie in the range of
//! `Q` and satisfy `r^T Q^-1 r <= gamma^2` for some admissible `gamma`.
//! Whether `c` is pinned by the residual equation splits the search in two:
//! when `u` leaves the range of `Q` the projection determines `c` uniquely,
//! otherwise a one-dimensional scan over `gamma` with a closed-form inner
//! minimum settles feasibility.

use crate::correlation::{Direction, StateFamily};
use crate::spectral;

/// Golden-section refinement width for the feasibility scan.
const SCAN_WIDTH: f64 = 1e-12;
/// Iterations of coordinate ascent when hunting a separating direction.
const ASCENT_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    Inside,
    Boundary,
    Outside,
    Inconclusive,
}

/// Hull coefficients exhibiting `p = beta*u + gamma*e` with `e` on or inside
/// the ellipsoid. When `gamma = 0` the point sits on the segment between the
/// isolated correlations `0` and `u` and `e` degenerates to the center.
#[derive(Debug, Clone)]
pub struct InsideWitness {
    pub beta: f64,
    pub gamma: f64,
    pub ellipsoid_point: Vec<f64>,
}

/// A separating direction: `p . w` strictly exceeds the support value, which
/// no achievable correlation can do.
#[derive(Debug, Clone)]
pub struct OutsideWitness {
    pub direction: Direction,
    /// `p . w` for the stored direction.
    pub correlation_value: f64,
    /// `W(w)` for the stored direction.
    pub support_value: f64,
}

impl OutsideWitness {
    pub fn gap(&self) -> f64 {
        self.correlation_value - self.support_value
    }
}

#[derive(Debug, Clone)]
pub struct MembershipVerdict {
    pub tag: VerdictTag,
    pub inside_witness: Option<InsideWitness>,
    pub outside_witness: Option<OutsideWitness>,
    /// Signed feasibility slack: negative strictly inside, near zero on the
    /// boundary band, positive when separation was detected. For `Outside`
    /// verdicts this is the certificate gap `p . w - W(w)`.
    pub gap: f64,
}

pub(crate) fn decide(family: &StateFamily, p: &[f64], tol: f64) -> MembershipVerdict {
    let m = family.len();
    let u = vec![1.0; m];

    // Points on the segment between the isolated correlations 0 and u are
    // members through the trivial tests alone, ellipsoid or not.
    let c_seg = (spectral::dot(p, &u) / m as f64).clamp(0.0, 1.0);
    let seg_dist = {
        let diff: Vec<f64> = p.iter().map(|pi| pi - c_seg).collect();
        spectral::norm(&diff)
    };
    if seg_dist <= tol {
        return MembershipVerdict {
            tag: VerdictTag::Inside,
            inside_witness: Some(InsideWitness {
                beta: c_seg,
                gamma: 0.0,
                ellipsoid_point: vec![0.5; m],
            }),
            outside_witness: None,
            gap: seg_dist - tol,
        };
    }

    if family.identity_in_span() {
        decide_pinned(family, p, &u, tol)
    } else {
        decide_scanned(family, p, &u, tol)
    }
}

/// `u` has a component outside the range of `Q`: projecting `p` onto it pins
/// the coefficient `c`, and feasibility reduces to closed-form checks.
fn decide_pinned(family: &StateFamily, p: &[f64], u: &[f64], tol: f64) -> MembershipVerdict {
    let fac = family.factorization();
    let u_res = fac.range_residual(u);
    let u_res_sq = spectral::dot(&u_res, &u_res);
    let c = spectral::dot(&u_res, p) / u_res_sq;

    let p_res = fac.range_residual(p);
    let off: Vec<f64> = p_res.iter().zip(&u_res).map(|(a, b)| a - c * b).collect();
    let off_norm = spectral::norm(&off);

    let shifted: Vec<f64> = p.iter().map(|pi| pi - c).collect();
    let qf = fac.pinv_quadratic_form(&shifted);
    let gamma_cap = (2.0 * c).min(2.0 * (1.0 - c)).clamp(0.0, 1.0);
    let ell_slack = qf - gamma_cap * gamma_cap;
    let range_violation = (-c).max(c - 1.0).max(0.0);

    if off_norm <= tol && range_violation <= tol && ell_slack <= tol {
        return member_verdict(family, p, c, gamma_cap, ell_slack, tol);
    }

    let detection = off_norm.max(range_violation).max(ell_slack);
    outside_or_inconclusive(family, p, c, detection, tol)
}

/// `u` lies in the range of `Q`: scan `gamma`, minimizing the convex quadratic
/// `h(c) = (p - c u)^T Q^-1 (p - c u)` over the admissible interval
/// `[gamma/2, 1 - gamma/2]` in closed form at each step.
fn decide_scanned(family: &StateFamily, p: &[f64], u: &[f64], tol: f64) -> MembershipVerdict {
    let fac = family.factorization();
    let p_res_norm = spectral::norm(&fac.range_residual(p));
    if p_res_norm > tol {
        return outside_or_inconclusive(family, p, 0.5, p_res_norm, tol);
    }

    let qf_pp = fac.pinv_quadratic_form(p);
    let qf_up = fac.pinv_bilinear_form(u, p);
    let qf_uu = fac.pinv_quadratic_form(u);
    let c_star = qf_up / qf_uu;
    let h = |c: f64| qf_pp - 2.0 * c * qf_up + c * c * qf_uu;
    let g = |gamma: f64| {
        let c = c_star.clamp(0.5 * gamma, 1.0 - 0.5 * gamma);
        h(c) - gamma * gamma
    };

    let (mut gamma_star, mut slack) = golden_min(0.0, 1.0, SCAN_WIDTH, g);
    // guard the scan with the junction point and both endpoints
    let junction = (2.0 * c_star).min(2.0 * (1.0 - c_star)).clamp(0.0, 1.0);
    for gamma in [0.0, junction, 1.0] {
        let value = g(gamma);
        if value < slack {
            slack = value;
            gamma_star = gamma;
        }
    }

    if slack <= tol {
        let c = c_star.clamp(0.5 * gamma_star, 1.0 - 0.5 * gamma_star);
        return member_verdict(family, p, c, gamma_star, slack, tol);
    }
    outside_or_inconclusive(family, p, c_star.clamp(0.0, 1.0), slack, tol)
}

fn member_verdict(
    family: &StateFamily,
    p: &[f64],
    c: f64,
    gamma: f64,
    slack: f64,
    tol: f64,
) -> MembershipVerdict {
    let m = family.len();
    let ellipsoid_point = if gamma > 1e-12 {
        p.iter().map(|pi| 0.5 + (pi - c) / gamma).collect()
    } else {
        vec![0.5; m]
    };
    let witness = InsideWitness {
        beta: (c - 0.5 * gamma).max(0.0),
        gamma,
        ellipsoid_point,
    };
    let tag = if slack < -tol {
        VerdictTag::Inside
    } else {
        VerdictTag::Boundary
    };
    MembershipVerdict {
        tag,
        inside_witness: Some(witness),
        outside_witness: None,
        gap: slack,
    }
}

fn outside_or_inconclusive(
    family: &StateFamily,
    p: &[f64],
    c_hint: f64,
    detection: f64,
    tol: f64,
) -> MembershipVerdict {
    match search_certificate(family, p, c_hint, tol) {
        Some(witness) => MembershipVerdict {
            gap: witness.gap(),
            tag: VerdictTag::Outside,
            inside_witness: None,
            outside_witness: Some(witness),
        },
        None => MembershipVerdict {
            tag: VerdictTag::Inconclusive,
            inside_witness: None,
            outside_witness: None,
            gap: detection,
        },
    }
}

/// Hunts for a direction with `p . w > W(w) + tol`: first the analytic
/// candidates (pseudoinverse gradient, range residual, the all-ones axis),
/// then coordinate ascent on the unit sphere.
fn search_certificate(
    family: &StateFamily,
    p: &[f64],
    c_hint: f64,
    tol: f64,
) -> Option<OutsideWitness> {
    let m = family.len();
    let fac = family.factorization();
    let u = vec![1.0; m];

    let mut candidates: Vec<Vec<f64>> = Vec::new();
    for c in [c_hint, 0.5] {
        let shifted: Vec<f64> = p.iter().map(|pi| pi - c).collect();
        candidates.push(fac.pinv_apply(&shifted));
        let res = fac.range_residual(&shifted);
        candidates.push(res.iter().map(|x| -x).collect());
        candidates.push(res);
    }
    candidates.push(u.clone());
    candidates.push(u.iter().map(|x| -x).collect());

    let gap_of = |w: &[f64]| spectral::dot(p, w) - family.support_value_raw(w);

    let mut best: Option<(f64, Vec<f64>)> = None;
    for cand in candidates {
        let n = spectral::norm(&cand);
        if n < 1e-14 {
            continue;
        }
        let w: Vec<f64> = cand.iter().map(|x| x / n).collect();
        let gap = gap_of(&w);
        if best.as_ref().is_none_or(|(g, _)| gap > *g) {
            best = Some((gap, w));
        }
    }

    let (mut best_gap, mut best_w) = match best {
        Some(b) => b,
        None => {
            let shifted: Vec<f64> = p.iter().map(|pi| pi - 0.5).collect();
            let n = spectral::norm(&shifted).max(1e-14);
            (f64::NEG_INFINITY, shifted.iter().map(|x| x / n).collect())
        }
    };

    if best_gap <= tol {
        let mut w = best_w.clone();
        for it in 0..ASCENT_ITERATIONS {
            let i = it % m;
            let lo = w[i] - 1.0;
            let hi = w[i] + 1.0;
            let objective = |t: f64| {
                let mut trial = w.clone();
                trial[i] = t;
                -(spectral::dot(p, &trial) - family.support_value_raw(&trial))
            };
            let (t_best, _) = golden_min(lo, hi, 1e-10, objective);
            w[i] = t_best;
            let n = spectral::norm(&w);
            if n < 1e-12 {
                w.clone_from(&best_w);
                continue;
            }
            for x in &mut w {
                *x /= n;
            }
            let gap = gap_of(&w);
            if gap > best_gap {
                best_gap = gap;
                best_w.clone_from(&w);
            }
        }
    }

    if best_gap > tol {
        let support = family.support_value_raw(&best_w);
        let value = spectral::dot(p, &best_w);
        Some(OutsideWitness {
            direction: Direction::new(best_w).expect("normalized direction is non-zero"),
            correlation_value: value,
            support_value: support,
        })
    } else {
        None
    }
}

/// Golden-section minimization of a valley-unimodal function on `[lo, hi]`.
fn golden_min(mut lo: f64, mut hi: f64, width: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > width {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}
