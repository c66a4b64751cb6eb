//! Brute-force validation: random physical tests must always land inside the
//! analytic correlation set, and sampled support maxima must never exceed the
//! closed-form support value.
//!
//! Sampling is organized in fixed-width chunks, each drawing from its own
//! seed stream, so reports depend only on `(samples, seed)` regardless of how
//! chunks are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correlation::{Correlation, Direction, StateFamily, VerdictTag};
use crate::qubit::{BinaryTest, Vec3};
use crate::spectral;

/// Membership tolerance used when validating sampled correlations.
pub const ORACLE_MEMBERSHIP_TOL: f64 = 1e-7;

const CHUNK: usize = 1024;

/// A sampled correlation that received an `Outside` verdict.
#[derive(Debug, Clone)]
pub struct Violation {
    pub sample_index: usize,
    pub test: BinaryTest,
    pub correlation: Correlation,
    /// Certificate gap `p . w - W(w)` for the separating direction.
    pub gap: f64,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub samples: usize,
    pub violations: Vec<Violation>,
    /// Largest certificate gap over the violations; zero when there are none.
    pub max_gap: f64,
    pub empirical_support: Option<f64>,
}

/// Uniform unit vector on the Bloch sphere.
pub(crate) fn random_unit_axis<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = [
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
        ];
        let n = crate::qubit::norm3(v);
        if n > 1e-4 && n <= 1.0 {
            return crate::qubit::scale3(v, 1.0 / n);
        }
    }
}

/// A random physical binary test: `a` uniform on `[0, 1]`, axis uniform on
/// the sphere, radius uniform on `[0, min(a, 1-a)]`. Always valid.
pub fn random_test<R: Rng>(rng: &mut R) -> BinaryTest {
    let a: f64 = rng.random();
    let axis = random_unit_axis(rng);
    let radius = rng.random::<f64>() * a.min(1.0 - a);
    BinaryTest::new(a, crate::qubit::scale3(axis, radius))
        .expect("sampled coefficients satisfy the effect bounds")
}

/// A random rank-one projective test: `(I + n . sigma)/2` with `n` uniform.
pub fn random_projective<R: Rng>(rng: &mut R) -> BinaryTest {
    let axis = random_unit_axis(rng);
    BinaryTest::new(0.5, crate::qubit::scale3(axis, 0.5))
        .expect("projector coefficients satisfy the effect bounds")
}

/// Draws `samples` random tests, measures the family, and records every
/// correlation the membership test flags as outside. A sound characterization
/// yields an empty violation list for any family.
pub fn validate_inclusion(family: &StateFamily, samples: usize, seed: u64) -> OracleReport {
    validate_inclusion_with_tolerance(family, samples, seed, ORACLE_MEMBERSHIP_TOL)
}

/// [`validate_inclusion`] with an explicit membership tolerance.
pub fn validate_inclusion_with_tolerance(
    family: &StateFamily,
    samples: usize,
    seed: u64,
    tol: f64,
) -> OracleReport {
    let mut violations = Vec::new();
    let mut max_gap = 0.0f64;
    let mut drawn = 0usize;
    let mut chunk_idx = 0u64;
    while drawn < samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk_idx);
        let take = CHUNK.min(samples - drawn);
        for offset in 0..take {
            let test = random_test(&mut rng);
            let p = family.correlation(&test);
            let verdict = family
                .membership(&p, tol)
                .expect("correlation length matches the family");
            if verdict.tag == VerdictTag::Outside {
                let gap = verdict.gap;
                max_gap = max_gap.max(gap);
                violations.push(Violation {
                    sample_index: drawn + offset,
                    test,
                    correlation: p,
                    gap,
                });
            }
        }
        drawn += take;
        chunk_idx += 1;
    }
    OracleReport {
        samples,
        violations,
        max_gap,
        empirical_support: None,
    }
}

/// Empirical support value: the maximum of `p . w` over sampled random tests
/// plus the deterministic candidates (both trivial tests, the extremal
/// projector, and its complement). Because the extremal projector is included
/// the result equals the analytic support value up to round-off, and it can
/// never exceed it.
pub fn empirical_support(family: &StateFamily, w: &Direction, samples: usize, seed: u64) -> f64 {
    assert_eq!(w.len(), family.len(), "direction length must match m");
    let score = |test: &BinaryTest| {
        let p = family.correlation(test);
        spectral::dot(p.values(), w.values())
    };

    let mut best = f64::NEG_INFINITY;
    for test in [
        BinaryTest::always_reject(),
        BinaryTest::always_accept(),
        family.extremal_test(w),
        family.extremal_test(w).complement(),
    ] {
        best = best.max(score(&test));
    }

    let mut drawn = 0usize;
    let mut chunk_idx = 0u64;
    while drawn < samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk_idx);
        let take = CHUNK.min(samples - drawn);
        for _ in 0..take {
            best = best.max(score(&random_test(&mut rng)));
        }
        drawn += take;
        chunk_idx += 1;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::QubitState;

    fn orthogonal_pair() -> StateFamily {
        StateFamily::new(vec![
            QubitState::from_half_bloch([0.0, 0.0, 0.5]).unwrap(),
            QubitState::from_half_bloch([0.5, 0.0, 0.0]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn random_tests_are_always_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100_000 {
            let t = random_test(&mut rng);
            let n = crate::qubit::norm3(t.b());
            assert!(t.a() - n >= -1e-15);
            assert!(t.a() + n <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn projective_draws_are_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        // poles first
        assert!(BinaryTest::new(0.5, [0.0, 0.0, 0.5]).is_ok());
        assert!(BinaryTest::new(0.5, [0.0, 0.0, -0.5]).is_ok());
        let mut octants = [0usize; 8];
        let draws = 80_000;
        for _ in 0..draws {
            let t = random_projective(&mut rng);
            assert!(t.is_rank_one_projective(1e-12));
            let b = t.b();
            let idx = usize::from(b[0] > 0.0)
                | usize::from(b[1] > 0.0) << 1
                | usize::from(b[2] > 0.0) << 2;
            octants[idx] += 1;
        }
        // chi-square against uniform octants, 7 degrees of freedom; the 0.001
        // significance cutoff is 24.32
        let expected = draws as f64 / 8.0;
        let chi2: f64 = octants
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < 24.32, "chi2 = {chi2}, octants = {octants:?}");
    }

    #[test]
    fn identical_states_have_no_violations() {
        let z = QubitState::from_half_bloch([0.0, 0.0, 0.5]).unwrap();
        let family = StateFamily::new(vec![z, z]).unwrap();
        let report = validate_inclusion(&family, 5_000, 1);
        assert!(report.violations.is_empty());
        assert_eq!(report.max_gap, 0.0);
    }

    #[test]
    fn orthogonal_pair_has_no_violations() {
        let report = validate_inclusion(&orthogonal_pair(), 100_000, 1);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn square_polygon_has_no_violations_and_bounded_projective_norm() {
        let states = (0..4)
            .map(|x| {
                let angle = std::f64::consts::PI * x as f64 / 2.0;
                QubitState::from_half_bloch([0.5 * angle.sin(), 0.0, 0.5 * angle.cos()]).unwrap()
            })
            .collect();
        let family = StateFamily::new(states).unwrap();
        let report = validate_inclusion(&family, 100_000, 1);
        assert!(report.violations.is_empty());

        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let mut max_norm_sq = 0.0f64;
        for _ in 0..100_000 {
            let p = family.correlation(&random_projective(&mut rng));
            max_norm_sq = max_norm_sq.max(p.values().iter().map(|x| x * x).sum());
        }
        assert!(max_norm_sq <= 1.5 + 1e-9, "max |p|^2 = {max_norm_sq}");
    }

    #[test]
    fn reports_are_seed_deterministic() {
        let family = orthogonal_pair();
        let a = validate_inclusion(&family, 3_000, 42);
        let b = validate_inclusion(&family, 3_000, 42);
        assert_eq!(a.samples, b.samples);
        assert_eq!(a.violations.len(), b.violations.len());
        let w = Direction::new(vec![1.0, -1.0]).unwrap();
        assert_eq!(
            empirical_support(&family, &w, 2_000, 7).to_bits(),
            empirical_support(&family, &w, 2_000, 7).to_bits()
        );
    }

    #[test]
    fn empirical_support_attains_the_analytic_value() {
        let family = orthogonal_pair();
        let m = family.len() as f64;
        let all = Direction::new(vec![1.0; 2]).unwrap();
        assert_eq!(empirical_support(&family, &all, 100, 3), m);
        let none = Direction::new(vec![-1.0; 2]).unwrap();
        assert_eq!(empirical_support(&family, &none, 100, 3), 0.0);
        let diff = Direction::new(vec![1.0, -1.0]).unwrap();
        let analytic = family.support_value(&diff);
        let empirical = empirical_support(&family, &diff, 5_000, 3);
        assert!((empirical - 0.5f64.sqrt()).abs() < 1e-10);
        assert!(empirical <= analytic + 1e-10);
        assert!((empirical - analytic).abs() < 1e-10);
    }
}
