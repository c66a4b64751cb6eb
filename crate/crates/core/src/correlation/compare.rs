//! Support-function comparison of two state families.
//!
//! One family's correlation set contains another's iff its support value
//! dominates in every direction. A single direction where domination fails is
//! an exact disproof; domination claims over a sampled direction set remain
//! sampled-complete and are flagged as such.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::correlation::{Direction, StateFamily};
use crate::error::{Error, Result};

/// Tolerance below which two support values count as equal.
pub const COMPARISON_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonOutcome {
    /// Support values agree everywhere sampled.
    Equal,
    /// The first family's set contains the second's on every direction sampled.
    Dominates,
    /// The second family's set contains the first's on every direction sampled.
    DominatedBy,
    /// Witness directions exist both ways; neither set contains the other.
    Incomparable,
}

#[derive(Debug, Clone)]
pub struct ComparisonVerdict {
    pub outcome: ComparisonOutcome,
    /// Total directions checked: samples plus the signed axes and all-ones.
    pub directions_checked: usize,
    /// True when the outcome is proven by explicit witnesses alone
    /// (`Incomparable`); containment outcomes are sampled-complete.
    pub exact: bool,
    /// Direction with `W_A < W_B`, disproving that A's set contains B's,
    /// with the gap `W_B - W_A`.
    pub witness_against_dominates: Option<(Direction, f64)>,
    /// Direction with `W_B < W_A`, disproving that B's set contains A's,
    /// with the gap `W_A - W_B`.
    pub witness_against_dominated: Option<(Direction, f64)>,
}

/// Compares the correlation sets of `a` and `b` on `directions` sampled unit
/// directions plus the `2m` signed axes and the signed all-ones vectors.
pub fn compare_families(
    a: &StateFamily,
    b: &StateFamily,
    directions: usize,
    seed: u64,
) -> Result<ComparisonVerdict> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let m = a.len();

    let mut checked = 0usize;
    let mut against_dominates: Option<(Direction, f64)> = None;
    let mut against_dominated: Option<(Direction, f64)> = None;

    let mut consider = |w: Direction, a: &StateFamily, b: &StateFamily| {
        checked += 1;
        let delta = a.support_value(&w) - b.support_value(&w);
        if delta < -COMPARISON_TOL
            && against_dominates
                .as_ref()
                .is_none_or(|(_, gap)| -delta > *gap)
        {
            against_dominates = Some((w, -delta));
        } else if delta > COMPARISON_TOL
            && against_dominated
                .as_ref()
                .is_none_or(|(_, gap)| delta > *gap)
        {
            against_dominated = Some((w, delta));
        }
    };

    for x in 0..m {
        for sign in [1.0, -1.0] {
            let mut w = vec![0.0; m];
            w[x] = sign;
            consider(Direction::new(w).expect("axis direction is non-zero"), a, b);
        }
    }
    for sign in [1.0, -1.0] {
        let w = vec![sign; m];
        consider(Direction::new(w).expect("all-ones is non-zero"), a, b);
    }

    const CHUNK: usize = 1024;
    let mut drawn = 0usize;
    let mut chunk_idx = 0u64;
    while drawn < directions {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk_idx);
        let take = CHUNK.min(directions - drawn);
        for _ in 0..take {
            consider(Direction::random_unit(m, &mut rng), a, b);
        }
        drawn += take;
        chunk_idx += 1;
    }

    let outcome = match (&against_dominates, &against_dominated) {
        (None, None) => ComparisonOutcome::Equal,
        (None, Some(_)) => ComparisonOutcome::Dominates,
        (Some(_), None) => ComparisonOutcome::DominatedBy,
        (Some(_), Some(_)) => ComparisonOutcome::Incomparable,
    };
    Ok(ComparisonVerdict {
        outcome,
        directions_checked: checked,
        exact: outcome == ComparisonOutcome::Incomparable,
        witness_against_dominates: against_dominates,
        witness_against_dominated: against_dominated,
    })
}
