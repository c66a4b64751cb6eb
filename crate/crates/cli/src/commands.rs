use std::path::Path;

use qcorr::applications::{
    circulant_eigenvalues, degenerate_pair_constraint, polygon_family,
    pure_pair_ellipse_coefficients, pure_pair_ellipse_lhs, pure_pair_family,
};
use qcorr::correlation::gram_consistency_error;
use qcorr::oracle::{empirical_support, validate_inclusion_with_tolerance};
use qcorr::{Correlation, Direction, StateFamily};

use crate::document::*;
use crate::CliError;

pub fn characterize(states_path: &Path, rank_tol: f64) -> Result<u8, CliError> {
    let family = load_family(states_path, rank_tol)?;
    let fac = family.factorization();
    let doc = CharacterizeDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        command: "characterize".to_string(),
        states_path: states_path.display().to_string(),
        m: family.len(),
        gram_matrix: family.gram_matrix(),
        rank: family.rank(),
        sigma_squared: fac.sigma().iter().map(|s| s * s).collect(),
        principal_axes: (0..fac.rank())
            .map(|i| fac.left_column(i).to_vec())
            .collect(),
        center: vec![0.5; family.len()],
        independent_state_count: family.independent_state_count(),
        identity_in_span: family.identity_in_span(),
        rank_tolerance: rank_tol,
        gram_consistency_error: gram_consistency_error(&family),
    };
    print_json(&doc)?;
    Ok(0)
}

pub fn witness(states_path: &Path, direction: &str, rank_tol: f64) -> Result<u8, CliError> {
    let family = load_family(states_path, rank_tol)?;
    let w = parse_direction(direction, family.len())?;
    let test = family.extremal_test(&w);
    let p = family.boundary_correlation(&w);
    let support = family.support_value(&w);
    let attained: f64 = p.values().iter().zip(w.values()).map(|(a, b)| a * b).sum();
    let doc = WitnessDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        command: "witness".to_string(),
        states_path: states_path.display().to_string(),
        direction: direction_doc(&w),
        extremal_test: effect_doc(&test),
        boundary_correlation: correlation_doc(&p),
        support_value: support,
        attainment_residual: (attained - support).abs(),
    };
    print_json(&doc)?;
    Ok(0)
}

pub fn test(
    states_path: &Path,
    correlations_path: &Path,
    tol: f64,
    rank_tol: f64,
) -> Result<u8, CliError> {
    let family = load_family(states_path, rank_tol)?;
    let vectors = load_correlations(correlations_path)?;
    let mut verdicts = Vec::with_capacity(vectors.len());
    let mut outside_count = 0usize;
    for vector in vectors {
        let p = Correlation::new(vector);
        let verdict = family
            .membership(&p, tol)
            .map_err(|e| CliError::Parameter(e.to_string()))?;
        if verdict.tag == qcorr::VerdictTag::Outside {
            outside_count += 1;
        }
        verdicts.push(VerdictDoc {
            correlation: correlation_doc(&p),
            verdict: verdict_name(verdict.tag).to_string(),
            gap: verdict.gap,
            inside_witness: verdict.inside_witness.map(|w| InsideWitnessDoc {
                beta: w.beta,
                gamma: w.gamma,
                ellipsoid_point: w.ellipsoid_point,
            }),
            outside_witness: verdict.outside_witness.map(|w| OutsideWitnessDoc {
                gap: w.gap(),
                direction: direction_doc(&w.direction),
                correlation_value: w.correlation_value,
                support_value: w.support_value,
            }),
        });
    }
    let doc = TestDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        command: "test".to_string(),
        states_path: states_path.display().to_string(),
        correlations_path: correlations_path.display().to_string(),
        tolerance: tol,
        outside_count,
        conclusion: if outside_count > 0 {
            "refuted".to_string()
        } else {
            "consistent".to_string()
        },
        verdicts,
    };
    print_json(&doc)?;
    Ok(0)
}

/// Dense sweep of the ellipsoid section: 256 points by angle through the two
/// leading principal axes (one axis when the rank is 1), each paired with the
/// probing direction that generates it.
fn ellipse_trace(family: &StateFamily) -> Vec<BoundaryRowDoc> {
    let fac = family.factorization();
    let rank = fac.rank();
    if rank == 0 {
        return Vec::new();
    }
    let m = family.len();
    let points = 256usize;
    let mut rows = Vec::with_capacity(points);
    for k in 0..points {
        let angle = 2.0 * std::f64::consts::PI * k as f64 / points as f64;
        let coeffs: [f64; 2] = [angle.cos(), angle.sin()];
        let mut p = vec![0.5; m];
        let mut w = vec![0.0; m];
        for (i, c) in coeffs.iter().enumerate().take(rank.min(2)) {
            let sigma = fac.sigma()[i];
            for (j, uj) in fac.left_column(i).iter().enumerate() {
                p[j] += c * sigma * uj;
                w[j] += c / sigma * uj;
            }
        }
        rows.push(BoundaryRowDoc {
            direction: w,
            correlation: p,
        });
    }
    rows
}

pub fn boundary(
    states_path: &Path,
    samples: usize,
    seed: u64,
    format: &str,
    rank_tol: f64,
) -> Result<u8, CliError> {
    let family = load_family(states_path, rank_tol)?;
    let m = family.len();
    let sampled = family.sample_boundary(samples, seed);
    let sample_rows: Vec<BoundaryRowDoc> = sampled
        .iter()
        .map(|(w, p)| BoundaryRowDoc {
            direction: direction_doc(w),
            correlation: correlation_doc(p),
        })
        .collect();
    let trace = if m == 2 {
        ellipse_trace(&family)
    } else {
        Vec::new()
    };

    match format {
        "json" => {
            let doc = BoundaryDoc {
                schema_version: SCHEMA_VERSION.to_string(),
                command: "boundary".to_string(),
                states_path: states_path.display().to_string(),
                seed,
                m,
                samples: sample_rows,
                trace,
            };
            print_json(&doc)?;
        }
        "csv" => {
            let mut lines = Vec::with_capacity(sample_rows.len() + trace.len() + 1);
            let mut header = Vec::with_capacity(2 * m);
            for i in 0..m {
                header.push(format!("w_{i}"));
            }
            for i in 0..m {
                header.push(format!("p_{i}"));
            }
            lines.push(header.join(","));
            for row in sample_rows.iter().chain(&trace) {
                let fields: Vec<String> = row
                    .direction
                    .iter()
                    .chain(&row.correlation)
                    .map(|v| format!("{v}"))
                    .collect();
                lines.push(fields.join(","));
            }
            write_stdout(&lines.join("\n"))?;
        }
        other => {
            return Err(CliError::Parameter(format!(
                "unknown format {other:?}; expected json or csv"
            )));
        }
    }
    Ok(0)
}

/// The eight canonical probing directions: the signed all-ones vector and the
/// first signed coordinate axes (padded with the signed difference axis when
/// only two states are present).
fn axis_directions(m: usize) -> Vec<Direction> {
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        out.push(Direction::new(vec![sign; m]).expect("non-zero"));
    }
    for k in 0..m.min(3) {
        for sign in [1.0, -1.0] {
            let mut w = vec![0.0; m];
            w[k] = sign;
            out.push(Direction::new(w).expect("non-zero"));
        }
    }
    if m == 2 {
        for sign in [1.0, -1.0] {
            out.push(Direction::new(vec![sign, -sign]).expect("non-zero"));
        }
    }
    out.truncate(8);
    out
}

pub fn oracle(
    states_path: &Path,
    samples: usize,
    seed: u64,
    tol: f64,
    rank_tol: f64,
) -> Result<u8, CliError> {
    let family = load_family(states_path, rank_tol)?;
    let report = validate_inclusion_with_tolerance(&family, samples, seed, tol);
    let mut empirical = Vec::new();
    let mut support_violated = false;
    for w in axis_directions(family.len()) {
        let analytic = family.support_value(&w);
        let value = empirical_support(&family, &w, samples.min(10_000), seed ^ 0x5eed);
        if value > analytic + 1e-10 {
            support_violated = true;
        }
        empirical.push(EmpiricalSupportDoc {
            direction: direction_doc(&w),
            empirical: value,
            analytic,
        });
    }
    let sound = report.violations.is_empty() && !support_violated;
    let doc = OracleDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        command: "oracle".to_string(),
        states_path: states_path.display().to_string(),
        samples: report.samples,
        seed,
        membership_tolerance: tol,
        violations: report
            .violations
            .iter()
            .map(|v| ViolationDoc {
                sample_index: v.sample_index,
                test: effect_doc(&v.test),
                correlation: correlation_doc(&v.correlation),
                gap: v.gap,
            })
            .collect(),
        max_gap: report.max_gap,
        empirical_support: empirical,
        sound,
    };
    print_json(&doc)?;
    Ok(if sound { 0 } else { 1 })
}

pub fn apps_pure_pair(alpha: f64) -> Result<u8, CliError> {
    let family = pure_pair_family(alpha).map_err(|e| CliError::Parameter(e.to_string()))?;
    let spec = family.ellipsoid_spec();
    let degenerate = alpha == 0.0 || alpha == std::f64::consts::PI;

    // worst closed-form vs general-machinery disagreement over a grid
    let mut residual = 0.0f64;
    for i in 0..=20 {
        for j in 0..=20 {
            let p = Correlation::new(vec![
                -0.25 + 1.5 * i as f64 / 20.0,
                -0.25 + 1.5 * j as f64 / 20.0,
            ]);
            if degenerate {
                let expected = if alpha == 0.0 {
                    (p.values()[0] - p.values()[1]).abs() / 2f64.sqrt()
                } else {
                    (p.values()[0] + p.values()[1] - 1.0).abs() / 2f64.sqrt()
                };
                let shifted: Vec<f64> = p.values().iter().map(|v| v - 0.5).collect();
                let res = family.factorization().range_residual(&shifted);
                let res_norm = (res[0] * res[0] + res[1] * res[1]).sqrt();
                residual = residual.max((res_norm - expected).abs());
                // agreement between the segment test and the residual route
                let on_segment = degenerate_pair_constraint(alpha, &p, 1e-9)
                    .map_err(|e| CliError::Parameter(e.to_string()))?;
                let in_range = (-1e-9..=1.0 + 1e-9).contains(&p.values()[0]);
                if on_segment != (expected <= 1e-9 && in_range) {
                    residual = residual.max(1.0);
                }
            } else {
                let lhs = pure_pair_ellipse_lhs(alpha, &p)
                    .map_err(|e| CliError::Parameter(e.to_string()))?;
                let general = 0.5 * spec.quadratic_form(p.values());
                residual = residual.max((lhs - general).abs());
            }
        }
    }

    let (coefficients, bound, constraint) = if degenerate {
        let constraint = if alpha == 0.0 {
            "p0 = p1"
        } else {
            "p0 = 1 - p1"
        };
        (None, None, Some(constraint.to_string()))
    } else {
        let (cs, cd) = pure_pair_ellipse_coefficients(alpha)
            .map_err(|e| CliError::Parameter(e.to_string()))?;
        (Some([cs, cd]), Some(0.5), None)
    };

    let doc = PurePairDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        command: "apps pure-pair".to_string(),
        alpha,
        family: FamilyFile::from_states(family.states()),
        ellipse_coefficients: coefficients,
        ellipse_bound: bound,
        degenerate_constraint: constraint,
        cross_check_residual: residual,
    };
    print_json(&doc)?;
    Ok(0)
}

pub fn apps_polygon(m: usize) -> Result<u8, CliError> {
    let family = polygon_family(m).map_err(|e| CliError::Parameter(e.to_string()))?;
    let spectrum = circulant_eigenvalues(m).map_err(|e| CliError::Parameter(e.to_string()))?;
    let sigma_squared: Vec<f64> = family
        .factorization()
        .sigma()
        .iter()
        .map(|s| s * s)
        .collect();

    let mut nonzero: Vec<f64> = spectrum
        .iter()
        .filter(|l| l.norm() > 1e-10)
        .map(|l| l.re)
        .collect();
    nonzero.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut residual = spectrum.iter().map(|l| l.im.abs()).fold(0.0f64, f64::max);
    if nonzero.len() == sigma_squared.len() {
        for (a, b) in nonzero.iter().zip(&sigma_squared) {
            residual = residual.max((a - b).abs());
        }
    } else {
        residual = f64::INFINITY;
    }

    let doc = PolygonDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        command: "apps polygon".to_string(),
        m,
        family: FamilyFile::from_states(family.states()),
        spectrum: spectrum.iter().map(|l| [l.re, l.im]).collect(),
        sigma_squared,
        mub_constraints: (m == 4).then(|| MubConstraintsDoc {
            affine: vec!["p0 + p2 = 1".to_string(), "p1 + p3 = 1".to_string()],
            norm_squared_bound: 1.5,
        }),
        cross_check_residual: residual,
    };
    print_json(&doc)?;
    Ok(0)
}

fn parse_direction(text: &str, m: usize) -> Result<Direction, CliError> {
    let values: Result<Vec<f64>, _> = text
        .split(',')
        .map(|field| field.trim().parse::<f64>())
        .collect();
    let values = values.map_err(|e| CliError::Parameter(format!("bad direction {text:?}: {e}")))?;
    if values.len() != m {
        return Err(CliError::Parameter(format!(
            "direction has {} entries but the family has {m} states",
            values.len()
        )));
    }
    Direction::new(values).map_err(|e| CliError::Parameter(e.to_string()))
}
