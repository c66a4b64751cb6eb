//! File formats and result documents. States enter as full Bloch vectors
//! (norm at most 1) or dense 2x2 complex matrices given as `[re, im]` pairs;
//! every command emits a versioned JSON document on stdout.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qcorr::{Correlation, Direction, QubitState, StateFamily};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
pub struct FamilyFile {
    pub states: Vec<StateEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateEntry {
    Bloch { bloch: [f64; 3] },
    Matrix { matrix: [[[f64; 2]; 2]; 2] },
}

impl FamilyFile {
    pub fn from_states(states: &[QubitState]) -> Self {
        Self {
            states: states
                .iter()
                .map(|s| StateEntry::Bloch { bloch: s.bloch() })
                .collect(),
        }
    }

    pub fn to_states(&self) -> Result<Vec<QubitState>, CliError> {
        self.states
            .iter()
            .enumerate()
            .map(|(i, entry)| {
                let state = match entry {
                    StateEntry::Bloch { bloch } => QubitState::from_bloch(*bloch),
                    StateEntry::Matrix { matrix } => {
                        let m = [
                            [
                                Complex64::new(matrix[0][0][0], matrix[0][0][1]),
                                Complex64::new(matrix[0][1][0], matrix[0][1][1]),
                            ],
                            [
                                Complex64::new(matrix[1][0][0], matrix[1][0][1]),
                                Complex64::new(matrix[1][1][0], matrix[1][1][1]),
                            ],
                        ];
                        QubitState::from_matrix(&m)
                    }
                };
                state.map_err(|e| CliError::InvalidState(format!("states[{i}]: {e}")))
            })
            .collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CorrelationsFile {
    pub correlations: Vec<Vec<f64>>,
}

pub fn load_family(path: &std::path::Path, rank_tol: f64) -> Result<StateFamily, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file: FamilyFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let states = file.to_states()?;
    StateFamily::with_rank_tolerance(states, rank_tol)
        .map_err(|e| CliError::Parameter(e.to_string()))
}

pub fn load_correlations(path: &std::path::Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file: CorrelationsFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(file.correlations)
}

pub fn complex_matrix(m: &[[Complex64; 2]; 2]) -> [[[f64; 2]; 2]; 2] {
    let c = |z: Complex64| [z.re, z.im];
    [[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]]
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CharacterizeDoc {
    pub schema_version: String,
    pub command: String,
    pub states_path: String,
    pub m: usize,
    pub gram_matrix: Vec<Vec<f64>>,
    pub rank: usize,
    /// Squared singular values of S, i.e. the non-zero eigenvalues of Q.
    pub sigma_squared: Vec<f64>,
    /// Orthonormal eigenvectors of Q spanning the ellipsoid's affine hull.
    pub principal_axes: Vec<Vec<f64>>,
    pub center: Vec<f64>,
    /// Maximum number of linearly independent states.
    pub independent_state_count: usize,
    pub identity_in_span: bool,
    pub rank_tolerance: f64,
    /// Worst disagreement between the overlap and factorized Gram entries.
    pub gram_consistency_error: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TestEffectDoc {
    pub a: f64,
    pub b: [f64; 3],
    pub matrix: [[[f64; 2]; 2]; 2],
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub schema_version: String,
    pub command: String,
    pub states_path: String,
    pub direction: Vec<f64>,
    pub extremal_test: TestEffectDoc,
    pub boundary_correlation: Vec<f64>,
    pub support_value: f64,
    /// `|p . w - W(w)|`; zero up to round-off by construction.
    pub attainment_residual: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OutsideWitnessDoc {
    pub direction: Vec<f64>,
    pub correlation_value: f64,
    pub support_value: f64,
    pub gap: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InsideWitnessDoc {
    pub beta: f64,
    pub gamma: f64,
    pub ellipsoid_point: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub correlation: Vec<f64>,
    pub verdict: String,
    pub gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inside_witness: Option<InsideWitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outside_witness: Option<OutsideWitnessDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TestDoc {
    pub schema_version: String,
    pub command: String,
    pub states_path: String,
    pub correlations_path: String,
    pub tolerance: f64,
    pub verdicts: Vec<VerdictDoc>,
    pub outside_count: usize,
    /// "refuted" when some correlation falls outside the claimed set,
    /// "consistent" when every vector is compatible with it.
    pub conclusion: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundaryRowDoc {
    pub direction: Vec<f64>,
    pub correlation: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundaryDoc {
    pub schema_version: String,
    pub command: String,
    pub states_path: String,
    pub seed: u64,
    pub m: usize,
    pub samples: Vec<BoundaryRowDoc>,
    /// Dense sweep of the ellipsoid section for plotting; present when the
    /// factorization has rank at least 1, 256 points by angle.
    pub trace: Vec<BoundaryRowDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub sample_index: usize,
    pub test: TestEffectDoc,
    pub correlation: Vec<f64>,
    pub gap: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EmpiricalSupportDoc {
    pub direction: Vec<f64>,
    pub empirical: f64,
    pub analytic: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OracleDoc {
    pub schema_version: String,
    pub command: String,
    pub states_path: String,
    pub samples: usize,
    pub seed: u64,
    pub membership_tolerance: f64,
    pub violations: Vec<ViolationDoc>,
    pub max_gap: f64,
    pub empirical_support: Vec<EmpiricalSupportDoc>,
    pub sound: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PurePairDoc {
    pub schema_version: String,
    pub command: String,
    pub alpha: f64,
    pub family: FamilyFile,
    /// `(1/(1+cos a), 1/(1-cos a))` and the bound 1/2; absent at the
    /// degenerate angles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ellipse_coefficients: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ellipse_bound: Option<f64>,
    /// The segment constraint replacing the ellipse at alpha in {0, pi}.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate_constraint: Option<String>,
    /// Worst |closed form - general machinery| over a grid of correlations.
    pub cross_check_residual: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MubConstraintsDoc {
    pub affine: Vec<String>,
    pub norm_squared_bound: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolygonDoc {
    pub schema_version: String,
    pub command: String,
    pub m: usize,
    pub family: FamilyFile,
    /// Circulant spectrum as `[re, im]` pairs, index by harmonic.
    pub spectrum: Vec<[f64; 2]>,
    pub sigma_squared: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mub_constraints: Option<MubConstraintsDoc>,
    /// Worst |spectrum - factorization| disagreement.
    pub cross_check_residual: f64,
}

pub fn verdict_name(tag: qcorr::VerdictTag) -> &'static str {
    match tag {
        qcorr::VerdictTag::Inside => "inside",
        qcorr::VerdictTag::Boundary => "boundary",
        qcorr::VerdictTag::Outside => "outside",
        qcorr::VerdictTag::Inconclusive => "inconclusive",
    }
}

pub fn direction_doc(w: &Direction) -> Vec<f64> {
    w.values().to_vec()
}

pub fn correlation_doc(p: &Correlation) -> Vec<f64> {
    p.values().to_vec()
}

pub fn effect_doc(test: &qcorr::BinaryTest) -> TestEffectDoc {
    TestEffectDoc {
        a: test.a(),
        b: test.b(),
        matrix: complex_matrix(&test.effect_matrix()),
    }
}

/// Writes a line to stdout; a closed pipe downstream ends the process
/// quietly instead of panicking.
pub fn write_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = writeln!(out, "{text}").and_then(|_| out.flush());
    match result {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(CliError::Io(format!("stdout: {e}"))),
    }
}

pub fn print_json<T: Serialize>(doc: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    write_stdout(&text)
}
