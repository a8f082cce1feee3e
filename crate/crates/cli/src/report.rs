//! Machine-readable reports. Every report carries the tool version, the
//! hashes of the instances it covers and the seeds it used.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qwalk_core::szegedy::{SpectrumReport, StructureReport, UnitarityReport};
use qwalk_core::zeta::IdentityCheck;
use qwalk_core::{QVector, RightEigenvalue};

pub const TOOL: &str = "qwalk";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub tolerance: f64,
    pub seeds: Vec<u64>,
    pub instances: Vec<InstanceReport>,
    pub examples: Vec<GoldenCheck>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, tolerance: f64) -> Self {
        Report {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.to_string(),
            tolerance,
            seeds: Vec::new(),
            instances: Vec::new(),
            examples: Vec::new(),
            pass: true,
        }
    }

    pub fn finish(&mut self) {
        self.pass = self.instances.iter().all(|i| i.pass) && self.examples.iter().all(|e| e.pass);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m0: usize,
    pub m1: usize,
    pub m_prime: usize,
    pub connected: bool,
    pub tree_core: bool,
}

impl GraphSummary {
    pub fn of(g: &qwalk_core::Graph) -> Self {
        GraphSummary {
            n: g.n(),
            m0: g.m0(),
            m1: g.m1(),
            m_prime: g.m_prime(),
            connected: g.is_connected(),
            tree_core: g.is_tree_core(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub poly: String,
    /// Ascending coefficients.
    pub coeffs: Vec<f64>,
    pub exponent: usize,
    pub root: Complex64,
    pub root_subspace_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalPolynomialSummary {
    pub text: String,
    pub factors: Vec<FactorSummary>,
    pub residual: f64,
    pub direct_sum: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvectorEntry {
    /// The `W̃`-eigenvector a lift started from.
    pub source: Option<QVector>,
    pub vector: QVector,
    pub normalized: QVector,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum EigenvectorMethod {
    Lift,
    Direct,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvectorGroup {
    pub lambda: Complex64,
    pub mu: Option<f64>,
    pub method: EigenvectorMethod,
    pub vectors: Vec<EigenvectorEntry>,
    pub independent: bool,
    /// Class multiplicity the group should span.
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub name: String,
    pub sha256: String,
    pub seed: Option<u64>,
    pub graph: GraphSummary,
    pub unitarity: Option<UnitarityReport>,
    pub spectrum: Option<SpectrumReport>,
    /// Right spectrum from ψ(U) alone, when forced past a unitarity failure.
    pub forced_spectrum: Option<Vec<RightEigenvalue>>,
    pub minimal_polynomial: Option<MinimalPolynomialSummary>,
    pub eigenvectors: Vec<EigenvectorGroup>,
    pub structure: Option<StructureReport>,
    pub identities: Vec<IdentityCheck>,
    pub failures: Vec<String>,
    pub pass: bool,
}

impl InstanceReport {
    pub fn new(name: &str, sha256: &str, seed: Option<u64>, g: &qwalk_core::Graph) -> Self {
        InstanceReport {
            name: name.to_string(),
            sha256: sha256.to_string(),
            seed,
            graph: GraphSummary::of(g),
            unitarity: None,
            spectrum: None,
            forced_spectrum: None,
            minimal_polynomial: None,
            eigenvectors: Vec::new(),
            structure: None,
            identities: Vec::new(),
            failures: Vec::new(),
            pass: true,
        }
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        self.failures.push(why.into());
        self.pass = false;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}
