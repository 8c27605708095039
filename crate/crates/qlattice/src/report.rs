//! Aggregated analysis of a family under a state, and the serializable
//! report documents emitted by the command-line tools.

use serde::Serialize;

use crate::error::Result;
use crate::family::SubspaceFamily;
use crate::independence::{
    degree_of_independence, degree_of_totalness, independence_level, totalness_level, LevelReport,
};
use crate::matrix::CMatrix;
use crate::partitions::informationally_independent;
use crate::pentagram::PentagramReport;
use crate::quasiprob::{profile, DensityMatrix, QuasiProbProfile};
use crate::wire::{matrix_to_wire, vector_to_wire, WireMatrix, WireVector};

/// Everything the `analyze` pipeline computes for one family and state.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub ambient_dim: usize,
    pub member_dims: Vec<usize>,
    pub profile: QuasiProbProfile,
    pub independence: LevelReport,
    pub totalness: LevelReport,
    pub independence_matrix: CMatrix,
    pub eta: f64,
    pub totalness_matrix: CMatrix,
    pub epsilon: f64,
    pub informationally_independent: bool,
}

/// Run the full classification of a family under a state.
pub fn analyze(family: &SubspaceFamily, rho: &DensityMatrix) -> Result<Analysis> {
    let profile = profile(family, rho)?;
    let independence = independence_level(family);
    let totalness = totalness_level(family);
    let degree_ind = degree_of_independence(family, rho)?;
    let degree_tot = degree_of_totalness(family, rho)?;
    let informational = informationally_independent(family);
    Ok(Analysis {
        ambient_dim: family.ambient_dim(),
        member_dims: family.members().iter().map(|m| m.dim()).collect(),
        profile,
        independence,
        totalness,
        independence_matrix: degree_ind.matrix,
        eta: degree_ind.degree,
        totalness_matrix: degree_tot.matrix,
        epsilon: degree_tot.degree,
        informationally_independent: informational,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelFlagsDoc {
    pub pairwise: bool,
    pub full: bool,
    pub weak: bool,
}

impl From<&LevelReport> for LevelFlagsDoc {
    fn from(report: &LevelReport) -> Self {
        Self {
            pairwise: report.pairwise,
            full: report.full,
            weak: report.weak,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileDoc {
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    #[serde(rename = "R_tilde")]
    pub r_tilde: Vec<f64>,
    #[serde(rename = "R_hat")]
    pub r_hat: Vec<f64>,
}

/// The report document emitted by `analyze`, `example`, and `system`.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReportDoc {
    pub independence: LevelFlagsDoc,
    pub totalness: LevelFlagsDoc,
    #[serde(rename = "A")]
    pub a: WireMatrix,
    pub eta: f64,
    #[serde(rename = "T")]
    pub t: WireMatrix,
    pub epsilon: f64,
    pub profile: ProfileDoc,
    pub informationally_independent: bool,
}

impl Analysis {
    pub fn to_doc(&self) -> AnalysisReportDoc {
        AnalysisReportDoc {
            independence: (&self.independence).into(),
            totalness: (&self.totalness).into(),
            a: matrix_to_wire(&self.independence_matrix),
            eta: self.eta,
            t: matrix_to_wire(&self.totalness_matrix),
            epsilon: self.epsilon,
            profile: ProfileDoc {
                r: self.profile.r.clone(),
                r_tilde: self.profile.r_tilde.clone(),
                r_hat: self.profile.r_hat.clone(),
            },
            informationally_independent: self.informationally_independent,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalBoundDoc {
    pub raw: f64,
    pub normalized: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuantumBoundDoc {
    pub bound: f64,
    pub satisfied: bool,
}

/// The report document emitted by the `pentagram` command.
#[derive(Debug, Clone, Serialize)]
pub struct PentagramReportDoc {
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    #[serde(rename = "sum_R")]
    pub sum_r: f64,
    pub eta: f64,
    pub classical_bound: ClassicalBoundDoc,
    pub quantum_bound: QuantumBoundDoc,
    #[serde(rename = "A")]
    pub a: WireMatrix,
    pub eigenvalues: Vec<f64>,
    pub max_violating_state: WireVector,
}

impl PentagramReportDoc {
    pub fn from_report(report: &PentagramReport) -> Self {
        Self {
            r: report.probabilities.to_vec(),
            sum_r: report.sum,
            eta: report.eta,
            classical_bound: ClassicalBoundDoc {
                raw: crate::pentagram::CLASSICAL_BOUND,
                normalized: crate::pentagram::CLASSICAL_BOUND / 5.0,
                satisfied: report.classical_bound_satisfied,
            },
            quantum_bound: QuantumBoundDoc {
                bound: crate::pentagram::QUANTUM_BOUND,
                satisfied: report.quantum_bound_satisfied,
            },
            a: matrix_to_wire(&report.matrix),
            eigenvalues: report.eigenvalues.to_vec(),
            max_violating_state: vector_to_wire(&report.max_violating_state),
        }
    }
}
