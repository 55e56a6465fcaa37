//! JSON shapes read and written by the CLI.
//!
//! Complex numbers are `[re, im]` pairs and floats use serde_json's shortest
//! round-trip formatting, so writing a value and reading it back is exact.

use serde::{Deserialize, Serialize};
use unireduce::decompose::BlockDecomposition;
use unireduce::numerics::certify_unitary;
use unireduce::{
    BoundCheck, ComplexMatrix, DefectReport, EigenvectorCertificate, FiniteUnitaryGroup, Tolerance,
    UnitVector, UnitaryMatrix, C64,
};

use crate::CliError;

pub type ComplexJson = [f64; 2];

fn to_json(z: &C64) -> ComplexJson {
    [z.re, z.im]
}

fn from_json(z: &ComplexJson) -> C64 {
    C64::new(z[0], z[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<Vec<ComplexJson>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixJson {
            rows: m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(to_json).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        let rows: Vec<Vec<C64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(from_json).collect())
            .collect();
        Ok(ComplexMatrix::from_rows(&rows)?)
    }

    pub fn to_unitary(&self, tol: &Tolerance) -> Result<UnitaryMatrix, CliError> {
        Ok(certify_unitary(self.to_matrix()?, tol)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub entries: Vec<ComplexJson>,
}

impl VectorJson {
    pub fn from_slice(v: &[C64]) -> Self {
        VectorJson {
            entries: v.iter().map(to_json).collect(),
        }
    }

    /// Reads a vector and normalizes it; a zero vector is an input error.
    pub fn to_unit(&self) -> Result<UnitVector, CliError> {
        Ok(UnitVector::new(
            self.entries.iter().map(from_json).collect(),
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceJson {
    pub eq_tol: f64,
    pub unitarity_tol: f64,
    pub residual_tol: f64,
}

impl From<Tolerance> for ToleranceJson {
    fn from(t: Tolerance) -> Self {
        ToleranceJson {
            eq_tol: t.eq_tol,
            unitarity_tol: t.unitarity_tol,
            residual_tol: t.residual_tol,
        }
    }
}

impl ToleranceJson {
    pub fn to_tolerance(self) -> Result<Tolerance, CliError> {
        Ok(Tolerance::new(
            self.eq_tol,
            self.unitarity_tol,
            self.residual_tol,
        )?)
    }
}

/// A generator given either as a matrix or as an index into `elements`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorJson {
    Index(usize),
    Matrix(MatrixJson),
}

/// Input of `closure`: generator matrices, or a complete group file whose
/// generators are element indices.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ClosureInput {
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub elements: Vec<MatrixJson>,
    #[serde(default)]
    pub tol: Option<ToleranceJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub dim: usize,
    pub elements: Vec<MatrixJson>,
    pub generators: Vec<usize>,
    pub tol: ToleranceJson,
}

impl GroupJson {
    pub fn from_group(g: &FiniteUnitaryGroup) -> Self {
        GroupJson {
            dim: g.dim(),
            elements: g
                .elements()
                .iter()
                .map(|e| MatrixJson::from_matrix(e.matrix()))
                .collect(),
            generators: g.generator_indices().to_vec(),
            tol: (*g.tol()).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureSummary {
    pub order: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectJson {
    pub weak_defect: f64,
    pub strong_defect: f64,
    pub argmin_element: usize,
    pub moduli: Vec<f64>,
}

impl From<&DefectReport> for DefectJson {
    fn from(d: &DefectReport) -> Self {
        DefectJson {
            weak_defect: d.weak_defect,
            strong_defect: d.strong_defect,
            argmin_element: d.argmin_element,
            moduli: d.moduli.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub strict: bool,
    pub holds: bool,
    pub guaranteed: bool,
}

impl From<&BoundCheck> for CheckJson {
    fn from(c: &BoundCheck) -> Self {
        CheckJson {
            name: c.name.clone(),
            measured: c.measured,
            bound: c.bound,
            strict: c.strict,
            holds: c.holds,
            guaranteed: c.guaranteed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub method: String,
    /// Constructed vector; distance bounds refer to this one.
    pub eta: VectorJson,
    pub eta_unit: VectorJson,
    pub characters: Vec<ComplexJson>,
    pub max_residual: f64,
    pub distance_sq: f64,
    pub bound_value: f64,
    pub bound_holds: bool,
    pub eps: f64,
    pub hypothesis_holds: bool,
    pub checks: Vec<CheckJson>,
}

impl From<&EigenvectorCertificate> for CertificateJson {
    fn from(c: &EigenvectorCertificate) -> Self {
        CertificateJson {
            method: c.method.to_string(),
            eta: VectorJson::from_slice(&c.eta),
            eta_unit: VectorJson::from_slice(c.eta_unit.entries()),
            characters: c.characters.iter().map(to_json).collect(),
            max_residual: c.max_residual,
            distance_sq: c.distance_sq,
            bound_value: c.bound_value,
            bound_holds: c.bound_holds,
            eps: c.eps,
            hypothesis_holds: c.hypothesis_holds,
            checks: c.checks.iter().map(CheckJson::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub seed: u64,
    pub block_sizes: Vec<usize>,
    pub basis_change: MatrixJson,
}

impl From<&BlockDecomposition> for DecompositionJson {
    fn from(b: &BlockDecomposition) -> Self {
        DecompositionJson {
            seed: b.seed,
            block_sizes: b.block_sizes.clone(),
            basis_change: MatrixJson::from_matrix(b.basis_change.matrix()),
        }
    }
}
