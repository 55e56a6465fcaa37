use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use unireduce::decompose::{reduce_blocks, DEFAULT_SEED};
use unireduce::group::{monomial_structure, DEFAULT_CAP};
use unireduce::{
    average_certificate, close_group, defect, monomial_eigenvector, rho_eigenvector,
    truncate_eigenvector, EigenvectorCertificate, FiniteUnitaryGroup, Tolerance, UnitVector,
    UnitaryMatrix,
};

use crate::suites::{run_suite, Suite};
use crate::wire::{
    CertificateJson, ClosureInput, ClosureSummary, DecompositionJson, DefectJson, GeneratorJson,
    GroupJson, VectorJson,
};
use crate::{CliError, ExitCode, Outcome};

/// Environment variable overriding `eq_tol` for every group read or built.
pub const TOL_ENV: &str = "UNIREDUCE_TOL";

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

fn to_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("wire types serialize");
    s.push('\n');
    s
}

/// `tol` from the file, or defaults, with `eq_tol` replaced by `UNIREDUCE_TOL`.
fn effective_tolerance(from_file: Option<Tolerance>) -> Result<Tolerance, CliError> {
    let base = from_file.unwrap_or_default();
    match std::env::var(TOL_ENV) {
        Ok(raw) => {
            let eq_tol: f64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{TOL_ENV}={raw:?} is not a number")))?;
            Ok(base.with_eq_tol(eq_tol)?)
        }
        Err(std::env::VarError::NotPresent) => Ok(base),
        Err(e) => Err(CliError::Usage(format!("{TOL_ENV}: {e}"))),
    }
}

pub fn read_group(path: &Path) -> Result<FiniteUnitaryGroup, CliError> {
    let json: GroupJson = read_json(path)?;
    let tol = effective_tolerance(Some(json.tol.to_tolerance()?))?;
    let elements = json
        .elements
        .iter()
        .map(|m| m.to_unitary(&tol))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = elements.iter().find(|e| e.dim() != json.dim) {
        return Err(CliError::Usage(format!(
            "group declares dim {} but has a {}x{} element",
            json.dim,
            bad.dim(),
            bad.dim()
        )));
    }
    Ok(FiniteUnitaryGroup::from_elements(
        elements,
        json.generators,
        tol,
    )?)
}

pub fn read_vector(path: &Path) -> Result<UnitVector, CliError> {
    let json: VectorJson = read_json(path)?;
    json.to_unit()
}

fn closure(in_path: &Path, out_path: &Path, cap: usize) -> Result<String, CliError> {
    let input: ClosureInput = read_json(in_path)?;
    let tol = effective_tolerance(input.tol.map(|t| t.to_tolerance()).transpose()?)?;
    let elements = input
        .elements
        .iter()
        .map(|m| m.to_unitary(&tol))
        .collect::<Result<Vec<_>, _>>()?;
    let generators = input
        .generators
        .iter()
        .map(|g| match g {
            GeneratorJson::Matrix(m) => m.to_unitary(&tol),
            GeneratorJson::Index(i) => elements
                .get(*i)
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("generator index {i} out of range"))),
        })
        .collect::<Result<Vec<UnitaryMatrix>, _>>()?;
    let group = close_group(&generators, tol, cap)?;
    let text = to_line(&GroupJson::from_group(&group));
    std::fs::write(out_path, text).map_err(|source| CliError::Io {
        path: out_path.display().to_string(),
        source,
    })?;
    Ok(to_line(&ClosureSummary {
        order: group.order(),
        dim: group.dim(),
    }))
}

/// Closes the generators in `in_path` and writes the group to `out_path`.
pub fn cmd_closure(in_path: &Path, out_path: &Path, cap: Option<usize>) -> Outcome {
    closure(in_path, out_path, cap.unwrap_or(DEFAULT_CAP)).map_or_else(Outcome::from, Outcome::ok)
}

/// Prints the weak and strong defect of `ξ`.
pub fn cmd_defect(group_path: &Path, xi_path: &Path) -> Outcome {
    let run = || -> Result<String, CliError> {
        let g = read_group(group_path)?;
        let xi = read_vector(xi_path)?;
        Ok(to_line(&DefectJson::from(&defect(&g, &xi)?)))
    };
    run().map_or_else(Outcome::from, Outcome::ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    /// Monomial pipeline when the group is monomial, else truncation.
    Auto,
    Average,
    Rho,
    Monomial,
    Truncate,
}

impl std::str::FromStr for EigenMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(EigenMethod::Auto),
            "average" => Ok(EigenMethod::Average),
            "rho" => Ok(EigenMethod::Rho),
            "monomial" => Ok(EigenMethod::Monomial),
            "truncate" => Ok(EigenMethod::Truncate),
            other => Err(format!(
                "unknown method {other:?} (auto|average|rho|monomial|truncate)"
            )),
        }
    }
}

pub fn eigenvector(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
    method: EigenMethod,
) -> Result<EigenvectorCertificate, CliError> {
    Ok(match method {
        EigenMethod::Auto if monomial_structure(g).is_ok() => monomial_eigenvector(g, xi)?,
        EigenMethod::Auto | EigenMethod::Truncate => truncate_eigenvector(g, xi)?,
        EigenMethod::Monomial => monomial_eigenvector(g, xi)?,
        EigenMethod::Average => average_certificate(g, xi)?,
        EigenMethod::Rho => rho_eigenvector(g, xi)?,
    })
}

/// Builds a common eigenvector near `ξ` and prints its certificate. A
/// certificate whose guaranteed bounds fail exits with code 2.
pub fn cmd_eigenvector(group_path: &Path, xi_path: &Path, method: EigenMethod) -> Outcome {
    let run = || -> Result<EigenvectorCertificate, CliError> {
        let g = read_group(group_path)?;
        let xi = read_vector(xi_path)?;
        eigenvector(&g, &xi, method)
    };
    match run() {
        Err(e) => e.into(),
        Ok(cert) => {
            let stdout = to_line(&CertificateJson::from(&cert));
            if cert.bound_holds {
                return Outcome::ok(stdout);
            }
            let failed: Vec<String> = cert
                .failed_guaranteed_checks()
                .map(|c| {
                    format!(
                        "{} (measured {:e}, bound {:e})",
                        c.name, c.measured, c.bound
                    )
                })
                .collect();
            Outcome {
                code: ExitCode::BoundFailure,
                stdout,
                stderr: format!(
                    "FALSIFICATION: guaranteed bound failed: {}\n",
                    failed.join("; ")
                ),
            }
        }
    }
}

/// Prints the decomposition into irreducible invariant blocks.
pub fn cmd_decompose(group_path: &Path) -> Outcome {
    let run = || -> Result<String, CliError> {
        let g = read_group(group_path)?;
        Ok(to_line(&DecompositionJson::from(&reduce_blocks(
            &g,
            DEFAULT_SEED,
        )?)))
    };
    run().map_or_else(Outcome::from, Outcome::ok)
}

/// Runs a verification suite; exits 2 when any trial fails.
pub fn cmd_verify(suite: Suite, seed: u64, trials: usize) -> Outcome {
    if trials == 0 {
        return CliError::Usage("trials must be at least 1".into()).into();
    }
    let report = run_suite(suite, seed, trials);
    let stderr = format!("wall_time: {:.3} s\n", report.wall_time);
    let code = if report.failures.is_empty() {
        ExitCode::Ok
    } else {
        ExitCode::BoundFailure
    };
    Outcome {
        code,
        stdout: to_line(&report),
        stderr,
    }
}
