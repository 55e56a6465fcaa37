//! Certified common eigenvectors.

use std::fmt;

use rayon::prelude::*;

use crate::group::FiniteUnitaryGroup;
use crate::numerics::{distance, inner, norm, NumericsError, UnitVector, C64};

/// `1/(3600 n¹¹)`: below this weak defect a common eigenvector within
/// distance `1/n` is guaranteed.
pub fn reducibility_threshold(n: usize) -> f64 {
    1.0 / (3600.0 * (n as f64).powi(11))
}

/// `3600 n¹¹ ε`, the squared-distance bound of the truncation construction.
pub fn truncation_bound(n: usize, eps: f64) -> f64 {
    3600.0 * (n as f64).powi(11) * eps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Average,
    Rho,
    Monomial,
    Truncate,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Average => "average",
            Method::Rho => "rho",
            Method::Monomial => "monomial",
            Method::Truncate => "truncate",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One inequality evaluated during a construction.
///
/// `guaranteed` checks follow from hypotheses that were verified on the
/// input; a failing guaranteed check is a falsification event. Other checks
/// are informative only.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub strict: bool,
    pub holds: bool,
    pub guaranteed: bool,
}

impl BoundCheck {
    pub fn new(
        name: impl Into<String>,
        measured: f64,
        bound: f64,
        strict: bool,
        guaranteed: bool,
    ) -> Self {
        let holds = if strict {
            measured < bound
        } else {
            measured <= bound
        };
        Self {
            name: name.into(),
            measured,
            bound,
            strict,
            holds,
            guaranteed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorCertificate {
    pub method: Method,
    /// The constructed vector, not necessarily of unit norm.
    pub eta: Vec<C64>,
    pub eta_unit: UnitVector,
    /// `⟨G η̂, η̂⟩` for each generator.
    pub characters: Vec<C64>,
    /// `max_G ‖G η̂ − ⟨G η̂, η̂⟩ η̂‖` over all elements.
    pub max_residual: f64,
    /// `‖ξ − η‖²` for the unnormalized `η`.
    pub distance_sq: f64,
    /// `3600 n¹¹ ε`.
    pub bound_value: f64,
    /// Every guaranteed check holds (the residual check is always guaranteed).
    pub bound_holds: bool,
    /// Measured weak defect of `ξ`.
    pub eps: f64,
    /// Whether `eps` satisfies the method's hypothesis.
    pub hypothesis_holds: bool,
    pub checks: Vec<BoundCheck>,
}

impl EigenvectorCertificate {
    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_guaranteed_checks(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| c.guaranteed && !c.holds)
    }
}

/// `χ(G) = ⟨G v, v⟩` and `‖G v − χ(G) v‖` for every element, for unit `v`.
pub fn rayleigh_characters(g: &FiniteUnitaryGroup, v: &[C64]) -> Vec<(C64, f64)> {
    g.elements()
        .par_iter()
        .map(|e| {
            let gv = e.apply(v);
            let chi = inner(&gv, v);
            let res = gv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - chi * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            (chi, res)
        })
        .collect()
}

/// Assembles a certificate: measures characters and residuals of `eta` on
/// the whole group and appends the residual check against `residual_tol`.
pub(crate) fn certify(
    method: Method,
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
    eta: Vec<C64>,
    eps: f64,
    hypothesis_holds: bool,
    mut checks: Vec<BoundCheck>,
) -> Result<EigenvectorCertificate, NumericsError> {
    let eta_unit = UnitVector::new(eta.clone())?;
    let per_element = rayleigh_characters(g, eta_unit.entries());
    let max_residual = per_element.iter().map(|&(_, r)| r).fold(0.0, f64::max);
    let characters = if g.generator_indices().is_empty() {
        per_element.iter().map(|&(c, _)| c).collect()
    } else {
        g.generator_indices()
            .iter()
            .map(|&i| per_element[i].0)
            .collect()
    };
    checks.push(BoundCheck::new(
        "residual",
        max_residual,
        g.tol().residual_tol,
        false,
        true,
    ));
    let n = g.dim();
    let bound_holds = checks.iter().all(|c| c.holds || !c.guaranteed);
    Ok(EigenvectorCertificate {
        method,
        distance_sq: distance(xi.entries(), &eta).powi(2),
        eta,
        eta_unit,
        characters,
        max_residual,
        bound_value: truncation_bound(n, eps),
        bound_holds,
        eps,
        hypothesis_holds,
        checks,
    })
}

/// Absolute error of a measured weak defect `1 − |⟨Gξ,ξ⟩|` on `ℂⁿ`: the
/// inner product is a sum of `n` products, each rounded once.
pub fn defect_rounding(n: usize) -> f64 {
    4.0 * n.max(1) as f64 * f64::EPSILON
}

/// Norm below which an average is treated as the zero vector.
pub(crate) const ZERO_VECTOR_NORM: f64 = 1e-10;

pub(crate) fn is_negligible(v: &[C64]) -> bool {
    norm(v) <= ZERO_VECTOR_NORM
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert!((reducibility_threshold(2) - 1.0 / (3600.0 * 2048.0)).abs() < 1e-20);
        assert!((reducibility_threshold(2) - 1.356e-7).abs() < 1e-10);
        assert!((reducibility_threshold(4) - 6.62e-11).abs() < 1e-13);
        assert_eq!(truncation_bound(1, 0.5), 1800.0);
    }

    #[test]
    fn strictness() {
        assert!(!BoundCheck::new("x", 1.0, 1.0, true, true).holds);
        assert!(BoundCheck::new("x", 1.0, 1.0, false, true).holds);
    }
}
