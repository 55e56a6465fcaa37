//! Defect metrics and averaging constructions of fixed points and common
//! eigenvectors.

use rayon::prelude::*;
use thiserror::Error;

use crate::certificate::{certify, is_negligible, BoundCheck, EigenvectorCertificate, Method};
use crate::group::{derived_elements, scalar_value, FiniteUnitaryGroup, GroupError};
use crate::numerics::{
    distance, inner, norm, pairwise_sum, NumericsError, UnitVector, UnitaryMatrix, C64,
};
use crate::phase::nearest_root;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixedPointError {
    #[error("dimension mismatch: group acts on C^{expected}, vector has {found} entries")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("|<G xi, xi>| = {modulus:e} for element {element}; lambda_G is undefined")]
    VanishingInnerProduct { element: usize, modulus: f64 },
    #[error("group average has norm {norm:e}; no nonzero fixed point near xi")]
    ZeroAverage { norm: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("numerically inconsistent homomorphism: {0}")]
    HomomorphismFailure(String),
    #[error("certification failed: {what} (measured {measured:e}, bound {bound:e})")]
    CertificationFailed {
        what: String,
        measured: f64,
        bound: f64,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Inner products below this modulus make `λ_G` undefined.
pub const VANISHING_INNER_PRODUCT: f64 = 1e-12;

pub(crate) fn check_dim(g: &FiniteUnitaryGroup, xi: &UnitVector) -> Result<(), FixedPointError> {
    if g.dim() != xi.dim() {
        return Err(FixedPointError::DimensionMismatch {
            expected: g.dim(),
            found: xi.dim(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    /// `1 − min_G |⟨Gξ, ξ⟩|`, clamped to `[0, 1]`.
    pub weak_defect: f64,
    /// `max_G ‖Gξ − ξ‖`.
    pub strong_defect: f64,
    /// First element attaining the minimum modulus.
    pub argmin_element: usize,
    /// `|⟨Gξ, ξ⟩|` per element.
    pub moduli: Vec<f64>,
}

/// `1 − |⟨Gξ, ξ⟩|` for one element given `Gξ`.
///
/// For unit `ξ` this equals `‖Gξ − λ_G ξ‖² / 2`, which is evaluated instead
/// whenever `λ_G` is defined: subtracting a modulus close to 1 from 1 loses
/// all significant digits once the defect nears rounding level, and the
/// square roots taken downstream would magnify that loss to about `10⁻⁸`.
fn element_defect(gx: &[C64], x: &[C64]) -> f64 {
    let ip = inner(gx, x);
    let modulus = ip.norm();
    if modulus <= VANISHING_INNER_PRODUCT {
        return 1.0 - modulus;
    }
    let lambda = ip / modulus;
    let residual_sq: f64 = gx
        .iter()
        .zip(x)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum();
    residual_sq / (2.0 * inner(x, x).re)
}

pub fn defect(g: &FiniteUnitaryGroup, xi: &UnitVector) -> Result<DefectReport, FixedPointError> {
    check_dim(g, xi)?;
    let x = xi.entries();
    let per: Vec<(f64, f64, f64)> = g
        .elements()
        .par_iter()
        .map(|e| {
            let gx = e.apply(x);
            (
                inner(&gx, x).norm(),
                element_defect(&gx, x),
                distance(&gx, x),
            )
        })
        .collect();
    let mut argmin = 0;
    for (i, p) in per.iter().enumerate() {
        if p.1 > per[argmin].1 {
            argmin = i;
        }
    }
    Ok(DefectReport {
        weak_defect: per[argmin].1.clamp(0.0, 1.0),
        strong_defect: per.iter().map(|p| p.2).fold(0.0, f64::max),
        argmin_element: argmin,
        moduli: per.into_iter().map(|p| p.0).collect(),
    })
}

/// `λ_G = ⟨Gξ, ξ⟩/|⟨Gξ, ξ⟩|` and the quantities of the identity
/// `‖Gξ − λ_G ξ‖² = 2 − 2|⟨Gξ, ξ⟩|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaEntry {
    pub lambda: C64,
    pub inner: C64,
    /// `‖Gξ − λ_G ξ‖²`, computed directly.
    pub residual_sq: f64,
}

impl LambdaEntry {
    /// `|‖Gξ − λξ‖² − (2 − 2|⟨Gξ, ξ⟩|)|`.
    pub fn identity_error(&self) -> f64 {
        (self.residual_sq - (2.0 - 2.0 * self.inner.norm())).abs()
    }
}

/// `λ_G` for a single unitary; `None` when `|⟨Gξ, ξ⟩| ≤ 10⁻¹²`.
pub fn lambda_entry(g: &UnitaryMatrix, xi: &UnitVector) -> Option<LambdaEntry> {
    let x = xi.entries();
    let gx = g.apply(x);
    let ip = inner(&gx, x);
    let modulus = ip.norm();
    if modulus <= VANISHING_INNER_PRODUCT {
        return None;
    }
    let lambda = ip / modulus;
    let residual_sq = gx
        .iter()
        .zip(x)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum();
    Some(LambdaEntry {
        lambda,
        inner: ip,
        residual_sq,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaMap {
    pub entries: Vec<LambdaEntry>,
    /// Largest deviation from the exact identity over all elements.
    pub max_identity_error: f64,
}

impl LambdaMap {
    pub fn lambdas(&self) -> Vec<C64> {
        self.entries.iter().map(|e| e.lambda).collect()
    }
}

/// Tolerance on the identity `‖Gξ − λ_G ξ‖² = 2 − 2|⟨Gξ, ξ⟩|`.
pub const LAMBDA_IDENTITY_TOL: f64 = 1e-10;

pub fn lambda_map(g: &FiniteUnitaryGroup, xi: &UnitVector) -> Result<LambdaMap, FixedPointError> {
    check_dim(g, xi)?;
    let entries: Vec<Result<LambdaEntry, FixedPointError>> = g
        .elements()
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            lambda_entry(e, xi).ok_or_else(|| FixedPointError::VanishingInnerProduct {
                element: i,
                modulus: inner(&e.apply(xi.entries()), xi.entries()).norm(),
            })
        })
        .collect();
    let entries = entries.into_iter().collect::<Result<Vec<_>, _>>()?;
    let max_identity_error = entries
        .iter()
        .map(LambdaEntry::identity_error)
        .fold(0.0, f64::max);
    if max_identity_error > LAMBDA_IDENTITY_TOL {
        return Err(FixedPointError::CertificationFailed {
            what: "||G xi - lambda xi||^2 = 2 - 2|<G xi, xi>|".into(),
            measured: max_identity_error,
            bound: LAMBDA_IDENTITY_TOL,
        });
    }
    Ok(LambdaMap {
        entries,
        max_identity_error,
    })
}

/// `(1/|𝒢|) Σ_G w(G)·Gξ` with pairwise summation in element order.
pub(crate) fn weighted_average(
    g: &FiniteUnitaryGroup,
    xi: &[C64],
    weights: Option<&[C64]>,
) -> Vec<C64> {
    let terms: Vec<Vec<C64>> = g
        .elements()
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let gx = e.apply(xi);
            match weights {
                Some(w) => gx.into_iter().map(|z| z * w[i]).collect(),
                None => gx,
            }
        })
        .collect();
    let scale = 1.0 / g.order() as f64;
    pairwise_sum(&terms, xi.len())
        .into_iter()
        .map(|z| z * scale)
        .collect()
}

/// `max_G ‖G v − c(G) v‖`.
pub(crate) fn max_eigen_residual(g: &FiniteUnitaryGroup, v: &[C64], chars: Option<&[C64]>) -> f64 {
    g.elements()
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let c = chars.map_or(C64::new(1.0, 0.0), |c| c[i]);
            e.apply(v)
                .iter()
                .zip(v)
                .map(|(a, b)| (a - c * b).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .reduce(|| 0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AverageFixedPoint {
    /// `(1/|𝒢|) Σ_G Gξ`, not normalized.
    pub eta: Vec<C64>,
    /// `‖η − ξ‖`.
    pub distance: f64,
    /// `max_G ‖Gη − η‖`.
    pub max_residual: f64,
    pub strong_defect: f64,
}

/// Slack on `‖η − ξ‖ ≤ strong_defect`.
pub const AVERAGE_DISTANCE_SLACK: f64 = 1e-10;

pub fn average_fixed_point(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
) -> Result<AverageFixedPoint, FixedPointError> {
    let report = defect(g, xi)?;
    let eta = weighted_average(g, xi.entries(), None);
    if is_negligible(&eta) {
        return Err(FixedPointError::ZeroAverage { norm: norm(&eta) });
    }
    let max_residual = max_eigen_residual(g, &eta, None);
    if max_residual > g.tol().residual_tol {
        return Err(FixedPointError::CertificationFailed {
            what: "G eta = eta".into(),
            measured: max_residual,
            bound: g.tol().residual_tol,
        });
    }
    let dist = distance(&eta, xi.entries());
    if dist > report.strong_defect + AVERAGE_DISTANCE_SLACK {
        return Err(FixedPointError::CertificationFailed {
            what: "||eta - xi|| <= strong defect".into(),
            measured: dist,
            bound: report.strong_defect,
        });
    }
    Ok(AverageFixedPoint {
        eta,
        distance: dist,
        max_residual,
        strong_defect: report.strong_defect,
    })
}

/// Certificate for the plain group average.
pub fn average_certificate(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
) -> Result<EigenvectorCertificate, FixedPointError> {
    let report = defect(g, xi)?;
    let avg = average_fixed_point(g, xi)?;
    let checks = vec![
        BoundCheck::new(
            "fixed_residual",
            avg.max_residual,
            g.tol().residual_tol,
            false,
            true,
        ),
        BoundCheck::new(
            "distance<=strong_defect",
            avg.distance,
            report.strong_defect + AVERAGE_DISTANCE_SLACK,
            false,
            true,
        ),
    ];
    Ok(certify(
        Method::Average,
        g,
        xi,
        avg.eta,
        report.weak_defect,
        true,
        checks,
    )?)
}

/// Slack on `‖Cξ − ξ‖ ≤ 4√(2ε)`.
pub const COMMUTATOR_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorDefectReport {
    pub eps: f64,
    /// Number of commutator elements checked.
    pub checked: usize,
    /// Largest `‖Cξ − ξ‖ / √(2ε)`; distances within the slack count as 0.
    pub worst_ratio: f64,
    pub worst_element: usize,
    /// Commutators violating `‖Cξ − ξ‖ ≤ 4√(2ε) + 10⁻⁹`.
    pub violations: Vec<usize>,
}

impl CommutatorDefectReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `‖Cξ − ξ‖ ≤ 4√(2ε)` on every single commutator `C = [A, B]`.
pub fn commutator_defect_check(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
) -> Result<CommutatorDefectReport, FixedPointError> {
    let eps = defect(g, xi)?.weak_defect;
    let commutators = derived_elements(g).commutators;
    let root = (2.0 * eps).sqrt();
    let bound = 4.0 * root + COMMUTATOR_SLACK;
    let dists: Vec<f64> = commutators
        .par_iter()
        .map(|&c| distance(&g.element(c).apply(xi.entries()), xi.entries()))
        .collect();
    let mut report = CommutatorDefectReport {
        eps,
        checked: commutators.len(),
        worst_ratio: 0.0,
        worst_element: commutators[0],
        violations: Vec::new(),
    };
    for (&c, &d) in commutators.iter().zip(&dists) {
        let ratio = if d <= COMMUTATOR_SLACK {
            0.0
        } else if root > 0.0 {
            d / root
        } else {
            f64::INFINITY
        };
        if ratio > report.worst_ratio {
            report.worst_ratio = ratio;
            report.worst_element = c;
        }
        if d > bound {
            report.violations.push(c);
        }
    }
    Ok(report)
}

/// `1/(32 n²)`, the weak-defect hypothesis for the commutator construction.
pub fn rho_threshold(n: usize) -> f64 {
    1.0 / (32.0 * (n * n) as f64)
}

/// Agreement required between `ρ(GH)` and `ρ(G)ρ(H)`.
pub const HOMOMORPHISM_TOL: f64 = 1e-8;

/// Distinct scalars `λ` over all witnesses `G = λ[A, B]`, per element; the
/// scalar of the first witness in canonical pair order comes first.
pub fn witness_scalars(g: &FiniteUnitaryGroup) -> Result<Vec<Vec<C64>>, FixedPointError> {
    let table = g.table();
    let tol = g.tol().eq_tol;
    let mut scalar_of = vec![None; g.order()];
    for i in g.scalar_elements() {
        scalar_of[i] = scalar_value(g.element(i).matrix(), tol);
    }
    let commutators = derived_elements(g).commutators;
    let mut first_pair = vec![usize::MAX; g.order()];
    for a in 0..g.order() {
        for b in 0..g.order() {
            let c = table.commutator(a, b);
            if first_pair[c] == usize::MAX {
                first_pair[c] = a * g.order() + b;
            }
        }
    }
    (0..g.order())
        .map(|e| {
            let mut witnesses: Vec<(usize, C64)> = commutators
                .iter()
                .filter_map(|&c| scalar_of[table.mul(e, table.inv(c))].map(|s| (first_pair[c], s)))
                .collect();
            if witnesses.is_empty() {
                return Err(GroupError::NoWitness(e).into());
            }
            witnesses.sort_by_key(|w| w.0);
            let mut distinct: Vec<C64> = Vec::new();
            for (_, s) in witnesses {
                if distinct.iter().all(|d| (d - s).norm() > tol) {
                    distinct.push(s);
                }
            }
            Ok(distinct)
        })
        .collect()
}

/// Rounds a witness scalar onto `Ω_n` when it is an `n`-th root of unity.
fn round_scalar(lambda: C64, n: usize, tol: f64) -> C64 {
    let lambda = lambda / lambda.norm();
    match nearest_root(lambda, n) {
        Ok(r) if (r.alpha.value() - lambda).norm() <= tol => r.alpha.value(),
        _ => lambda,
    }
}

/// Common eigenvector from a weak `ε`-approximate fixed point of a group in
/// which every element is a scalar times a commutator, for `ε < 1/(32 n²)`:
/// `η = (1/|𝒢|) Σ conj(ρ(G)) Gξ` with `‖η − ξ‖ ≤ 4√(2ε)`.
pub fn rho_eigenvector(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
) -> Result<EigenvectorCertificate, FixedPointError> {
    let n = g.dim();
    if n < 2 {
        return Err(FixedPointError::HypothesisViolated(
            "dimension must be at least 2".into(),
        ));
    }
    let report = defect(g, xi)?;
    let eps = report.weak_defect;
    let limit = rho_threshold(n);
    if !(eps < limit) {
        return Err(FixedPointError::HypothesisViolated(format!(
            "weak defect {eps:e} is not below 1/(32 n^2) = {limit:e}"
        )));
    }
    let x = xi.entries();
    let radius = 4.0 * (2.0 * eps).sqrt();
    let d_n = crate::phase::adjacent_root_distance(n);
    let tol = g.tol().eq_tol;

    // ρ(G) is the first witness scalar; under the hypothesis every witness
    // lies within 4√(2ε) of λ_G, so all of them must agree
    let scalars = witness_scalars(g)?;
    let mut rho = Vec::with_capacity(g.order());
    for (e, s) in scalars.iter().enumerate() {
        if s.len() > 1 {
            return Err(FixedPointError::HomomorphismFailure(format!(
                "element {e} has witnesses with scalars {} and {}",
                s[0], s[1]
            )));
        }
        rho.push(round_scalar(s[0], n, tol));
    }
    let table = g.table();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let gap = (rho[table.mul(a, b)] - rho[a] * rho[b]).norm();
            if gap > HOMOMORPHISM_TOL {
                return Err(FixedPointError::HomomorphismFailure(format!(
                    "|rho(GH) - rho(G) rho(H)| = {gap:e} for elements {a}, {b}"
                )));
            }
        }
    }

    // every element moves xi by at most 4√(2ε) off ρ(G)ξ, and no other
    // scalar in ρ(G)·Ω_n comes that close
    let rho_distance = g
        .elements()
        .par_iter()
        .zip(&rho)
        .map(|(e, &r)| {
            let gx = e.apply(x);
            gx.iter()
                .zip(x)
                .map(|(a, b)| (a - r * b).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .reduce(|| 0.0, f64::max);
    let conj_rho: Vec<C64> = rho.iter().map(|r| r.conj()).collect();
    let eta = weighted_average(g, x, Some(&conj_rho));
    if is_negligible(&eta) {
        return Err(FixedPointError::ZeroAverage { norm: norm(&eta) });
    }
    let eigen_residual = max_eigen_residual(g, &eta, Some(&rho));
    let checks = vec![
        BoundCheck::new(
            "rho_distance",
            rho_distance,
            radius + COMMUTATOR_SLACK,
            false,
            true,
        ),
        BoundCheck::new("rho_unique", radius, d_n - radius, true, true),
        BoundCheck::new(
            "rho_residual",
            eigen_residual,
            g.tol().residual_tol,
            false,
            true,
        ),
        BoundCheck::new(
            "distance",
            distance(&eta, x),
            radius + COMMUTATOR_SLACK,
            false,
            true,
        ),
    ];
    Ok(certify(Method::Rho, g, xi, eta, eps, true, checks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_group, DEFAULT_CAP};
    use crate::numerics::{certify_unitary, ComplexMatrix, Tolerance};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn unitary(rows: Vec<Vec<C64>>) -> UnitaryMatrix {
        certify_unitary(
            ComplexMatrix::from_rows(&rows).unwrap(),
            &Tolerance::default(),
        )
        .unwrap()
    }

    fn group(gens: Vec<UnitaryMatrix>) -> FiniteUnitaryGroup {
        close_group(&gens, Tolerance::default(), DEFAULT_CAP).unwrap()
    }

    fn minus_identity() -> FiniteUnitaryGroup {
        group(vec![unitary(vec![
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ])])
    }

    fn swap() -> FiniteUnitaryGroup {
        group(vec![unitary(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])])
    }

    fn s3() -> FiniteUnitaryGroup {
        let cyc = UnitaryMatrix::from_trusted(ComplexMatrix::permutation(&[1, 2, 0]));
        let tr = UnitaryMatrix::from_trusted(ComplexMatrix::permutation(&[1, 0, 2]));
        group(vec![cyc, tr])
    }

    #[test]
    fn defect_examples() {
        let trivial = group(vec![UnitaryMatrix::identity(2)]);
        let xi = UnitVector::new(vec![c(0.3, 0.1), c(-0.2, 0.9)]).unwrap();
        let r = defect(&trivial, &xi).unwrap();
        assert_eq!((r.weak_defect, r.strong_defect), (0.0, 0.0));

        let r = defect(&minus_identity(), &xi).unwrap();
        assert!(r.weak_defect < 1e-15);
        assert!((r.strong_defect - 2.0).abs() < 1e-15);

        let r = defect(&s3(), &UnitVector::basis(3, 0)).unwrap();
        assert_eq!(r.weak_defect, 1.0);
        assert_eq!(r.moduli[r.argmin_element], 0.0);

        assert!(matches!(
            defect(&s3(), &xi),
            Err(FixedPointError::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn lambda_examples() {
        let xi = UnitVector::from_real(&[0.6, 0.8]).unwrap();
        let scalar = unitary(vec![
            vec![c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 1.0)],
        ]);
        let e = lambda_entry(&scalar, &xi).unwrap();
        assert!((e.lambda - c(0.0, 1.0)).norm() < 1e-15);
        assert!(e.residual_sq < 1e-30);

        let xi = UnitVector::from_real(&[0.9f64.sqrt(), 0.1f64.sqrt()]).unwrap();
        let z = unitary(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ]);
        let e = lambda_entry(&z, &xi).unwrap();
        assert!((e.inner - c(0.8, 0.0)).norm() < 1e-15);
        assert!((e.lambda - c(1.0, 0.0)).norm() < 1e-15);
        assert!((e.residual_sq - 0.4).abs() < 1e-15);

        let m = lambda_map(&s3(), &UnitVector::uniform(3)).unwrap();
        assert!(m.lambdas().iter().all(|l| (l - c(1.0, 0.0)).norm() < 1e-15));
        assert!(matches!(
            lambda_map(&s3(), &UnitVector::basis(3, 0)),
            Err(FixedPointError::VanishingInnerProduct { .. })
        ));
    }

    #[test]
    fn average_examples() {
        let xi = UnitVector::basis(2, 0);
        let trivial = group(vec![UnitaryMatrix::identity(2)]);
        let a = average_fixed_point(&trivial, &xi).unwrap();
        assert_eq!(a.eta, xi.entries());
        assert_eq!(a.distance, 0.0);

        let a = average_fixed_point(&swap(), &xi).unwrap();
        assert!(distance(&a.eta, &[c(0.5, 0.0), c(0.5, 0.0)]) < 1e-15);
        assert!((a.distance - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((a.strong_defect - 2f64.sqrt()).abs() < 1e-15);

        assert!(matches!(
            average_fixed_point(&minus_identity(), &xi),
            Err(FixedPointError::ZeroAverage { .. })
        ));
    }

    #[test]
    fn commutator_check_examples() {
        let r = commutator_defect_check(&swap(), &UnitVector::basis(2, 0)).unwrap();
        assert_eq!(r.checked, 1);
        assert_eq!(r.worst_ratio, 0.0);

        let r = commutator_defect_check(&s3(), &UnitVector::uniform(3)).unwrap();
        assert_eq!(r.checked, 3);
        assert_eq!(r.worst_ratio, 0.0);
        assert!(r.holds());

        // Pauli closure with xi = e1: eps = 1 from X, so -I's distance 2 is within 4√2
        let x = unitary(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        let z = unitary(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ]);
        let r = commutator_defect_check(&group(vec![x, z]), &UnitVector::basis(2, 0)).unwrap();
        assert_eq!(r.eps, 1.0);
        assert!(r.holds());
        assert!((r.worst_ratio - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rho_on_scalar_group() {
        let w = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let g = group(vec![unitary(vec![
            vec![w, c(0.0, 0.0)],
            vec![c(0.0, 0.0), w],
        ])]);
        let xi = UnitVector::new(vec![c(0.6, 0.2), c(0.1, -0.7)]).unwrap();
        let cert = rho_eigenvector(&g, &xi).unwrap();
        assert!(distance(&cert.eta, xi.entries()) < 1e-15);
        assert!(cert.bound_holds);
        // each scalar is its own witness: ωᵏI = ωᵏ·[I, I]
        let scalars = witness_scalars(&g).unwrap();
        for (e, s) in g.elements().iter().zip(&scalars) {
            assert_eq!(s.len(), 1);
            assert!((e.matrix().get(0, 0) - s[0]).norm() < 1e-15);
        }
    }

    #[test]
    fn rho_on_trivial_group_and_failures() {
        let trivial = group(vec![UnitaryMatrix::identity(2)]);
        let xi = UnitVector::from_real(&[0.6, 0.8]).unwrap();
        let cert = rho_eigenvector(&trivial, &xi).unwrap();
        assert_eq!(cert.eta, xi.entries());

        let x = unitary(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        let z = unitary(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ]);
        let pauli = group(vec![x, z]);
        let near = UnitVector::from_real(&[1.0, 1.0 + 1e-6]).unwrap();
        assert!(matches!(
            rho_eigenvector(&pauli, &near),
            Err(FixedPointError::HypothesisViolated(_))
        ));
        assert!(matches!(
            witness_scalars(&pauli),
            Err(FixedPointError::Group(GroupError::NoWitness(_)))
        ));
    }
}
