use super::oracle::{character_blocks, CharacterBlock};
use super::{check_dim, DecomposeError};
use crate::certificate::{
    certify, defect_rounding, reducibility_threshold, truncation_bound, BoundCheck,
    EigenvectorCertificate, Method,
};
use crate::fixedpoint::defect;
use crate::group::FiniteUnitaryGroup;
use crate::numerics::{inner, norm, UnitVector, C64};

/// Absolute slack on mass comparisons, covering rounding when `ε ≈ 0`.
const MASS_SLACK: f64 = 1e-14;

/// Characters closer than this (per generator) are the same character.
const CHARACTER_TOL: f64 = 1e-6;

/// Orthogonal projection of `xi` onto a character block.
fn project(block: &CharacterBlock, xi: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); xi.len()];
    for b in &block.basis {
        let c = inner(xi, b);
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

fn same_character(a: &[C64], b: &[C64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).norm() <= CHARACTER_TOL)
}

struct Split {
    eps: f64,
    blocks: Vec<CharacterBlock>,
    projections: Vec<Vec<C64>>,
    /// Block indices sorted by mass, descending.
    order: Vec<usize>,
    masses: Vec<f64>,
}

fn split_by_character(g: &FiniteUnitaryGroup, xi: &UnitVector) -> Result<Split, DecomposeError> {
    check_dim(g.dim(), xi)?;
    let eps = defect(g, xi)?.weak_defect;
    let blocks = character_blocks(g);
    if blocks.is_empty() {
        return Err(DecomposeError::NoCommonEigenvector {
            eps,
            threshold: reducibility_threshold(g.dim()),
        });
    }
    let projections: Vec<Vec<C64>> = blocks.iter().map(|b| project(b, xi.entries())).collect();
    let masses: Vec<f64> = projections.iter().map(|p| norm(p).powi(2)).collect();
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&a, &b| masses[b].total_cmp(&masses[a]));
    Ok(Split {
        eps,
        blocks,
        projections,
        order,
        masses,
    })
}

/// `η = Σ_{a_c ≥ ε} ξ_c` over character blocks `c`, where `ξ_c` is the
/// projection of `ξ` onto the joint eigenspace of character `c` and
/// `a_c = ‖ξ_c‖²`.
///
/// Components of a different character than the heaviest one have mass at
/// most `ε`, the part of `ξ` outside all common eigenspaces has mass at most
/// `3600 (n−r)¹¹ ε` (`r` = number of independent common eigenvectors), and
/// for `0 < ε < 1/(3600 n¹¹)` the result satisfies `‖ξ − η‖² < 3600 n¹¹ ε`.
pub fn truncate_eigenvector(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
) -> Result<EigenvectorCertificate, DecomposeError> {
    let s = split_by_character(g, xi)?;
    let n = g.dim();
    let eps = s.eps;
    // blocks of a foreign character carry at most the true ε, which the
    // measured one undershoots by up to the rounding error
    let cutoff = eps + defect_rounding(n);
    let kept: Vec<usize> = s
        .order
        .iter()
        .copied()
        .filter(|&c| s.masses[c] >= cutoff)
        .collect();
    if kept.is_empty() {
        return Err(DecomposeError::AllComponentsBelowEps {
            eps,
            max_mass: s.masses[s.order[0]],
        });
    }
    let mut eta = vec![C64::new(0.0, 0.0); n];
    for &c in &kept {
        for (e, p) in eta.iter_mut().zip(&s.projections[c]) {
            *e += p;
        }
    }

    let r: usize = s.blocks.iter().map(|b| b.basis.len()).sum();
    let covered: f64 = s.masses.iter().sum();
    let residual_mass = (1.0 - covered).max(0.0);
    let lead = &s.blocks[kept[0]].character;
    let mixed = kept
        .iter()
        .filter(|&&c| !same_character(&s.blocks[c].character, lead))
        .count();
    let dropped_mass: f64 = s
        .order
        .iter()
        .filter(|c| !kept.contains(c))
        .map(|&c| s.masses[c])
        .sum();
    let hypothesis = eps > 0.0 && eps < reducibility_threshold(n);
    let checks = vec![
        BoundCheck::new("single_character", mixed as f64, 0.0, false, true),
        BoundCheck::new(
            "residual_block_mass",
            residual_mass,
            truncation_bound(n - r, eps) + MASS_SLACK,
            false,
            true,
        ),
        BoundCheck::new(
            "dropped_character_mass",
            dropped_mass,
            (s.blocks.len() - 1) as f64 * eps + MASS_SLACK,
            false,
            true,
        ),
        BoundCheck::new(
            "distance_sq",
            crate::numerics::distance(xi.entries(), &eta).powi(2),
            truncation_bound(n, eps),
            true,
            hypothesis,
        ),
    ];
    Ok(certify(
        Method::Truncate,
        g,
        xi,
        eta,
        eps,
        hypothesis,
        checks,
    )?)
}

/// Projection of `ξ` onto the heaviest character block, without thresholding.
pub fn oracle_eigenvector(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
) -> Result<EigenvectorCertificate, DecomposeError> {
    let s = split_by_character(g, xi)?;
    let best = s.order[0];
    if s.masses[best] <= MASS_SLACK {
        return Err(DecomposeError::AllComponentsZero);
    }
    let eta = s.projections[best].clone();
    Ok(certify(
        Method::Oracle,
        g,
        xi,
        eta,
        s.eps,
        true,
        Vec::new(),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_group, DEFAULT_CAP};
    use crate::numerics::{ComplexMatrix, Tolerance, UnitaryMatrix};

    fn close(gens: Vec<UnitaryMatrix>) -> FiniteUnitaryGroup {
        close_group(&gens, Tolerance::default(), DEFAULT_CAP).unwrap()
    }

    fn z_group() -> FiniteUnitaryGroup {
        close(vec![UnitaryMatrix::from_trusted(ComplexMatrix::diagonal(
            &[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)],
        ))])
    }

    #[test]
    fn hand_derived_two_axis_case() {
        let delta: f64 = 1e-3;
        let xi = UnitVector::from_real(&[(1.0 - delta * delta).sqrt(), delta]).unwrap();
        let cert = truncate_eigenvector(&z_group(), &xi).unwrap();
        // ε = 1 − |1 − 2δ²| = 2δ²
        assert!((cert.eps - 2.0 * delta * delta).abs() < 1e-15);
        assert!(cert.eta[1].norm() == 0.0);
        assert!((cert.eta[0].re - (1.0 - delta * delta).sqrt()).abs() < 1e-15);
        assert!((cert.distance_sq - delta * delta).abs() < 1e-12);
        assert!((cert.distance_sq - cert.eps / 2.0).abs() < 1e-12);
        assert!(
            cert.bound_holds,
            "{:?}",
            cert.failed_guaranteed_checks().collect::<Vec<_>>()
        );
        assert!(!cert.hypothesis_holds);
    }

    #[test]
    fn exact_eigenvector_is_returned_unchanged() {
        let xi = UnitVector::basis(2, 1);
        let cert = truncate_eigenvector(&z_group(), &xi).unwrap();
        assert_eq!(cert.distance_sq, 0.0);
        assert!(
            cert.bound_holds,
            "{:?}",
            cert.failed_guaranteed_checks().collect::<Vec<_>>()
        );
    }

    #[test]
    fn no_common_eigenvector_for_pauli() {
        let x = UnitaryMatrix::from_trusted(ComplexMatrix::permutation(&[1, 0]));
        let z = UnitaryMatrix::from_trusted(ComplexMatrix::diagonal(&[
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
        ]));
        let xi = UnitVector::from_real(&[0.8, 0.6]).unwrap();
        match truncate_eigenvector(&close(vec![x, z]), &xi) {
            Err(e @ DecomposeError::NoCommonEigenvector { eps, threshold }) => {
                assert!(eps >= threshold);
                assert!((threshold - 1.0 / (3600.0 * 2048.0)).abs() < 1e-20);
                assert!(!e.is_falsification());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
