use std::f64::consts::PI;

use super::blocks::{select_component, BlockDecomposition};
use super::{check_dim, DecomposeError};
use crate::certificate::{
    certify, defect_rounding, is_negligible, reducibility_threshold, BoundCheck,
    EigenvectorCertificate, Method,
};
use crate::fixedpoint::{defect, max_eigen_residual, weighted_average};
use crate::group::{is_transitive, monomial_structure, FiniteUnitaryGroup, MonomialStructure};
use crate::numerics::{distance, norm, ComplexMatrix, UnitVector, UnitaryMatrix, C64};
use crate::phase::{approx_scalar, nearest_root};

/// Slack on inequalities that hold exactly in real arithmetic.
const ROUNDING_SLACK: f64 = 1e-12;

/// Floor for the defect handed to the phase rounding, which needs `ε > 0`.
const MIN_PHASE_EPS: f64 = 1e-14;

/// A monomial group conjugated so that `ξ` becomes real, nonnegative and
/// sorted descending.
#[derive(Debug, Clone)]
pub struct Flattened {
    /// `W 𝒢 W*`, same element indexing as the input.
    pub group: FiniteUnitaryGroup,
    /// `W ξ`.
    pub xi: UnitVector,
    /// Entries of `W ξ`, descending.
    pub magnitudes: Vec<f64>,
    /// `W = P D`, `D` diagonal unitary, `P` a permutation.
    pub conjugator: UnitaryMatrix,
}

pub fn monomial_flatten(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
) -> Result<Flattened, DecomposeError> {
    check_dim(g.dim(), xi)?;
    let x = xi.entries();
    let n = x.len();
    let phases: Vec<C64> = x
        .iter()
        .map(|z| {
            let m = z.norm();
            if m > 0.0 {
                z.conj() / m
            } else {
                C64::new(1.0, 0.0)
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[b].norm().total_cmp(&x[a].norm()));
    let mut perm = vec![0; n];
    for (k, &src) in order.iter().enumerate() {
        perm[src] = k;
    }
    let w = &ComplexMatrix::permutation(&perm) * &ComplexMatrix::diagonal(&phases);
    let conjugator = UnitaryMatrix::from_trusted(w);
    let magnitudes: Vec<f64> = order.iter().map(|&i| x[i].norm()).collect();
    let flat_xi = UnitVector::new(magnitudes.iter().map(|&m| C64::new(m, 0.0)).collect())?;
    Ok(Flattened {
        group: g.conjugate_by(&conjugator),
        xi: flat_xi,
        magnitudes,
        conjugator,
    })
}

/// `ξ₁ − ξ_n` for descending nonnegative `ξ`, checked against `(n−1)√ε`.
pub fn monomial_spread_check(xi_sorted: &[f64], eps: f64) -> Result<f64, DecomposeError> {
    if xi_sorted.is_empty()
        || xi_sorted.iter().any(|&v| !(v >= 0.0))
        || xi_sorted.windows(2).any(|w| w[0] < w[1])
    {
        return Err(DecomposeError::NotSorted);
    }
    let gap = xi_sorted[0] - xi_sorted[xi_sorted.len() - 1];
    let bound = (xi_sorted.len() - 1) as f64 * eps.max(0.0).sqrt();
    if gap > bound + 1e-9 {
        return Err(DecomposeError::SpreadViolation { gap, bound });
    }
    Ok(gap)
}

/// Common eigenvector of a monomial group near a weak `ε`-approximate fixed
/// point `ξ`.
///
/// Transitive groups: flatten `ξ`, replace it by `η = (1, …, 1)/√n`, round
/// each element's weights (rescaled to product 1) to a common `n`-th root of
/// unity to get a character `χ`, and average `conj(χ(G)) G η` over the
/// group. For `ε < 1/(3600 n¹¹)` the result `ζ` satisfies `‖ξ − ζ‖ < 1/n`.
/// Intransitive groups: split along orbits, pick a component by the
/// pigeonhole rule, recurse and embed.
pub fn monomial_eigenvector(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
) -> Result<EigenvectorCertificate, DecomposeError> {
    check_dim(g.dim(), xi)?;
    let ms = monomial_structure(g).map_err(DecomposeError::NotMonomial)?;
    let eps = defect(g, xi)?.weak_defect;
    if g.dim() == 1 {
        return Ok(certify(
            Method::Monomial,
            g,
            xi,
            xi.entries().to_vec(),
            eps,
            true,
            Vec::new(),
        )?);
    }
    if is_transitive(&ms) {
        transitive_eigenvector(g, xi, eps)
    } else {
        intransitive_eigenvector(g, &ms, xi, eps)
    }
}

fn intransitive_eigenvector(
    g: &FiniteUnitaryGroup,
    ms: &MonomialStructure,
    xi: &UnitVector,
    eps: f64,
) -> Result<EigenvectorCertificate, DecomposeError> {
    let n = g.dim();
    let subspaces: Vec<Vec<Vec<C64>>> = ms
        .orbits()
        .into_iter()
        .map(|orbit| {
            orbit
                .into_iter()
                .map(|j| UnitVector::basis(n, j).into_entries())
                .collect()
        })
        .collect();
    let bd = BlockDecomposition::from_subspaces(g, subspaces, 0)?;
    let sel = select_component(&bd, xi, eps)?;
    let block = &bd.blocks[sel.index];
    let sub = monomial_eigenvector(&block.group, &sel.normalized_component)?;
    let zeta = bd.embed(sel.index, sub.eta_unit.entries());

    let share = block.size() as f64 / n as f64;
    let mut checks = vec![
        BoundCheck::new(
            "component_share",
            share,
            sel.component_norm_sq + ROUNDING_SLACK,
            false,
            true,
        ),
        BoundCheck::new(
            "component_eps",
            sel.measured_eps,
            sel.scaled_eps + ROUNDING_SLACK,
            false,
            true,
        ),
    ];
    checks.extend(sub.checks.into_iter().map(|mut c| {
        c.name = format!("component.{}", c.name);
        c
    }));
    let hypothesis = eps < reducibility_threshold(n);
    checks.push(BoundCheck::new(
        "distance",
        distance(xi.entries(), &zeta),
        1.0 / n as f64,
        true,
        false,
    ));
    Ok(certify(
        Method::Monomial,
        g,
        xi,
        zeta,
        eps,
        hypothesis,
        checks,
    )?)
}

/// Rounds a weight tuple, rescaled to product 1, to a root of unity:
/// `χ = r·α` with `r` the principal `n`-th root of the weight product.
struct Rounded {
    chi: C64,
    l1: f64,
    l2: f64,
    certified: bool,
}

fn round_weights(
    weights: &[C64],
    eps_tilde: f64,
    on_path: bool,
) -> Result<Rounded, DecomposeError> {
    let n = weights.len();
    let product: C64 = weights.iter().product();
    let r = C64::from_polar(1.0, product.arg() / n as f64);
    let tuple: Vec<C64> = weights.iter().map(|w| w / r).collect();
    if on_path {
        if let Ok(a) = approx_scalar(&tuple, eps_tilde) {
            return Ok(Rounded {
                chi: r * a.alpha.value(),
                l1: a.l1_distance,
                l2: a.l2_distance,
                certified: true,
            });
        }
    }
    let sum: C64 = tuple.iter().sum();
    if sum.norm() <= ROUNDING_SLACK {
        return Err(DecomposeError::HomomorphismFailure(
            "weight sum vanishes; no nearest root of unity".into(),
        ));
    }
    let alpha = nearest_root(sum / sum.norm(), n)?.alpha.value();
    Ok(Rounded {
        chi: r * alpha,
        l1: tuple.iter().map(|z| (z - alpha).norm()).sum(),
        l2: tuple
            .iter()
            .map(|z| (z - alpha).norm_sqr())
            .sum::<f64>()
            .sqrt(),
        certified: false,
    })
}

fn transitive_eigenvector(
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
    eps: f64,
) -> Result<EigenvectorCertificate, DecomposeError> {
    let n = g.dim();
    let nf = n as f64;
    let hypothesis = eps < reducibility_threshold(n);
    let flat = monomial_flatten(g, xi)?;
    monomial_spread_check(&flat.magnitudes, eps + defect_rounding(n))?;

    let eps1 = nf * (nf * (eps + defect_rounding(n))).sqrt();
    if !(eps1 < 1.0 / 3.0) {
        return Err(DecomposeError::HypothesisViolated(format!(
            "eps_1 = n sqrt(n eps) = {eps1:e} is not below 1/3"
        )));
    }
    let eps2 = 3.0 * eps1;
    let eta = UnitVector::uniform(n);
    let mut checks = vec![
        BoundCheck::new(
            "eta_distance",
            distance(eta.entries(), flat.xi.entries()),
            eps1 + ROUNDING_SLACK,
            false,
            true,
        ),
        BoundCheck::new(
            "eta_weak_defect",
            defect(&flat.group, &eta)?.weak_defect,
            eps2 + ROUNDING_SLACK,
            false,
            true,
        ),
    ];

    let eps_tilde = eps2.max(MIN_PHASE_EPS);
    let on_path = eps_tilde < 2.0 / nf.powi(3);
    let ms = monomial_structure(&flat.group).map_err(DecomposeError::NotMonomial)?;
    let rounded = ms
        .elements
        .iter()
        .map(|e| round_weights(&e.weights, eps_tilde, on_path))
        .collect::<Result<Vec<_>, _>>()?;
    let chi: Vec<C64> = rounded.iter().map(|r| r.chi).collect();
    if on_path {
        let uncertified = rounded.iter().filter(|r| !r.certified).count();
        let l1 = rounded.iter().map(|r| r.l1).fold(0.0, f64::max);
        let l2 = rounded.iter().map(|r| r.l2).fold(0.0, f64::max);
        checks.push(BoundCheck::new(
            "alpha_hypotheses",
            uncertified as f64,
            0.0,
            false,
            true,
        ));
        checks.push(BoundCheck::new(
            "alpha_l1",
            l1,
            PI * nf * (2.0 * nf * eps_tilde).sqrt(),
            true,
            true,
        ));
        checks.push(BoundCheck::new(
            "alpha_l2",
            l2,
            PI * nf * (2.0 * eps_tilde).sqrt(),
            true,
            true,
        ));
    }

    let table = g.table();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let gap = (chi[table.mul(a, b)] - chi[a] * chi[b]).norm();
            if gap > crate::fixedpoint::HOMOMORPHISM_TOL {
                return Err(DecomposeError::HomomorphismFailure(format!(
                    "|chi(GH) - chi(G) chi(H)| = {gap:e} for elements {a}, {b}"
                )));
            }
        }
    }

    let eps_prime = PI * nf * (2.0 * eps_tilde).sqrt();
    let chi_distance = max_eigen_residual(&flat.group, eta.entries(), Some(&chi));
    checks.push(BoundCheck::new(
        "chi_distance",
        chi_distance,
        eps_prime,
        true,
        on_path,
    ));

    let conj_chi: Vec<C64> = chi.iter().map(|c| c.conj()).collect();
    let zeta_flat = weighted_average(&flat.group, eta.entries(), Some(&conj_chi));
    if is_negligible(&zeta_flat) {
        return Err(DecomposeError::ZeroAverage {
            norm: norm(&zeta_flat),
        });
    }
    checks.push(BoundCheck::new(
        "zeta_eta_distance",
        distance(&zeta_flat, eta.entries()),
        eps_prime + ROUNDING_SLACK,
        false,
        on_path,
    ));
    let zeta = flat.conjugator.adjoint().apply(&zeta_flat);
    checks.push(BoundCheck::new(
        "distance",
        distance(xi.entries(), &zeta),
        1.0 / nf,
        true,
        hypothesis,
    ));
    Ok(certify(
        Method::Monomial,
        g,
        xi,
        zeta,
        eps,
        hypothesis,
        checks,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::eigenspace_intersection_oracle;
    use crate::group::{close_group, DEFAULT_CAP};
    use crate::numerics::{inner, Tolerance};

    fn close(gens: Vec<UnitaryMatrix>) -> FiniteUnitaryGroup {
        close_group(&gens, Tolerance::default(), DEFAULT_CAP).unwrap()
    }

    fn perm(p: &[usize]) -> UnitaryMatrix {
        UnitaryMatrix::from_trusted(ComplexMatrix::permutation(p))
    }

    #[test]
    fn flatten_examples() {
        let g = close(vec![perm(&[1, 0])]);
        let sorted = UnitVector::from_real(&[0.8, 0.6]).unwrap();
        let f = monomial_flatten(&g, &sorted).unwrap();
        assert!(
            f.conjugator
                .matrix()
                .frobenius_distance(&ComplexMatrix::identity(2))
                < 1e-15
        );

        let s = 0.5f64.sqrt();
        let xi = UnitVector::new(vec![C64::new(0.0, s), C64::new(s, 0.0)]).unwrap();
        let f = monomial_flatten(&g, &xi).unwrap();
        assert!(distance(f.xi.entries(), &[C64::new(s, 0.0), C64::new(s, 0.0)]) < 1e-15);
        assert!(distance(&f.conjugator.apply(xi.entries()), f.xi.entries()) < 1e-15);

        let f = monomial_flatten(&g, &UnitVector::basis(2, 1)).unwrap();
        assert_eq!(f.magnitudes, vec![1.0, 0.0]);
        // round trip W* (W G W*) W = G
        for (a, b) in g.elements().iter().zip(f.group.elements()) {
            let back = b.conjugate_by(&f.conjugator.adjoint());
            assert!(back.matrix().frobenius_distance(a.matrix()) < 1e-14);
        }
    }

    #[test]
    fn spread_examples() {
        assert_eq!(monomial_spread_check(&[0.5; 4], 0.0).unwrap(), 0.0);
        // swap on (√0.9, √0.1): |<Gξ,ξ>| = 2√0.09 = 0.6, ε = 0.4, equality
        let x = [0.9f64.sqrt(), 0.1f64.sqrt()];
        let gap = monomial_spread_check(&x, 0.4).unwrap();
        assert!((gap - (0.9f64.sqrt() - 0.1f64.sqrt())).abs() < 1e-15);
        assert!(matches!(
            monomial_spread_check(&x, 0.3),
            Err(DecomposeError::SpreadViolation { .. })
        ));
        assert!(matches!(
            monomial_spread_check(&[0.1, 0.9], 1.0),
            Err(DecomposeError::NotSorted)
        ));
    }

    #[test]
    fn s3_uniform_vector_is_returned() {
        let g = close(vec![perm(&[1, 2, 0]), perm(&[1, 0, 2])]);
        let xi = UnitVector::uniform(3);
        let cert = monomial_eigenvector(&g, &xi).unwrap();
        assert!(cert.distance_sq < 1e-28);
        assert!(cert
            .characters
            .iter()
            .all(|c| (c - C64::new(1.0, 0.0)).norm() < 1e-12));
        assert!(
            cert.bound_holds,
            "{:?}",
            cert.failed_guaranteed_checks().collect::<Vec<_>>()
        );
    }

    #[test]
    fn cyclic_shift_recovers_uniform_vector() {
        let g = close(vec![perm(&[1, 2, 3, 0])]);
        let raw: Vec<f64> = vec![1.0 + 1e-7, 1.0 - 1e-7, 1.0, 1.0];
        let xi = UnitVector::from_real(&raw).unwrap();
        let cert = monomial_eigenvector(&g, &xi).unwrap();
        assert!(cert.eps < 1e-13);
        assert!(cert.hypothesis_holds || cert.eps >= reducibility_threshold(4));
        assert!(distance(&cert.eta, &[C64::new(0.5, 0.0); 4]) < 1e-12);
        assert!(cert.distance_sq.sqrt() < 0.25);
        assert!(
            cert.bound_holds,
            "{:?}",
            cert.failed_guaranteed_checks().collect::<Vec<_>>()
        );
        let oracle = eigenspace_intersection_oracle(&g);
        assert!(oracle.iter().any(
            |e| (inner(e.vector.entries(), cert.eta_unit.entries()).norm() - 1.0).abs() < 1e-8
        ));
    }

    #[test]
    fn diagonal_group_selects_first_axis() {
        let z = UnitaryMatrix::from_trusted(ComplexMatrix::diagonal(&[
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
        ]));
        let g = close(vec![z]);
        let xi = UnitVector::from_real(&[0.9f64.sqrt(), 0.1f64.sqrt()]).unwrap();
        let cert = monomial_eigenvector(&g, &xi).unwrap();
        assert!(distance(cert.eta_unit.entries(), UnitVector::basis(2, 0).entries()) < 1e-15);
        assert!(cert
            .characters
            .iter()
            .all(|c| (c - C64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn twisted_character_is_found() {
        // negated 3-cycle: eigenvector (1,1,1)/√3 with χ = -1
        let m = ComplexMatrix::permutation(&[2, 0, 1]).scale(C64::new(-1.0, 0.0));
        let g = close(vec![UnitaryMatrix::from_trusted(m)]);
        let xi = UnitVector::from_real(&[1.0, 1.0 + 1e-9, 1.0]).unwrap();
        let cert = monomial_eigenvector(&g, &xi).unwrap();
        assert!((cert.characters[0] - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(cert.max_residual < 1e-12);
        assert!(
            cert.bound_holds,
            "{:?}",
            cert.failed_guaranteed_checks().collect::<Vec<_>>()
        );
    }
}
