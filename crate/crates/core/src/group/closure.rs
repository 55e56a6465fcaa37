use rayon::prelude::*;

use super::{ElementIndex, FiniteUnitaryGroup, GroupError};
use crate::numerics::{polar_project, Tolerance, UnitaryMatrix};

/// Default bound on the number of elements produced by [`close_group`].
pub const DEFAULT_CAP: usize = 10_000;

/// Closes a generator set under multiplication.
///
/// Breadth-first search from `{I} ∪ generators`: each frontier element is
/// multiplied on the right by every generator, polar-projected and looked up
/// within `eq_tol`. Products of one frontier are computed in parallel and
/// merged in a fixed order, so the result does not depend on the thread
/// count. Elements are then sorted canonically. Generators are stored as
/// given (after unitarity certification by the caller), which makes
/// re-closing `elements[generators]` reproduce the same group bit for bit.
pub fn close_group(
    generators: &[UnitaryMatrix],
    tol: Tolerance,
    cap: usize,
) -> Result<FiniteUnitaryGroup, GroupError> {
    let dim = generators.first().ok_or(GroupError::NoGenerators)?.dim();
    if let Some(bad) = generators.iter().find(|g| g.dim() != dim) {
        return Err(GroupError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    tol.validate()?;

    let mut elements = vec![UnitaryMatrix::identity(dim)];
    let mut index = ElementIndex::new(dim, tol.eq_tol);
    index.insert(elements[0].matrix(), 0);

    let mut generator_indices = Vec::with_capacity(generators.len());
    for g in generators {
        let i = match index.find(g.matrix(), &elements, tol.eq_tol) {
            Some(i) => i,
            None => {
                index.insert(g.matrix(), elements.len());
                elements.push(g.clone());
                elements.len() - 1
            }
        };
        generator_indices.push(i);
    }
    if elements.len() > cap {
        return Err(GroupError::CapExceeded { cap });
    }
    // multiply by the stored representatives so re-closure sees identical inputs
    let gens: Vec<UnitaryMatrix> = generator_indices
        .iter()
        .map(|&i| elements[i].clone())
        .collect();

    let mut frontier: Vec<usize> = (0..elements.len()).collect();
    while !frontier.is_empty() {
        let products: Vec<UnitaryMatrix> = frontier
            .par_iter()
            .flat_map_iter(|&i| {
                let e = &elements[i];
                gens.iter().map(move |g| e.matrix() * g.matrix())
            })
            .map(|m| polar_project(&m))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for p in products {
            if index.find(p.matrix(), &elements, tol.eq_tol).is_none() {
                index.insert(p.matrix(), elements.len());
                next.push(elements.len());
                elements.push(p);
                if elements.len() > cap {
                    return Err(GroupError::CapExceeded { cap });
                }
            }
        }
        frontier = next;
    }

    let (group, _) = FiniteUnitaryGroup::sorted(elements, generator_indices, tol);
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::super::tests::real_unitary;
    use super::*;
    use crate::numerics::{ComplexMatrix, C64};

    #[test]
    fn identity_closes_to_trivial_group() {
        let g = close_group(
            &[UnitaryMatrix::identity(3)],
            Tolerance::default(),
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.generator_indices(), &[0]);
    }

    #[test]
    fn pauli_pair_closes_to_dihedral_of_order_eight() {
        let x = real_unitary(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let z = real_unitary(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let g = close_group(&[x, z], Tolerance::default(), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.identity_index(), 0);
        let neg = ComplexMatrix::identity(2).scale(C64::new(-1.0, 0.0));
        assert!(g.find(&neg).is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let c = (std::f64::consts::TAU / 12.0).cos();
        let s = (std::f64::consts::TAU / 12.0).sin();
        let r = real_unitary(&[&[c, -s], &[s, c]]);
        assert!(matches!(
            close_group(std::slice::from_ref(&r), Tolerance::default(), 5),
            Err(GroupError::CapExceeded { cap: 5 })
        ));
        assert_eq!(
            close_group(&[r], Tolerance::default(), 12).unwrap().order(),
            12
        );
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let r = close_group(
            &[UnitaryMatrix::identity(2), UnitaryMatrix::identity(3)],
            Tolerance::default(),
            DEFAULT_CAP,
        );
        assert!(matches!(
            r,
            Err(GroupError::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
        assert!(matches!(
            close_group(&[], Tolerance::default(), DEFAULT_CAP),
            Err(GroupError::NoGenerators)
        ));
    }

    #[test]
    fn reclosing_is_bitwise_stable() {
        let x = real_unitary(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]]);
        let t = real_unitary(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]);
        let g = close_group(&[x, t], Tolerance::default(), DEFAULT_CAP).unwrap();
        let gens: Vec<UnitaryMatrix> = g
            .generator_indices()
            .iter()
            .map(|&i| g.element(i).clone())
            .collect();
        let h = close_group(&gens, Tolerance::default(), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.generator_indices(), h.generator_indices());
        for (a, b) in g.elements().iter().zip(h.elements()) {
            assert_eq!(a.matrix(), b.matrix());
        }
    }
}
