use std::collections::BTreeSet;

use super::{scalar_value, FiniteUnitaryGroup, GroupError};
use crate::numerics::{UnitaryMatrix, C64};

/// `[A, B] = A B A* B*`.
pub fn commutator(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<UnitaryMatrix, GroupError> {
    if a.dim() != b.dim() {
        return Err(GroupError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let ab = a.matrix() * b.matrix();
    let aba = &ab * &a.matrix().adjoint();
    Ok(UnitaryMatrix::from_trusted(&aba * &b.matrix().adjoint()))
}

/// `G = scalar · [A, B]` with `A`, `B` group elements (by index).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorWitness {
    pub a: usize,
    pub b: usize,
    pub scalar: C64,
}

/// Finds the first pair `(A, B)` in canonical order with `G [A, B]*` scalar.
///
/// Since `G [A, B]*` is itself a group element, the scalar is automatically a
/// scalar element of the group.
pub fn find_scalar_commutator(
    g: &FiniteUnitaryGroup,
    element: usize,
) -> Result<CommutatorWitness, GroupError> {
    if element >= g.order() {
        return Err(GroupError::BadElementIndex(element));
    }
    let table = g.table();
    let scalars: Vec<Option<C64>> = {
        let mut s = vec![None; g.order()];
        for i in g.scalar_elements() {
            s[i] = scalar_value(g.element(i).matrix(), g.tol().eq_tol);
        }
        s
    };
    for a in 0..g.order() {
        for b in 0..g.order() {
            let c = table.commutator(a, b);
            if let Some(scalar) = scalars[table.mul(element, table.inv(c))] {
                return Ok(CommutatorWitness { a, b, scalar });
            }
        }
    }
    Err(GroupError::NoWitness(element))
}

/// The set of single commutators `[A, B]`, by index.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedSet {
    pub commutators: Vec<usize>,
    /// Every element is itself a commutator.
    pub covers_group: bool,
}

pub fn derived_elements(g: &FiniteUnitaryGroup) -> DerivedSet {
    let table = g.table();
    let n = g.order();
    let mut set = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            set.insert(table.commutator(a, b));
        }
    }
    DerivedSet {
        covers_group: set.len() == n,
        commutators: set.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::real_unitary;
    use super::super::{close_group, DEFAULT_CAP};
    use super::*;
    use crate::numerics::{ComplexMatrix, Tolerance};

    fn pauli_group() -> FiniteUnitaryGroup {
        let x = real_unitary(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let z = real_unitary(&[&[1.0, 0.0], &[0.0, -1.0]]);
        close_group(&[x, z], Tolerance::default(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn identity_has_trivial_witness() {
        let g = close_group(
            &[UnitaryMatrix::identity(2)],
            Tolerance::default(),
            DEFAULT_CAP,
        )
        .unwrap();
        let w = find_scalar_commutator(&g, 0).unwrap();
        assert_eq!((w.a, w.b), (0, 0));
        assert!((w.scalar - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn minus_identity_is_a_pauli_commutator() {
        let g = pauli_group();
        let x = g
            .find(&real_unitary(&[&[0.0, 1.0], &[1.0, 0.0]]).into_matrix())
            .unwrap();
        let z = g
            .find(&real_unitary(&[&[1.0, 0.0], &[0.0, -1.0]]).into_matrix())
            .unwrap();
        let xz = commutator(g.element(x), g.element(z)).unwrap();
        let neg = ComplexMatrix::identity(2).scale(C64::new(-1.0, 0.0));
        assert!(xz.matrix().frobenius_distance(&neg) < 1e-14);

        let target = g.find(&neg).unwrap();
        let w = find_scalar_commutator(&g, target).unwrap();
        let c = commutator(g.element(w.a), g.element(w.b)).unwrap();
        assert!(c.matrix().scale(w.scalar).frobenius_distance(&neg) < 1e-12);
    }

    #[test]
    fn only_scalar_pauli_elements_have_witnesses() {
        // the commutator subgroup of the Pauli group is {I, -I}
        let g = pauli_group();
        assert_eq!(derived_elements(&g).commutators.len(), 2);
        let scalars = g.scalar_elements();
        for i in 0..g.order() {
            match find_scalar_commutator(&g, i) {
                Ok(w) => {
                    assert!(scalars.contains(&i));
                    let c = commutator(g.element(w.a), g.element(w.b)).unwrap();
                    assert!(
                        c.matrix()
                            .scale(w.scalar)
                            .frobenius_distance(g.element(i).matrix())
                            < 1e-12
                    );
                }
                Err(e) => {
                    assert!(!scalars.contains(&i));
                    assert_eq!(e, GroupError::NoWitness(i));
                }
            }
        }
    }

    #[test]
    fn abelian_group_has_trivial_commutators() {
        let x = real_unitary(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let g = close_group(&[x], Tolerance::default(), DEFAULT_CAP).unwrap();
        let d = derived_elements(&g);
        assert_eq!(d.commutators, vec![g.identity_index()]);
        assert!(!d.covers_group);
        // X is not a scalar times the identity
        let xi = g.generator_indices()[0];
        assert!(matches!(
            find_scalar_commutator(&g, xi),
            Err(GroupError::NoWitness(_))
        ));
    }
}
