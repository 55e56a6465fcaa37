//! Finite groups of unitary matrices.
//!
//! A [`FiniteUnitaryGroup`] is an explicit, deduplicated list of elements in
//! canonical order together with the indices of its generators. The uniform
//! measure on this list plays the role of Haar measure everywhere else in
//! the crate.

mod closure;
mod commutator;
mod monomial;

pub use closure::{close_group, DEFAULT_CAP};
pub use commutator::{
    commutator, derived_elements, find_scalar_commutator, CommutatorWitness, DerivedSet,
};
pub use monomial::{
    is_transitive, monomial_structure, weight_product_hom, MonomialElement, MonomialStructure,
    NotMonomial,
};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::numerics::{polar_project, ComplexMatrix, NumericsError, Tolerance, UnitaryMatrix, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("no generators given")]
    NoGenerators,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("element set is not closed: product of elements {0} and {1} is missing")]
    NotClosed(usize, usize),
    #[error("element set has no identity")]
    MissingIdentity,
    #[error("elements {0} and {1} coincide within eq_tol")]
    Duplicate(usize, usize),
    #[error("generator index {0} out of range")]
    BadGeneratorIndex(usize),
    #[error("element index {0} out of range")]
    BadElementIndex(usize),
    #[error("element {0} is not a scalar multiple of a commutator")]
    NoWitness(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Multiplication table of a closed group, by element index.
#[derive(Debug)]
pub struct CayleyTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `A B A⁻¹ B⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        self.mul(self.mul(ab, self.inv(a)), self.inv(b))
    }

    /// Order of the cyclic subgroup generated by `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }
}

/// Hash-bucket lookup of matrices up to Frobenius distance `eq_tol`.
///
/// Each matrix is projected onto a fixed unit-norm direction; the projection
/// is 1-Lipschitz in Frobenius distance, so matches can only live in the
/// bucket of the query or its two neighbours. Candidates are re-checked
/// with the exact Frobenius distance.
#[derive(Debug, Clone)]
struct ElementIndex {
    direction: Vec<C64>,
    width: f64,
    buckets: HashMap<i64, Vec<usize>>,
}

impl ElementIndex {
    fn new(dim: usize, eq_tol: f64) -> Self {
        let golden = 0.618_033_988_749_894_9;
        let silver = 0.414_213_562_373_095_1;
        let raw: Vec<C64> = (0..dim * dim)
            .map(|k| {
                let t = (k + 1) as f64;
                let phase = (t * golden).fract() * std::f64::consts::TAU;
                C64::from_polar(1.0 + (t * silver).fract(), phase)
            })
            .collect();
        let len = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Self {
            direction: raw.into_iter().map(|z| z / len).collect(),
            width: eq_tol,
            buckets: HashMap::new(),
        }
    }

    fn bucket(&self, m: &ComplexMatrix) -> i64 {
        let p: f64 = m
            .as_slice()
            .iter()
            .zip(&self.direction)
            .map(|(a, w)| (a * w.conj()).re)
            .sum();
        (p / self.width).floor() as i64
    }

    fn find(&self, m: &ComplexMatrix, elements: &[UnitaryMatrix], eq_tol: f64) -> Option<usize> {
        let b = self.bucket(m);
        (b - 1..=b + 1)
            .filter_map(|k| self.buckets.get(&k))
            .flatten()
            .copied()
            .filter(|&i| elements[i].matrix().frobenius_distance(m) <= eq_tol)
            .min()
    }

    fn insert(&mut self, m: &ComplexMatrix, index: usize) {
        let b = self.bucket(m);
        self.buckets.entry(b).or_default().push(index);
    }
}

/// Explicit finite group of unitary matrices.
#[derive(Debug, Clone)]
pub struct FiniteUnitaryGroup {
    dim: usize,
    elements: Vec<UnitaryMatrix>,
    generators: Vec<usize>,
    tol: Tolerance,
    index: ElementIndex,
    table: OnceLock<Arc<CayleyTable>>,
}

/// Quantization step of the canonical sort key.
const SORT_QUANTUM: f64 = 1e-6;

fn quantize(x: f64) -> i64 {
    (x / SORT_QUANTUM).round() as i64
}

/// Canonical element order: real part of the trace descending (so the
/// identity comes first), then entries lexicographically ascending. Keys are
/// quantized so rounding noise from different traversal orders cannot
/// reorder elements; exact values only break ties between keys.
fn canonical_cmp(a: &ComplexMatrix, b: &ComplexMatrix) -> Ordering {
    let key = |m: &ComplexMatrix| -> Vec<i64> {
        std::iter::once(-quantize(m.trace().re))
            .chain(
                m.as_slice()
                    .iter()
                    .flat_map(|z| [quantize(z.re), quantize(z.im)]),
            )
            .collect()
    };
    key(a).cmp(&key(b)).then_with(|| {
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

impl FiniteUnitaryGroup {
    /// Builds a group from an explicit element list, checking every group
    /// invariant (identity, no duplicates, closure under product and adjoint).
    /// The element order is kept as given.
    pub fn from_elements(
        elements: Vec<UnitaryMatrix>,
        generators: Vec<usize>,
        tol: Tolerance,
    ) -> Result<Self, GroupError> {
        let dim = elements.first().ok_or(GroupError::MissingIdentity)?.dim();
        let mut index = ElementIndex::new(dim, tol.eq_tol);
        for (i, e) in elements.iter().enumerate() {
            if e.dim() != dim {
                return Err(GroupError::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            if let Some(j) = index.find(e.matrix(), &elements, tol.eq_tol) {
                return Err(GroupError::Duplicate(j, i));
            }
            index.insert(e.matrix(), i);
        }
        if let Some(&bad) = generators.iter().find(|&&g| g >= elements.len()) {
            return Err(GroupError::BadGeneratorIndex(bad));
        }
        let group = Self {
            dim,
            elements,
            generators,
            tol,
            index,
            table: OnceLock::new(),
        };
        let table = group.build_table()?;
        let _ = group.table.set(Arc::new(table));
        Ok(group)
    }

    /// Assembles a group whose closure is guaranteed by construction.
    pub(crate) fn from_closed_parts(
        elements: Vec<UnitaryMatrix>,
        generators: Vec<usize>,
        tol: Tolerance,
    ) -> Self {
        let dim = elements[0].dim();
        let mut index = ElementIndex::new(dim, tol.eq_tol);
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.matrix(), i);
        }
        Self {
            dim,
            elements,
            generators,
            tol,
            index,
            table: OnceLock::new(),
        }
    }

    /// Builds the image of a group homomorphism given the image of every
    /// element (in the source group's order). Images are polar-projected,
    /// deduplicated and sorted canonically. Returns the image group and the
    /// map from source index to image index.
    pub fn from_homomorphic_image(
        images: &[ComplexMatrix],
        generators: &[usize],
        tol: Tolerance,
    ) -> Result<(Self, Vec<usize>), GroupError> {
        let dim = images.first().ok_or(GroupError::MissingIdentity)?.rows();
        let mut distinct: Vec<UnitaryMatrix> = Vec::new();
        let mut index = ElementIndex::new(dim, tol.eq_tol);
        let mut map = Vec::with_capacity(images.len());
        for m in images {
            if m.rows() != dim {
                return Err(GroupError::DimensionMismatch {
                    expected: dim,
                    found: m.rows(),
                });
            }
            let u = polar_project(m)?;
            let idx = match index.find(u.matrix(), &distinct, tol.eq_tol) {
                Some(i) => i,
                None => {
                    index.insert(u.matrix(), distinct.len());
                    distinct.push(u);
                    distinct.len() - 1
                }
            };
            map.push(idx);
        }
        let image_generators: Vec<usize> = generators.iter().map(|&g| map[g]).collect();
        let (group, perm) = Self::sorted(distinct, image_generators, tol);
        let map = map.into_iter().map(|i| perm[i]).collect();
        Ok((group, map))
    }

    /// Sorts elements canonically; returns the group and old→new index map.
    pub(crate) fn sorted(
        elements: Vec<UnitaryMatrix>,
        generators: Vec<usize>,
        tol: Tolerance,
    ) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by(|&a, &b| canonical_cmp(elements[a].matrix(), elements[b].matrix()));
        let mut old_to_new = vec![0; elements.len()];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut slots: Vec<Option<UnitaryMatrix>> = elements.into_iter().map(Some).collect();
        let sorted: Vec<UnitaryMatrix> = order
            .iter()
            .map(|&old| slots[old].take().unwrap())
            .collect();
        let generators = generators.into_iter().map(|g| old_to_new[g]).collect();
        (Self::from_closed_parts(sorted, generators, tol), old_to_new)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UnitaryMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &UnitaryMatrix {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    /// Generator matrices; falls back to all elements when none are recorded.
    pub fn generator_matrices(&self) -> Vec<&UnitaryMatrix> {
        if self.generators.is_empty() {
            self.elements.iter().collect()
        } else {
            self.generators.iter().map(|&g| &self.elements[g]).collect()
        }
    }

    pub fn tol(&self) -> &Tolerance {
        &self.tol
    }

    /// Index of the element within `eq_tol` of `m`, if any.
    pub fn find(&self, m: &ComplexMatrix) -> Option<usize> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return None;
        }
        self.index.find(m, &self.elements, self.tol.eq_tol)
    }

    pub fn identity_index(&self) -> usize {
        self.table().identity()
    }

    /// Multiplication table, computed on first use.
    pub fn table(&self) -> &CayleyTable {
        self.table
            .get_or_init(|| Arc::new(self.build_table().expect("group closed by construction")))
    }

    fn build_table(&self) -> Result<CayleyTable, GroupError> {
        let n = self.order();
        let identity = self
            .find(&ComplexMatrix::identity(self.dim))
            .ok_or(GroupError::MissingIdentity)?;
        let rows: Vec<Result<Vec<u32>, GroupError>> = (0..n)
            .into_par_iter()
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let prod = self.elements[a].matrix() * self.elements[b].matrix();
                        self.find(&prod)
                            .map(|c| c as u32)
                            .ok_or(GroupError::NotClosed(a, b))
                    })
                    .collect()
            })
            .collect();
        let mut mul = Vec::with_capacity(n * n);
        for row in rows {
            mul.extend(row?);
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mul[a * n + b] as usize == identity)
                .ok_or(GroupError::NotClosed(a, a))?;
            inv[a] = b as u32;
        }
        // adjoint closure: the inverse must be the stored adjoint
        for (a, &b) in inv.iter().enumerate() {
            let adj = self.elements[a].matrix().adjoint();
            if self.elements[b as usize].matrix().frobenius_distance(&adj) > self.tol.eq_tol {
                return Err(GroupError::NotClosed(a, b as usize));
            }
        }
        Ok(CayleyTable {
            order: n,
            mul,
            inv,
            identity,
        })
    }

    /// The conjugate group `{W G W*}`, with the same element indexing and
    /// the same multiplication table.
    pub fn conjugate_by(&self, w: &UnitaryMatrix) -> Self {
        let elements: Vec<UnitaryMatrix> = self
            .elements
            .par_iter()
            .map(|e| e.conjugate_by(w))
            .collect();
        let g = Self::from_closed_parts(elements, self.generators.clone(), self.tol);
        if let Some(t) = self.table.get() {
            let _ = g.table.set(Arc::clone(t));
        }
        g
    }

    /// Same elements, generators and table with a different tolerance.
    pub fn with_tol(&self, tol: Tolerance) -> Self {
        let g = Self::from_closed_parts(self.elements.clone(), self.generators.clone(), tol);
        if let Some(t) = self.table.get() {
            let _ = g.table.set(Arc::clone(t));
        }
        g
    }

    /// Indices of elements that are scalar multiples of the identity.
    pub fn scalar_elements(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| scalar_value(self.elements[i].matrix(), self.tol.eq_tol).is_some())
            .collect()
    }
}

/// `λ` if `‖M − λI‖_F ≤ tol` with `λ = tr(M)/n`.
pub fn scalar_value(m: &ComplexMatrix, tol: f64) -> Option<C64> {
    let n = m.rows();
    let lambda = m.trace() / n as f64;
    let dev = ComplexMatrix::identity(n)
        .scale(lambda)
        .frobenius_distance(m);
    (dev <= tol).then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::certify_unitary;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub(crate) fn real_unitary(rows: &[&[f64]]) -> UnitaryMatrix {
        let m = ComplexMatrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        certify_unitary(m, &Tolerance::default()).unwrap()
    }

    #[test]
    fn from_elements_validates() {
        let tol = Tolerance::default();
        let i2 = UnitaryMatrix::identity(2);
        let neg = real_unitary(&[&[-1.0, 0.0], &[0.0, -1.0]]);
        let swap = real_unitary(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(
            FiniteUnitaryGroup::from_elements(vec![i2.clone(), neg.clone()], vec![1], tol).is_ok()
        );
        assert!(matches!(
            FiniteUnitaryGroup::from_elements(
                vec![i2.clone(), swap.clone(), neg.clone()],
                vec![],
                tol
            ),
            Err(GroupError::NotClosed(..))
        ));
        assert!(matches!(
            FiniteUnitaryGroup::from_elements(vec![neg.clone()], vec![], tol),
            Err(GroupError::MissingIdentity)
        ));
        assert!(matches!(
            FiniteUnitaryGroup::from_elements(vec![i2.clone(), i2.clone()], vec![], tol),
            Err(GroupError::Duplicate(0, 1))
        ));
        assert!(matches!(
            FiniteUnitaryGroup::from_elements(vec![i2], vec![3], tol),
            Err(GroupError::BadGeneratorIndex(3))
        ));
    }

    #[test]
    fn lookup_tolerates_noise_below_eq_tol() {
        let tol = Tolerance::default();
        let g = close_group(&[real_unitary(&[&[0.0, 1.0], &[1.0, 0.0]])], tol, 10).unwrap();
        let noisy =
            &g.element(1).matrix().clone() + &ComplexMatrix::identity(2).scale(c(3e-9, -2e-9));
        assert_eq!(g.find(&noisy), Some(1));
        let far = &g.element(1).matrix().clone() + &ComplexMatrix::identity(2).scale(c(1e-7, 0.0));
        assert_eq!(g.find(&far), None);
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(
            scalar_value(&ComplexMatrix::identity(3).scale(c(0.0, 1.0)), 1e-8),
            Some(c(0.0, 1.0))
        );
        assert_eq!(
            scalar_value(
                &real_unitary(&[&[1.0, 0.0], &[0.0, -1.0]]).into_matrix(),
                1e-8
            ),
            None
        );
    }
}
