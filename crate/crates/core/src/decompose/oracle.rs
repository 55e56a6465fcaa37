use crate::group::FiniteUnitaryGroup;
use crate::numerics::{eigenvalues, null_space, ComplexMatrix, UnitVector, C64};

/// Eigenvalues closer than this are treated as one.
const EIGENVALUE_MERGE: f64 = 1e-6;

/// Singular-value threshold for intersecting a subspace with an eigenspace.
const INTERSECTION_THRESHOLD: f64 = 1e-8;

/// A joint eigenspace: all common eigenvectors sharing one eigenvalue per
/// generator.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterBlock {
    /// Orthonormal basis.
    pub basis: Vec<Vec<C64>>,
    /// Eigenvalue of each generator on this block.
    pub character: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommonEigenvector {
    pub vector: UnitVector,
    pub character: Vec<C64>,
}

/// Distinct eigenvalues of a unitary, ordered by argument in `[0, 2π)`.
fn distinct_eigenvalues(m: &ComplexMatrix) -> Vec<C64> {
    let mut vals: Vec<C64> = eigenvalues(m).into_iter().map(|z| z / z.norm()).collect();
    let key = |z: &C64| z.arg().rem_euclid(std::f64::consts::TAU);
    vals.sort_by(|a, b| key(a).total_cmp(&key(b)));
    let mut out: Vec<(C64, usize)> = Vec::new();
    for v in vals {
        match out
            .iter_mut()
            .find(|(c, _)| (*c - v).norm() <= EIGENVALUE_MERGE)
        {
            Some((c, k)) => {
                *c = (*c * *k as f64 + v) / (*k as f64 + 1.0);
                *k += 1;
            }
            None => out.push((v, 1)),
        }
    }
    out.into_iter().map(|(c, _)| c / c.norm()).collect()
}

/// Joint eigenspaces of the generators (all elements when none are
/// recorded), found by intersecting eigenspaces generator by generator.
pub fn character_blocks(g: &FiniteUnitaryGroup) -> Vec<CharacterBlock> {
    let n = g.dim();
    let full: Vec<Vec<C64>> = (0..n)
        .map(|i| UnitVector::basis(n, i).into_entries())
        .collect();
    let mut blocks = vec![CharacterBlock {
        basis: full,
        character: Vec::new(),
    }];
    for u in g.generator_matrices() {
        let m = u.matrix();
        let mut next = Vec::new();
        for lambda in distinct_eigenvalues(m) {
            let shifted = m - &ComplexMatrix::identity(n).scale(lambda);
            for b in &blocks {
                let v = ComplexMatrix::from_columns(&b.basis).expect("nonempty block");
                let coeffs = null_space(&(&shifted * &v), INTERSECTION_THRESHOLD);
                if coeffs.is_empty() {
                    continue;
                }
                let mut character = b.character.clone();
                character.push(lambda);
                next.push(CharacterBlock {
                    basis: coeffs.iter().map(|c| v.mul_vec(c)).collect(),
                    character,
                });
            }
        }
        blocks = next;
        if blocks.is_empty() {
            break;
        }
    }
    blocks
}

/// A maximal orthonormal set of common eigenvectors with their characters;
/// empty when there is none.
pub fn eigenspace_intersection_oracle(g: &FiniteUnitaryGroup) -> Vec<CommonEigenvector> {
    character_blocks(g)
        .into_iter()
        .flat_map(|b| {
            let character = b.character;
            b.basis.into_iter().map(move |v| CommonEigenvector {
                vector: UnitVector::new(v).expect("unit basis vector"),
                character: character.clone(),
            })
        })
        .collect()
}
