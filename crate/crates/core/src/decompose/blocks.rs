use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::commutant::commutant_of;
use super::{check_dim, DecomposeError};
use crate::fixedpoint::defect;
use crate::group::FiniteUnitaryGroup;
use crate::numerics::{
    certify_unitary, gram_schmidt, hermitian_eigen, norm, ComplexMatrix, UnitVector, UnitaryMatrix,
    C64,
};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Random Hermitian commutant elements tried before giving up on a split.
const SPLIT_ATTEMPTS: usize = 8;

/// Eigenvalue gaps of the (unit-norm) random commutant element above this
/// separate invariant subspaces.
const SPLIT_GAP: f64 = 1e-6;

/// One invariant subspace with the group restricted to it.
#[derive(Debug, Clone)]
pub struct Block {
    /// Orthonormal basis of the subspace, as vectors of the ambient space.
    pub basis: Vec<Vec<C64>>,
    /// `{V* G V}`, deduplicated.
    pub group: FiniteUnitaryGroup,
    /// Index in `group` of the restriction of each ambient element.
    pub element_map: Vec<usize>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.basis.len()
    }
}

/// Orthogonal decomposition `ℂⁿ = V₁ ⊕ … ⊕ V_k` into invariant subspaces.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub seed: u64,
    /// `Q`, whose columns are the block bases in order.
    pub basis_change: UnitaryMatrix,
    pub block_sizes: Vec<usize>,
    pub blocks: Vec<Block>,
    /// `max_G ‖off-block part of Q* G Q‖_F`.
    pub off_block_mass: f64,
}

impl BlockDecomposition {
    /// Builds the decomposition for the given orthonormal subspaces, which
    /// must be invariant and together span the space.
    pub fn from_subspaces(
        g: &FiniteUnitaryGroup,
        subspaces: Vec<Vec<Vec<C64>>>,
        seed: u64,
    ) -> Result<Self, DecomposeError> {
        let n = g.dim();
        let columns: Vec<Vec<C64>> = subspaces.iter().flatten().cloned().collect();
        let q = certify_unitary(ComplexMatrix::from_columns(&columns)?, g.tol())?;
        let block_sizes: Vec<usize> = subspaces.iter().map(Vec::len).collect();
        let blocks = subspaces
            .into_iter()
            .map(|basis| restrict(g, basis))
            .collect::<Result<Vec<_>, _>>()?;

        let mut owner = Vec::with_capacity(n);
        for (b, &size) in block_sizes.iter().enumerate() {
            owner.extend(std::iter::repeat_n(b, size));
        }
        let q_adj = q.matrix().adjoint();
        let off_block_mass = g
            .elements()
            .par_iter()
            .map(|e| {
                let m = &(&q_adj * e.matrix()) * q.matrix();
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        if owner[i] != owner[j] {
                            s += m.get(i, j).norm_sqr();
                        }
                    }
                }
                s.sqrt()
            })
            .reduce(|| 0.0, f64::max);
        let bound = g.tol().eq_tol * n as f64;
        if off_block_mass > bound {
            return Err(DecomposeError::CertificationFailed {
                what: "block-diagonal form".into(),
                measured: off_block_mass,
                bound,
            });
        }
        Ok(Self {
            seed,
            basis_change: q,
            block_sizes,
            blocks,
            off_block_mass,
        })
    }

    /// Start offset of each block in `Q`-coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    /// `Q* ξ` split into block components.
    pub fn components(&self, xi: &[C64]) -> Vec<Vec<C64>> {
        let y = self.basis_change.matrix().adjoint().mul_vec(xi);
        self.offsets()
            .into_iter()
            .zip(&self.block_sizes)
            .map(|(start, &size)| y[start..start + size].to_vec())
            .collect()
    }

    /// Embeds a vector given in block coordinates of block `i`.
    pub fn embed(&self, i: usize, v: &[C64]) -> Vec<C64> {
        let n = self.basis_change.dim();
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (c, b) in v.iter().zip(&self.blocks[i].basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

/// Group restricted to the span of an orthonormal basis.
fn restrict(g: &FiniteUnitaryGroup, basis: Vec<Vec<C64>>) -> Result<Block, DecomposeError> {
    let v = ComplexMatrix::from_columns(&basis)?;
    let v_adj = v.adjoint();
    let images: Vec<ComplexMatrix> = g
        .elements()
        .par_iter()
        .map(|e| &v_adj * &(e.matrix() * &v))
        .collect();
    let (group, element_map) =
        FiniteUnitaryGroup::from_homomorphic_image(&images, g.generator_indices(), *g.tol())?;
    Ok(Block {
        basis,
        group,
        element_map,
    })
}

fn random_commutant_element(basis: &[ComplexMatrix], rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let k = basis[0].rows();
    let mut x = ComplexMatrix::zeros(k, k);
    for b in basis {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        x = &x + &b.scale(C64::new(re, im));
    }
    let h = &x + &x.adjoint();
    let len = h.frobenius_norm();
    h.scale(C64::new(1.0 / len, 0.0))
}

/// Groups ascending eigenvalues into clusters; `None` if some gap is too
/// small to separate yet too large to ignore.
fn cluster(values: &[f64], merge_below: f64) -> Option<Vec<Vec<usize>>> {
    let mut clusters = vec![vec![0]];
    for k in 1..values.len() {
        let gap = values[k] - values[k - 1];
        if gap > SPLIT_GAP {
            clusters.push(vec![k]);
        } else if gap <= merge_below {
            clusters.last_mut().unwrap().push(k);
        } else {
            return None;
        }
    }
    Some(clusters)
}

/// Splits the span of `basis` into irreducible invariant subspaces.
fn split(
    gens: &[&ComplexMatrix],
    basis: Vec<Vec<C64>>,
    rng: &mut ChaCha8Rng,
    merge_below: f64,
) -> Result<Vec<Vec<Vec<C64>>>, DecomposeError> {
    if basis.len() == 1 {
        return Ok(vec![basis]);
    }
    let v = ComplexMatrix::from_columns(&basis)?;
    let v_adj = v.adjoint();
    let restricted: Vec<ComplexMatrix> = gens.iter().map(|g| &v_adj * &(*g * &v)).collect();
    let refs: Vec<&ComplexMatrix> = restricted.iter().collect();
    let comm = commutant_of(&refs);
    if comm.len() <= 1 {
        return Ok(vec![basis]);
    }
    for _ in 0..SPLIT_ATTEMPTS {
        let h = random_commutant_element(&comm, rng);
        let (values, vectors) = hermitian_eigen(&h);
        let Some(clusters) = cluster(&values, merge_below) else {
            continue;
        };
        if clusters.len() < 2 {
            continue;
        }
        let mut out = Vec::new();
        for cl in clusters {
            let sub: Vec<Vec<C64>> = cl.iter().map(|&k| v.mul_vec(&vectors.column(k))).collect();
            let sub = gram_schmidt(&sub)?;
            out.extend(split(gens, sub, rng, merge_below)?);
        }
        return Ok(out);
    }
    Err(DecomposeError::DegenerateSplit {
        attempts: SPLIT_ATTEMPTS,
    })
}

/// Decomposes the space into irreducible invariant subspaces by repeatedly
/// splitting along eigenspaces of random Hermitian commutant elements.
/// Blocks are ordered by size, ascending.
pub fn reduce_blocks(
    g: &FiniteUnitaryGroup,
    seed: u64,
) -> Result<BlockDecomposition, DecomposeError> {
    let n = g.dim();
    let gens: Vec<&ComplexMatrix> = g
        .generator_matrices()
        .into_iter()
        .map(|u| u.matrix())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full: Vec<Vec<C64>> = (0..n)
        .map(|i| UnitVector::basis(n, i).into_entries())
        .collect();
    let mut subspaces = split(&gens, full, &mut rng, 10.0 * g.tol().eq_tol)?;
    subspaces.sort_by_key(Vec::len);
    BlockDecomposition::from_subspaces(g, subspaces, seed)
}

/// The component chosen by the pigeonhole argument, with its re-measured
/// defect on the restricted group.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSelection {
    pub index: usize,
    /// `a_i = ‖ξ_i‖²`.
    pub component_norm_sq: f64,
    /// `a_j` for every block.
    pub masses: Vec<f64>,
    /// `ε̃ = (n/n_i) ε`.
    pub scaled_eps: f64,
    /// `ε/a_i`, at most `ε̃`.
    pub sharp_eps: f64,
    /// Weak defect of `ξ̃_i` on the restricted group.
    pub measured_eps: f64,
    /// `ξ_i/‖ξ_i‖` in block coordinates.
    pub normalized_component: UnitVector,
}

const MASS_SLACK: f64 = 1e-10;

/// Picks the block maximizing `a_i/n_i` (first on ties) and checks
/// `a_i ≥ n_i/n` and that `ξ̃_i` is a weak `ε/a_i`-approximate fixed point
/// of the restricted group.
pub fn select_component(
    bd: &BlockDecomposition,
    xi: &UnitVector,
    eps: f64,
) -> Result<ComponentSelection, DecomposeError> {
    let n = bd.basis_change.dim();
    check_dim(n, xi)?;
    let comps = bd.components(xi.entries());
    let masses: Vec<f64> = comps.iter().map(|c| norm(c).powi(2)).collect();
    let total: f64 = masses.iter().sum();
    if (total - 1.0).abs() > MASS_SLACK {
        return Err(DecomposeError::CertificationFailed {
            what: "component masses sum to 1".into(),
            measured: total,
            bound: 1.0,
        });
    }
    let mut best = 0;
    for i in 1..masses.len() {
        if masses[i] / bd.block_sizes[i] as f64 > masses[best] / bd.block_sizes[best] as f64 {
            best = i;
        }
    }
    let a = masses[best];
    let n_i = bd.block_sizes[best];
    if a <= 0.0 {
        return Err(DecomposeError::AllComponentsZero);
    }
    let share = n_i as f64 / n as f64;
    if a < share - MASS_SLACK {
        return Err(DecomposeError::CertificationFailed {
            what: "a_i >= n_i/n".into(),
            measured: a,
            bound: share,
        });
    }
    let normalized = UnitVector::new(comps[best].clone())?;
    let measured_eps = defect(&bd.blocks[best].group, &normalized)?.weak_defect;
    let sharp_eps = eps / a;
    if measured_eps > sharp_eps + MASS_SLACK {
        return Err(DecomposeError::CertificationFailed {
            what: "restricted weak defect <= eps/a_i".into(),
            measured: measured_eps,
            bound: sharp_eps,
        });
    }
    Ok(ComponentSelection {
        index: best,
        component_norm_sq: a,
        masses,
        scaled_eps: eps / share,
        sharp_eps,
        measured_eps,
        normalized_component: normalized,
    })
}
