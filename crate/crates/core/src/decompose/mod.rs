//! Invariant-subspace machinery: commutant oracle, block decomposition,
//! component selection, the monomial pipeline and the truncation
//! construction of a common eigenvector.

mod blocks;
mod commutant;
mod monomial;
mod oracle;
mod truncate;

pub use blocks::{
    reduce_blocks, select_component, Block, BlockDecomposition, ComponentSelection, DEFAULT_SEED,
};
pub use commutant::{commutant_basis, commutant_of, COMMUTANT_THRESHOLD};
pub use monomial::{monomial_eigenvector, monomial_flatten, monomial_spread_check, Flattened};
pub use oracle::{
    character_blocks, eigenspace_intersection_oracle, CharacterBlock, CommonEigenvector,
};
pub use truncate::{oracle_eigenvector, truncate_eigenvector};

use thiserror::Error;

use crate::fixedpoint::FixedPointError;
use crate::group::{GroupError, NotMonomial};
use crate::numerics::NumericsError;
use crate::phase::PhaseError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError {
    #[error("dimension mismatch: group acts on C^{expected}, vector has {found} entries")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("group is not monomial (element {}, row {})", .0.element, .0.row)]
    NotMonomial(NotMonomial),
    #[error("could not split the commutant spectrum after {attempts} attempts")]
    DegenerateSplit { attempts: usize },
    #[error("all components of xi vanish")]
    AllComponentsZero,
    #[error("spread max|xi_i - xi_j| = {gap:e} exceeds (n-1) sqrt(eps) = {bound:e}")]
    SpreadViolation { gap: f64, bound: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("numerically inconsistent homomorphism: {0}")]
    HomomorphismFailure(String),
    #[error("group average has norm {norm:e}")]
    ZeroAverage { norm: f64 },
    #[error("no common eigenvector; weak defect {eps:e} (threshold {threshold:e})")]
    NoCommonEigenvector { eps: f64, threshold: f64 },
    #[error("every component has mass below eps = {eps:e} (largest {max_mass:e})")]
    AllComponentsBelowEps { eps: f64, max_mass: f64 },
    #[error("certification failed: {what} (measured {measured:e}, bound {bound:e})")]
    CertificationFailed {
        what: String,
        measured: f64,
        bound: f64,
    },
    #[error("input vector is not sorted descending and nonnegative")]
    NotSorted,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
}

impl DecomposeError {
    /// True when the failure means the no-common-eigenvector lower bound
    /// `ε ≥ 1/(3600 n¹¹)` was itself violated.
    pub fn is_falsification(&self) -> bool {
        match self {
            DecomposeError::NoCommonEigenvector { eps, threshold } => eps < threshold,
            DecomposeError::SpreadViolation { .. } | DecomposeError::CertificationFailed { .. } => {
                true
            }
            _ => false,
        }
    }
}

fn check_dim(dim: usize, xi: &crate::numerics::UnitVector) -> Result<(), DecomposeError> {
    if dim != xi.dim() {
        return Err(DecomposeError::DimensionMismatch {
            expected: dim,
            found: xi.dim(),
        });
    }
    Ok(())
}
