//! Finite groups of unitary matrices and their approximate fixed points.
//!
//! Given a finite group `𝒢 ⊂ U(n)` and a unit vector `ξ` that every element
//! nearly fixes up to a phase, this crate measures how far `ξ` is from a
//! true common eigenvector and constructs one nearby, with certificates for
//! every bound it relies on.

// `!(x < bound)` is deliberate throughout: it rejects NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificate;
pub mod decompose;
pub mod families;
pub mod fixedpoint;
pub mod group;
pub mod numerics;
pub mod phase;

pub use certificate::{
    reducibility_threshold, truncation_bound, BoundCheck, EigenvectorCertificate, Method,
};
pub use decompose::{
    monomial_eigenvector, oracle_eigenvector, reduce_blocks, truncate_eigenvector,
    BlockDecomposition, DecomposeError,
};
pub use fixedpoint::{
    average_certificate, average_fixed_point, defect, rho_eigenvector, DefectReport,
    FixedPointError,
};
pub use group::{close_group, FiniteUnitaryGroup, GroupError};
pub use numerics::{ComplexMatrix, NumericsError, Tolerance, UnitVector, UnitaryMatrix, C64};
