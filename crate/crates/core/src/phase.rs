//! Roots of unity and phase geometry.
//!
//! These are the scalar inequalities the monomial and commutator
//! constructions lean on: the arc/chord comparison, the phase-sum bound for
//! nearly aligned unit vectors, rounding a tuple of phases with product one
//! to a common root of unity, the rearrangement inequality, and the obtuse
//! triangle shrink used when thresholding character components.

use std::f64::consts::PI;

use thiserror::Error;

use crate::numerics::C64;

/// Slack added to the right-hand side of every asserted inequality.
const ASSERT_SLACK: f64 = 1e-14;

/// Ties at the boundary `φ = π/n` are detected at this many root spacings.
const BOUNDARY_TIE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    #[error("|z| = {modulus} is not within 1e-8 of 1")]
    NotUnitModulus { modulus: f64 },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("value {value} outside admissible range {range}")]
    OutOfRange { value: f64, range: &'static str },
    #[error("empty input")]
    Empty,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("eps = {eps:e} must satisfy 0 < eps < 2/n^3 = {limit:e}")]
    EpsTooLarge { eps: f64, limit: f64 },
    #[error("|g_1 ... g_n - 1| = {gap:e} exceeds 1e-8")]
    ProductNotOne { gap: f64 },
    #[error("|g_1 + ... + g_n| = {sum} < n(1 - eps) = {required}")]
    SumTooSmall { sum: f64, required: f64 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("sequence is not sorted in descending order or has negative entries")]
    NotSorted,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("inequality failed: {lhs} > {rhs} ({what})")]
    BoundViolated {
        what: &'static str,
        lhs: f64,
        rhs: f64,
    },
}

/// The root of unity `e^{2πi·index/order}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: usize,
    index: usize,
}

impl RootOfUnity {
    pub fn new(order: usize, index: i64) -> Result<Self, PhaseError> {
        if order == 0 {
            return Err(PhaseError::ZeroOrder);
        }
        Ok(Self {
            order,
            index: index.rem_euclid(order as i64) as usize,
        })
    }

    pub fn one(order: usize) -> Self {
        Self { order, index: 0 }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn value(&self) -> C64 {
        C64::from_polar(1.0, 2.0 * PI * self.index as f64 / self.order as f64)
    }

    /// Product in `Ω_n`; both factors must share the order.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        Self {
            order: self.order,
            index: (self.index + other.index) % self.order,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            order: self.order,
            index: (self.order - self.index) % self.order,
        }
    }
}

/// `d_n = |e^{2πi/n} - 1|`, the distance between adjacent `n`-th roots.
pub fn adjacent_root_distance(n: usize) -> f64 {
    2.0 * (PI / n as f64).sin()
}

/// Decomposition `z = alpha · e^{i·residual_phase}` with the distances from
/// the input (tuple) to `alpha·(1, …, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseApproximation {
    pub alpha: RootOfUnity,
    /// In `(-π/n, π/n]`.
    pub residual_phase: f64,
    pub l1_distance: f64,
    pub l2_distance: f64,
}

fn check_unit(z: C64) -> Result<(), PhaseError> {
    let modulus = z.norm();
    if (modulus - 1.0).abs() > 1e-8 {
        return Err(PhaseError::NotUnitModulus { modulus });
    }
    Ok(())
}

/// The unique `α ∈ Ω_n` with `z = α e^{iφ}`, `φ ∈ (-π/n, π/n]`.
///
/// The boundary `φ = π/n` belongs to the root below it.
pub fn nearest_root(z: C64, n: usize) -> Result<PhaseApproximation, PhaseError> {
    if n == 0 {
        return Err(PhaseError::ZeroOrder);
    }
    check_unit(z)?;
    let theta = z.arg();
    let spacing = 2.0 * PI / n as f64;
    let t = theta / spacing;
    let k = (t - 0.5 - BOUNDARY_TIE).ceil();
    let residual_phase = theta - k * spacing;
    let alpha = RootOfUnity::new(n, k as i64)?;
    let dist = (z - alpha.value()).norm();
    Ok(PhaseApproximation {
        alpha,
        residual_phase,
        l1_distance: dist,
        l2_distance: dist,
    })
}

/// `((2/π)|φ|, |e^{iφ} - 1|, |φ|)`, checked to be in increasing order.
pub fn arc_chord_bounds(phi: f64) -> Result<(f64, f64, f64), PhaseError> {
    if !(phi.abs() <= PI) {
        return Err(PhaseError::OutOfRange {
            value: phi,
            range: "[-pi, pi]",
        });
    }
    let lower = 2.0 / PI * phi.abs();
    let chord = 2.0 * (phi / 2.0).sin().abs();
    let upper = phi.abs();
    if lower > chord + ASSERT_SLACK {
        return Err(PhaseError::BoundViolated {
            what: "(2/pi)|phi| <= |e^{i phi} - 1|",
            lhs: lower,
            rhs: chord,
        });
    }
    if chord > upper + ASSERT_SLACK {
        return Err(PhaseError::BoundViolated {
            what: "|e^{i phi} - 1| <= |phi|",
            lhs: chord,
            rhs: upper,
        });
    }
    Ok((lower, chord, upper))
}

/// Every quantity in the phase-sum inequality for one input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSumCheck {
    /// `π √k (k+1) √(ε/2)`.
    pub bound: f64,
    /// `Σ |φ_j|`.
    pub sum_abs: f64,
    /// `(4/π²) Σ φ_j²`.
    pub quadratic_lhs: f64,
    /// `(k+1)² · 2ε`.
    pub quadratic_rhs: f64,
}

/// If `|1 + Σ e^{iφ_j}| ≥ (k+1)(1-ε)` then `Σ|φ_j| < π√k(k+1)√(ε/2)`.
///
/// Also checks the intermediate quadratic estimate
/// `(4/π²) Σ φ_j² ≤ (k+1)² 2ε` the strict bound is derived from.
pub fn phase_sum_bound(phis: &[f64], eps: f64) -> Result<PhaseSumCheck, PhaseError> {
    if phis.is_empty() {
        return Err(PhaseError::Empty);
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(PhaseError::OutOfRange {
            value: eps,
            range: "(0, 1)",
        });
    }
    if let Some(&bad) = phis.iter().find(|p| !(p.abs() <= PI)) {
        return Err(PhaseError::OutOfRange {
            value: bad,
            range: "[-pi, pi]",
        });
    }
    let k = phis.len() as f64;
    let resultant =
        (C64::new(1.0, 0.0) + phis.iter().map(|&p| C64::from_polar(1.0, p)).sum::<C64>()).norm();
    let required = (k + 1.0) * (1.0 - eps);
    if resultant < required - ASSERT_SLACK * (k + 1.0) {
        return Err(PhaseError::HypothesisViolated(format!(
            "|1 + sum e^(i phi_j)| = {resultant} < (k+1)(1-eps) = {required}"
        )));
    }
    let bound = PI * k.sqrt() * (k + 1.0) * (eps / 2.0).sqrt();
    let sum_abs: f64 = phis.iter().map(|p| p.abs()).sum();
    let quadratic_lhs = 4.0 / (PI * PI) * phis.iter().map(|p| p * p).sum::<f64>();
    let quadratic_rhs = (k + 1.0).powi(2) * 2.0 * eps;
    if quadratic_lhs > quadratic_rhs * (1.0 + ASSERT_SLACK) + ASSERT_SLACK {
        return Err(PhaseError::BoundViolated {
            what: "(4/pi^2) sum phi_j^2 <= (k+1)^2 2 eps",
            lhs: quadratic_lhs,
            rhs: quadratic_rhs,
        });
    }
    if !(sum_abs < bound) {
        return Err(PhaseError::BoundViolated {
            what: "sum |phi_j| < pi sqrt(k) (k+1) sqrt(eps/2)",
            lhs: sum_abs,
            rhs: bound,
        });
    }
    Ok(PhaseSumCheck {
        bound,
        sum_abs,
        quadratic_lhs,
        quadratic_rhs,
    })
}

/// Rounds a tuple `g ∈ 𝕋ⁿ` with `Π g_i = 1` and `|Σ g_i| ≥ n(1-ε)` to a
/// common `n`-th root of unity.
///
/// `α` is anchored to `g_1`; the returned distances are those of `g` to
/// `α(1, …, 1)` in the 1- and 2-norm, checked against `πn√(2nε)` and
/// `πn√(2ε)`.
pub fn approx_scalar(g: &[C64], eps: f64) -> Result<PhaseApproximation, PhaseError> {
    let n = g.len();
    if n == 0 {
        return Err(PhaseError::Empty);
    }
    let nf = n as f64;
    let limit = 2.0 / nf.powi(3);
    if !(eps > 0.0 && eps < limit) {
        return Err(PhaseError::EpsTooLarge { eps, limit });
    }
    for &z in g {
        check_unit(z)?;
    }
    let product: C64 = g.iter().product();
    let gap = (product - C64::new(1.0, 0.0)).norm();
    if gap > 1e-8 {
        return Err(PhaseError::ProductNotOne { gap });
    }
    let sum = g.iter().sum::<C64>().norm();
    let required = nf * (1.0 - eps);
    if sum < required - ASSERT_SLACK * nf {
        return Err(PhaseError::SumTooSmall { sum, required });
    }
    let anchor = nearest_root(g[0], n)?;
    let alpha = anchor.alpha.value();
    let l1_distance: f64 = g.iter().map(|z| (z - alpha).norm()).sum();
    let l2_distance = g.iter().map(|z| (z - alpha).norm_sqr()).sum::<f64>().sqrt();
    let l1_bound = PI * nf * (2.0 * nf * eps).sqrt();
    let l2_bound = PI * nf * (2.0 * eps).sqrt();
    if !(l1_distance < l1_bound) {
        return Err(PhaseError::BoundViolated {
            what: "||g - alpha 1||_1 < pi n sqrt(2 n eps)",
            lhs: l1_distance,
            rhs: l1_bound,
        });
    }
    if !(l2_distance < l2_bound) {
        return Err(PhaseError::BoundViolated {
            what: "||g - alpha 1||_2 < pi n sqrt(2 eps)",
            lhs: l2_distance,
            rhs: l2_bound,
        });
    }
    Ok(PhaseApproximation {
        alpha: anchor.alpha,
        residual_phase: anchor.residual_phase,
        l1_distance,
        l2_distance,
    })
}

fn check_descending(v: &[f64]) -> Result<(), PhaseError> {
    if v.iter().any(|&x| !(x >= 0.0)) || v.windows(2).any(|w| w[0] < w[1]) {
        return Err(PhaseError::NotSorted);
    }
    Ok(())
}

/// `(Σ x_i y_{π(i)}, Σ x_i y_i)` for descending nonnegative `x`, `y`,
/// checked to satisfy the rearrangement inequality.
pub fn rearrangement_bound(x: &[f64], y: &[f64], perm: &[usize]) -> Result<(f64, f64), PhaseError> {
    if x.len() != y.len() {
        return Err(PhaseError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if perm.len() != x.len() {
        return Err(PhaseError::LengthMismatch {
            left: x.len(),
            right: perm.len(),
        });
    }
    check_descending(x)?;
    check_descending(y)?;
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(PhaseError::InvalidPermutation(perm.len()));
        }
    }
    let permuted: f64 = x.iter().zip(perm).map(|(xi, &p)| xi * y[p]).sum();
    let sorted: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    if permuted > sorted * (1.0 + ASSERT_SLACK) + ASSERT_SLACK {
        return Err(PhaseError::BoundViolated {
            what: "sum x_i y_pi(i) <= sum x_i y_i",
            lhs: permuted,
            rhs: sorted,
        });
    }
    Ok((permuted, sorted))
}

/// `|x + e^{iα} y|` for `x > y > 0` and `α ∈ [2π/3, 4π/3]`; never exceeds `x`.
pub fn obtuse_shrink(x: f64, y: f64, alpha: f64) -> Result<f64, PhaseError> {
    if !(x > y && y > 0.0) {
        return Err(PhaseError::PreconditionViolated(format!(
            "need x > y > 0, got x={x}, y={y}"
        )));
    }
    let lo = 2.0 * PI / 3.0 - 1e-12;
    let hi = 4.0 * PI / 3.0 + 1e-12;
    if !(lo..=hi).contains(&alpha) {
        return Err(PhaseError::PreconditionViolated(format!(
            "alpha = {alpha} outside [2pi/3, 4pi/3]"
        )));
    }
    let value = (C64::new(x, 0.0) + C64::from_polar(y, alpha)).norm();
    if value > x * (1.0 + ASSERT_SLACK) {
        return Err(PhaseError::BoundViolated {
            what: "|x + e^{i alpha} y| <= x",
            lhs: value,
            rhs: x,
        });
    }
    Ok(value)
}
