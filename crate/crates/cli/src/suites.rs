//! Seeded randomized verification suites.
//!
//! Trial `t` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `t`, so trials are independent of each other and of how they are
//! scheduled. Trials run in parallel and are merged in trial order, which
//! makes the report a function of `(suite, seed, trials)` only.

use std::f64::consts::PI;
use std::sync::LazyLock;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use unireduce::decompose::{
    character_blocks, commutant_basis, eigenspace_intersection_oracle, monomial_flatten,
    reduce_blocks, CommonEigenvector, DecomposeError,
};
use unireduce::families::{self, CorpusGroup};
use unireduce::fixedpoint::{
    commutator_defect_check, lambda_entry, rho_threshold, FixedPointError,
};
use unireduce::group::{derived_elements, is_transitive, monomial_structure};
use unireduce::numerics::{distance, inner};
use unireduce::phase::{
    adjacent_root_distance, approx_scalar, arc_chord_bounds, nearest_root, obtuse_shrink,
    phase_sum_bound, rearrangement_bound, RootOfUnity,
};
use unireduce::{
    average_fixed_point, defect, monomial_eigenvector, reducibility_threshold, rho_eigenvector,
    truncate_eigenvector, EigenvectorCertificate, FiniteUnitaryGroup, UnitVector, UnitaryMatrix,
    C64,
};

use crate::wire::{MatrixJson, VectorJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Phase inequalities: arc/chord, phase sums, root rounding,
    /// rearrangement, obtuse shrink.
    Lemmas,
    /// λ identity, commutator bound, group average, flattening bound.
    Bounds,
    /// End-to-end eigenvector constructions.
    Pipeline,
    /// Commutant, block and eigenspace oracles against each other.
    Oracle,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Bounds => "bounds",
            Suite::Pipeline => "pipeline",
            Suite::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "bounds" => Ok(Suite::Bounds),
            "pipeline" => Ok(Suite::Pipeline),
            "oracle" => Ok(Suite::Oracle),
            other => Err(format!(
                "unknown suite {other:?} (lemmas|bounds|pipeline|oracle)"
            )),
        }
    }
}

/// One failed check with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub trial: usize,
    pub description: String,
    pub measured: f64,
    pub bound: f64,
    pub input: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    /// Individual inequalities evaluated across all trials.
    pub checks: usize,
    pub failures: Vec<Failure>,
    /// Kept out of the JSON so reports are byte-identical across runs.
    #[serde(skip)]
    pub wall_time: f64,
}

/// Per-trial state: the random stream and the checks recorded so far.
struct Trial {
    seed: u64,
    trial: usize,
    rng: ChaCha8Rng,
    checks: usize,
    failures: Vec<Failure>,
}

impl Trial {
    fn new(seed: u64, trial: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        Trial {
            seed,
            trial,
            rng,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn record(
        &mut self,
        ok: bool,
        description: &str,
        measured: f64,
        bound: f64,
        input: impl FnOnce() -> Value,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                seed: self.seed,
                trial: self.trial,
                description: description.to_string(),
                measured,
                bound,
                input: input(),
            });
        }
    }

    /// `measured ≤ bound`; NaN fails.
    fn le(&mut self, description: &str, measured: f64, bound: f64, input: impl FnOnce() -> Value) {
        self.record(measured <= bound, description, measured, bound, input);
    }

    /// `measured < bound`; NaN fails.
    fn lt(&mut self, description: &str, measured: f64, bound: f64, input: impl FnOnce() -> Value) {
        self.record(measured < bound, description, measured, bound, input);
    }

    fn fail(&mut self, description: &str, input: impl FnOnce() -> Value) {
        self.record(false, description, f64::NAN, f64::NAN, input);
    }
}

pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> SuiteReport {
    let start = Instant::now();
    let body: fn(&mut Trial) = match suite {
        Suite::Lemmas => lemmas_trial,
        Suite::Bounds => bounds_trial,
        Suite::Pipeline => pipeline_trial,
        Suite::Oracle => oracle_trial,
    };
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut trial = Trial::new(seed, t);
            body(&mut trial);
            trial
        })
        .collect();
    SuiteReport {
        suite: suite.as_str().to_string(),
        seed,
        trials,
        checks: results.iter().map(|t| t.checks).sum(),
        failures: results.into_iter().flat_map(|t| t.failures).collect(),
        wall_time: start.elapsed().as_secs_f64(),
    }
}

/// A corpus group with its oracle data, computed once per process.
pub struct Seeded {
    pub name: String,
    pub group: FiniteUnitaryGroup,
    pub common: Vec<CommonEigenvector>,
    pub commutant_dim: usize,
}

pub static CORPUS: LazyLock<Vec<Seeded>> = LazyLock::new(|| {
    families::corpus()
        .into_iter()
        .map(|CorpusGroup { name, group }| Seeded {
            common: eigenspace_intersection_oracle(&group),
            commutant_dim: commutant_basis(&group).len(),
            name,
            group,
        })
        .collect()
});

/// Transitive monomial groups with a common eigenvector, for `n = 2, 3, 4`.
pub static TRANSITIVE: LazyLock<Vec<Seeded>> = LazyLock::new(|| {
    (2..=4)
        .flat_map(families::transitive_monomial_with_eigenvector)
        .map(|CorpusGroup { name, group }| Seeded {
            common: eigenspace_intersection_oracle(&group),
            commutant_dim: commutant_basis(&group).len(),
            name,
            group,
        })
        .collect()
});

fn pick<'a, T>(items: &[&'a T], rng: &mut ChaCha8Rng) -> &'a T {
    items[rng.random_range(0..items.len())]
}

fn vector_json(v: &UnitVector) -> Value {
    json!(VectorJson::from_slice(v.entries()))
}

fn group_input(name: &str, conjugator: &UnitaryMatrix, xi: &UnitVector) -> Value {
    json!({
        "group": name,
        "conjugator": MatrixJson::from_matrix(conjugator.matrix()),
        "xi": vector_json(xi),
    })
}

/// Conjugates a corpus group by a random unitary (or random diagonal
/// phases when `keep_monomial`), carrying its common eigenvectors along.
fn conjugated(
    s: &Seeded,
    keep_monomial: bool,
    rng: &mut ChaCha8Rng,
) -> (FiniteUnitaryGroup, Vec<UnitVector>, UnitaryMatrix) {
    let n = s.group.dim();
    let w = if keep_monomial {
        families::random_diagonal_phases(n, rng)
    } else {
        families::random_unitary(n, rng)
    };
    let common = s
        .common
        .iter()
        .map(|c| {
            UnitVector::new(w.apply(c.vector.entries())).expect("unitary image of a unit vector")
        })
        .collect();
    (s.group.conjugate_by(&w), common, w)
}

// ---------------------------------------------------------------- lemmas

fn lemmas_trial(t: &mut Trial) {
    let phi = t.rng.random_range(-PI..=PI);
    let chord = 2.0 * (phi / 2.0).sin().abs();
    t.le(
        "(2/pi)|phi| <= |e^{i phi} - 1|",
        2.0 / PI * phi.abs(),
        chord + 1e-14,
        || json!({"phi": phi}),
    );
    t.le(
        "|e^{i phi} - 1| <= |phi|",
        chord,
        phi.abs() + 1e-14,
        || json!({"phi": phi}),
    );
    t.record(
        arc_chord_bounds(phi).is_ok(),
        "arc_chord_bounds accepts phi",
        phi,
        PI,
        || json!({"phi": phi}),
    );

    let n = t.rng.random_range(2..=64usize);
    let d = adjacent_root_distance(n);
    t.le("4/n <= d_n", 4.0 / n as f64, d, || json!({"n": n}));
    let k = t.rng.random_range(0..n as i64);
    let alpha = RootOfUnity::new(n, k).expect("n >= 2");
    match nearest_root(alpha.value(), n) {
        Ok(a) => {
            t.record(
                a.alpha == alpha,
                "nearest_root fixes roots of unity",
                a.alpha.index() as f64,
                k as f64,
                || json!({"n": n, "k": k}),
            );
            t.le(
                "root residual phase",
                a.residual_phase.abs(),
                1e-12,
                || json!({"n": n, "k": k}),
            );
        }
        Err(e) => t.fail(
            &format!("nearest_root failed: {e}"),
            || json!({"n": n, "k": k}),
        ),
    }

    let k = t.rng.random_range(1..=16usize);
    let (phis, eps) = families::random_phase_sum_input(k, &mut t.rng);
    let kf = k as f64;
    let sum_abs: f64 = phis.iter().map(|p| p.abs()).sum();
    let quad = 4.0 / (PI * PI) * phis.iter().map(|p| p * p).sum::<f64>();
    let quad_rhs = (kf + 1.0).powi(2) * 2.0 * eps;
    let input = || json!({"phis": phis, "eps": eps});
    t.le(
        "(4/pi^2) sum phi^2 <= (k+1)^2 2 eps",
        quad,
        quad_rhs * (1.0 + 1e-12) + 1e-15,
        input,
    );
    let bound = PI * kf.sqrt() * (kf + 1.0) * (eps / 2.0).sqrt();
    t.lt(
        "sum |phi_j| < pi sqrt(k) (k+1) sqrt(eps/2)",
        sum_abs,
        bound,
        input,
    );
    if let Err(e) = phase_sum_bound(&phis, eps) {
        t.fail(
            &format!("phase_sum_bound rejected a valid input: {e}"),
            input,
        );
    }

    let n = t.rng.random_range(2..=8usize);
    let (g, eps) = families::random_alpha_tuple(n, &mut t.rng);
    let input = || json!({"g": g.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(), "eps": eps});
    match approx_scalar(&g, eps) {
        Ok(a) => {
            let alpha = a.alpha.value();
            let nf = n as f64;
            let l1: f64 = g.iter().map(|z| (z - alpha).norm()).sum();
            let l2 = g.iter().map(|z| (z - alpha).norm_sqr()).sum::<f64>().sqrt();
            t.le(
                "alpha^n = 1",
                (alpha.powu(n as u32) - 1.0).norm(),
                1e-12,
                input,
            );
            t.lt(
                "||g - alpha 1||_1 < pi n sqrt(2 n eps)",
                l1,
                PI * nf * (2.0 * nf * eps).sqrt(),
                input,
            );
            t.lt(
                "||g - alpha 1||_2 < pi n sqrt(2 eps)",
                l2,
                PI * nf * (2.0 * eps).sqrt(),
                input,
            );
            t.le("l2 <= l1", l2, l1 * (1.0 + 1e-12), input);
            t.le(
                "l1 <= sqrt(n) l2",
                l1,
                nf.sqrt() * l2 * (1.0 + 1e-12),
                input,
            );
        }
        Err(e) => t.fail(&format!("approx_scalar rejected a valid input: {e}"), input),
    }

    let len = t.rng.random_range(1..=8usize);
    let mut x: Vec<f64> = (0..len).map(|_| t.rng.random::<f64>()).collect();
    let mut y: Vec<f64> = (0..len).map(|_| t.rng.random::<f64>()).collect();
    x.sort_by(|a, b| b.total_cmp(a));
    y.sort_by(|a, b| b.total_cmp(a));
    let mut perm: Vec<usize> = (0..len).collect();
    perm.shuffle(&mut t.rng);
    let permuted: f64 = x.iter().zip(&perm).map(|(a, &p)| a * y[p]).sum();
    let sorted: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
    let input = || json!({"x": x, "y": y, "perm": perm});
    t.le(
        "sum x_i y_pi(i) <= sum x_i y_i",
        permuted,
        sorted * (1.0 + 1e-12) + 1e-15,
        input,
    );
    if let Err(e) = rearrangement_bound(&x, &y, &perm) {
        t.fail(
            &format!("rearrangement_bound rejected a valid input: {e}"),
            input,
        );
    }

    let xx = t.rng.random_range(1e-3..1.0);
    let yy = xx * t.rng.random_range(1e-3..1.0);
    let angle = t.rng.random_range(2.0 * PI / 3.0..=4.0 * PI / 3.0);
    let value = (C64::new(xx, 0.0) + C64::from_polar(yy, angle)).norm();
    let input = || json!({"x": xx, "y": yy, "alpha": angle});
    t.le("|x + e^{i alpha} y| <= x", value, xx * (1.0 + 1e-12), input);
    if let Err(e) = obtuse_shrink(xx, yy, angle) {
        t.fail(&format!("obtuse_shrink rejected a valid input: {e}"), input);
    }
}

// ---------------------------------------------------------------- bounds

fn bounds_trial(t: &mut Trial) {
    let pool: Vec<&Seeded> = CORPUS.iter().filter(|s| s.group.order() <= 200).collect();
    let s = pick(&pool, &mut t.rng);
    let keep_monomial = t.rng.random_bool(0.5);
    let (g, common, w) = conjugated(s, keep_monomial, &mut t.rng);
    let n = g.dim();
    let xi = if !common.is_empty() && t.rng.random_bool(0.5) {
        let zeta = &common[t.rng.random_range(0..common.len())];
        let delta = families::log_uniform(1e-8, 1e-1, &mut t.rng);
        families::perturb(zeta, delta, &mut t.rng)
    } else {
        families::random_unit_vector(n, &mut t.rng)
    };
    let input = || group_input(&s.name, &w, &xi);
    let report = match defect(&g, &xi) {
        Ok(r) => r,
        Err(e) => return t.fail(&format!("defect failed: {e}"), input),
    };
    let eps = report.weak_defect;

    let mut worst_identity: f64 = 0.0;
    let mut worst_adjoint: f64 = 0.0;
    let mut worst_eigen: f64 = 0.0;
    let table = g.table();
    for (i, e) in g.elements().iter().enumerate() {
        let Some(entry) = lambda_entry(e, &xi) else {
            continue;
        };
        let gx = e.apply(xi.entries());
        let ip = inner(xi.entries(), &gx);
        let lhs: f64 = gx
            .iter()
            .zip(xi.entries())
            .map(|(a, b)| (a - entry.lambda * b).norm_sqr())
            .sum();
        worst_identity = worst_identity.max((lhs - (2.0 - 2.0 * ip.norm())).abs());
        worst_eigen = worst_eigen.max(lhs - 2.0 * eps);
        if let Some(adj) = lambda_entry(g.element(table.inv(i)), &xi) {
            // λ = ip/|ip| loses accuracy as |ip| shrinks; weight by |ip|
            worst_adjoint =
                worst_adjoint.max((adj.lambda - entry.lambda.conj()).norm() * ip.norm());
        }
    }
    t.le(
        "|‖Gξ−λξ‖² − (2 − 2|⟨Gξ,ξ⟩|)| over elements",
        worst_identity,
        1e-12,
        input,
    );
    t.le(
        "|⟨Gξ,ξ⟩| |λ_{G*} − conj(λ_G)| over elements",
        worst_adjoint,
        1e-12,
        input,
    );
    t.le("‖Gξ−λ_Gξ‖² − 2ε over elements", worst_eigen, 1e-12, input);

    let commutator_radius = 4.0 * (2.0 * eps).sqrt();
    let worst_commutator = derived_elements(&g)
        .commutators
        .iter()
        .map(|&c| distance(&g.element(c).apply(xi.entries()), xi.entries()))
        .fold(0.0, f64::max);
    t.le(
        "max ‖Cξ−ξ‖ over commutators <= 4√(2ε)",
        worst_commutator,
        commutator_radius + 1e-9,
        input,
    );
    match commutator_defect_check(&g, &xi) {
        Ok(c) => t.record(
            c.holds(),
            "commutator_defect_check agrees",
            c.worst_ratio,
            4.0,
            input,
        ),
        Err(e) => t.fail(&format!("commutator check failed: {e}"), input),
    }

    match average_fixed_point(&g, &xi) {
        Ok(avg) => {
            t.le(
                "max ‖Gη−η‖ for the group average",
                avg.max_residual,
                1e-9,
                input,
            );
            t.le(
                "‖η−ξ‖ <= strong defect",
                distance(&avg.eta, xi.entries()),
                report.strong_defect + 1e-10,
                input,
            );
        }
        Err(FixedPointError::ZeroAverage { .. }) => {}
        Err(e) => t.fail(&format!("average_fixed_point: {e}"), input),
    }

    if let Ok(ms) = monomial_structure(&g) {
        if is_transitive(&ms) {
            match monomial_flatten(&g, &xi) {
                Ok(f) => {
                    let nf = n as f64;
                    let d = f
                        .magnitudes
                        .iter()
                        .map(|m| (m - 1.0 / nf.sqrt()).powi(2))
                        .sum::<f64>()
                        .sqrt();
                    let slack_eps = eps + 4.0 * f64::EPSILON;
                    t.le(
                        "‖η − |ξ|‖ <= n√(nε)",
                        d,
                        nf * (nf * slack_eps).sqrt(),
                        input,
                    );
                    let spread = f.magnitudes[0] - f.magnitudes[n - 1];
                    t.le(
                        "max|ξ_i| − min|ξ_i| <= (n−1)√ε",
                        spread,
                        (nf - 1.0) * slack_eps.sqrt() + 1e-12,
                        input,
                    );
                }
                Err(e) => t.fail(&format!("monomial_flatten: {e}"), input),
            }
        }
    }
}

// ---------------------------------------------------------------- pipeline

fn check_certificate(t: &mut Trial, cert: &EigenvectorCertificate, input: impl Fn() -> Value) {
    for c in cert.checks.iter().filter(|c| c.guaranteed) {
        let strictness = if c.strict { "<" } else { "<=" };
        let description = format!("{} {}: {}", cert.method, strictness, c.name);
        t.record(c.holds, &description, c.measured, c.bound, &input);
    }
}

fn pipeline_trial(t: &mut Trial) {
    match t.trial % 4 {
        0 => pipeline_transitive(t),
        1 => pipeline_truncate(t),
        2 => pipeline_intransitive(t),
        _ => pipeline_rho(t),
    }
}

/// `ξ = normalize(ζ + δw)` with `δ` log-uniform in `[10⁻⁸, 10⁻²]`.
fn perturbed(common: &[UnitVector], rng: &mut ChaCha8Rng) -> UnitVector {
    let zeta = &common[rng.random_range(0..common.len())];
    let delta = families::log_uniform(1e-8, 1e-2, rng);
    families::perturb(zeta, delta, rng)
}

fn pipeline_transitive(t: &mut Trial) {
    let pool: Vec<&Seeded> = TRANSITIVE.iter().collect();
    let s = pick(&pool, &mut t.rng);
    let (g, common, w) = conjugated(s, true, &mut t.rng);
    let xi = perturbed(&common, &mut t.rng);
    let n = g.dim();
    let input = || group_input(&s.name, &w, &xi);
    let threshold = reducibility_threshold(n);
    match monomial_eigenvector(&g, &xi) {
        Ok(cert) => {
            check_certificate(t, &cert, input);
            if cert.eps < threshold {
                t.lt(
                    "monomial ‖ξ−ζ‖ < 1/n",
                    distance(xi.entries(), &cert.eta),
                    1.0 / n as f64,
                    input,
                );
                t.le("monomial residual", cert.max_residual, 1e-8, input);
            }
        }
        Err(e) => pipeline_error(t, "monomial", e, &g, &xi, threshold, input),
    }
}

fn pipeline_error(
    t: &mut Trial,
    method: &str,
    e: DecomposeError,
    g: &FiniteUnitaryGroup,
    xi: &UnitVector,
    threshold: f64,
    input: impl Fn() -> Value,
) {
    let eps = defect(g, xi).map(|d| d.weak_defect).unwrap_or(f64::NAN);
    // a NaN defect counts as a failure too
    if e.is_falsification() || eps.is_nan() || eps < threshold {
        t.fail(
            &format!("{method} failed at eps = {eps:e} (threshold {threshold:e}): {e}"),
            input,
        );
    } else {
        t.checks += 1;
    }
}

fn pipeline_truncate(t: &mut Trial) {
    let pool: Vec<&Seeded> = CORPUS
        .iter()
        .filter(|s| !s.common.is_empty() && s.group.order() <= 200)
        .collect();
    let s = pick(&pool, &mut t.rng);
    let (g, common, w) = conjugated(s, false, &mut t.rng);
    let xi = perturbed(&common, &mut t.rng);
    let n = g.dim();
    let input = || group_input(&s.name, &w, &xi);
    let threshold = reducibility_threshold(n);
    match truncate_eigenvector(&g, &xi) {
        Ok(cert) => {
            check_certificate(t, &cert, input);
            t.le("truncate residual", cert.max_residual, 1e-8, input);
            if cert.eps > 0.0 && cert.eps < threshold {
                let d2 = distance(xi.entries(), &cert.eta).powi(2);
                t.lt(
                    "‖ξ−η‖² < 3600 n¹¹ ε",
                    d2,
                    3600.0 * (n as f64).powi(11) * cert.eps,
                    input,
                );
            }
        }
        Err(e) => pipeline_error(t, "truncate", e, &g, &xi, threshold, input),
    }
}

fn pipeline_intransitive(t: &mut Trial) {
    let pool: Vec<&Seeded> = CORPUS
        .iter()
        .filter(|s| {
            !s.common.is_empty() && monomial_structure(&s.group).is_ok_and(|m| !is_transitive(&m))
        })
        .collect();
    let s = pick(&pool, &mut t.rng);
    let (g, common, w) = conjugated(s, true, &mut t.rng);
    let xi = perturbed(&common, &mut t.rng);
    let input = || group_input(&s.name, &w, &xi);
    let threshold = reducibility_threshold(g.dim());
    match monomial_eigenvector(&g, &xi) {
        Ok(cert) => {
            check_certificate(t, &cert, input);
            t.le("monomial residual", cert.max_residual, 1e-8, input);
        }
        Err(e) => pipeline_error(t, "monomial", e, &g, &xi, threshold, input),
    }
}

/// Groups in which every element is a scalar times a commutator.
const RHO_GROUPS: [&str; 3] = [
    "a5_permutation",
    "scaled_a5_3",
    "binary_icosahedral_plus_trivial",
];

fn pipeline_rho(t: &mut Trial) {
    let pool: Vec<&Seeded> = CORPUS
        .iter()
        .filter(|s| RHO_GROUPS.contains(&s.name.as_str()))
        .collect();
    let s = pick(&pool, &mut t.rng);
    let (g, common, w) = conjugated(s, false, &mut t.rng);
    let n = g.dim();
    let zeta = &common[t.rng.random_range(0..common.len())];
    let delta = families::log_uniform(1e-8, 1e-1, &mut t.rng);
    let xi = families::perturb(zeta, delta, &mut t.rng);
    let input = || group_input(&s.name, &w, &xi);
    match rho_eigenvector(&g, &xi) {
        Ok(cert) => {
            check_certificate(t, &cert, input);
            let eps = cert.eps;
            t.le(
                "rho ‖η−ξ‖ <= 4√(2ε)",
                distance(&cert.eta, xi.entries()),
                4.0 * (2.0 * eps).sqrt() + 1e-9,
                input,
            );
        }
        Err(FixedPointError::HypothesisViolated(_)) => {
            let eps = defect(&g, &xi).map(|d| d.weak_defect).unwrap_or(f64::NAN);
            t.le(
                "rho hypothesis rejected only above 1/(32n²)",
                rho_threshold(n),
                eps,
                input,
            );
        }
        Err(e) => t.fail(&format!("rho_eigenvector: {e}"), input),
    }
}

// ---------------------------------------------------------------- oracle

fn oracle_trial(t: &mut Trial) {
    let pool: Vec<&Seeded> = CORPUS
        .iter()
        .filter(|s| s.group.order() <= 48 && s.group.dim() <= 6)
        .collect();
    let s = pick(&pool, &mut t.rng);
    let (g, _, w) = conjugated(s, false, &mut t.rng);
    let n = g.dim();
    let split_seed: u64 = t.rng.random();
    let base_input = || json!({"group": s.name, "conjugator": MatrixJson::from_matrix(w.matrix()), "split_seed": split_seed});

    let dim = commutant_basis(&g).len();
    let common = eigenspace_intersection_oracle(&g);
    t.record(
        dim == s.commutant_dim,
        "commutant dimension is conjugation invariant",
        dim as f64,
        s.commutant_dim as f64,
        base_input,
    );
    t.record(
        common.len() == s.common.len(),
        "common eigenvector count is conjugation invariant",
        common.len() as f64,
        s.common.len() as f64,
        base_input,
    );
    let blocks = match reduce_blocks(&g, split_seed) {
        Ok(b) => b,
        Err(e) => return t.fail(&format!("reduce_blocks: {e}"), base_input),
    };
    let k = blocks.block_sizes.len();
    t.record(
        (dim == 1) == (k == 1),
        "commutant dimension 1 iff one block",
        dim as f64,
        k as f64,
        base_input,
    );
    t.le(
        "block count <= commutant dimension",
        k as f64,
        dim as f64,
        base_input,
    );
    let has_line = blocks.block_sizes.contains(&1);
    t.record(
        !common.is_empty() == has_line,
        "common eigenvector iff a 1-dimensional block",
        common.len() as f64,
        has_line as u8 as f64,
        base_input,
    );

    let threshold = reducibility_threshold(n);
    if dim == 1 {
        for _ in 0..8 {
            let xi = families::random_unit_vector(n, &mut t.rng);
            let eps = defect(&g, &xi).map(|d| d.weak_defect).unwrap_or(f64::NAN);
            t.le(
                "irreducible group: 1/(3600 n¹¹) <= ε",
                threshold,
                eps,
                || group_input(&s.name, &w, &xi),
            );
        }
    }
    if !common.is_empty() {
        let zeta = &common[t.rng.random_range(0..common.len())].vector;
        let delta = families::log_uniform(1e-8, 1e-3, &mut t.rng);
        let xi = families::perturb(zeta, delta, &mut t.rng);
        let input = || group_input(&s.name, &w, &xi);
        match truncate_eigenvector(&g, &xi) {
            Ok(cert) => {
                let agreement = character_blocks(&g)
                    .iter()
                    .map(|b| {
                        b.basis
                            .iter()
                            .map(|v| inner(v, cert.eta_unit.entries()).norm_sqr())
                            .sum::<f64>()
                    })
                    .fold(0.0, f64::max);
                t.le(
                    "eta_unit lies in an oracle eigenspace",
                    1.0 - agreement,
                    1e-6,
                    input,
                );
            }
            Err(e) => pipeline_error(t, "truncate", e, &g, &xi, threshold, input),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_deterministic() {
        for suite in [Suite::Lemmas, Suite::Bounds, Suite::Pipeline, Suite::Oracle] {
            let a = run_suite(suite, 3, 24);
            let b = run_suite(suite, 3, 24);
            assert!(
                a.failures.is_empty(),
                "{}: {:#?}",
                suite.as_str(),
                a.failures
            );
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap()
            );
            assert!(a.checks > 0);
        }
    }

    #[test]
    fn corpus_has_every_regime() {
        assert!(CORPUS.iter().any(|s| s.commutant_dim == 1));
        for name in RHO_GROUPS {
            assert!(CORPUS.iter().any(|s| s.name == name), "{name}");
        }
        assert_eq!(TRANSITIVE.len(), 13);
    }
}
