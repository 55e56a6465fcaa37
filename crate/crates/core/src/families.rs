//! Named finite unitary groups and seeded random inputs.
//!
//! The families span the regimes the algorithms distinguish: transitive and
//! intransitive monomial groups, irreducible groups without any common
//! eigenvector, and reducible non-monomial groups, plus conjugates of all of
//! these by diagonal phases or random unitaries.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::group::{close_group, FiniteUnitaryGroup, GroupError, DEFAULT_CAP};
use crate::numerics::{
    polar_project, ComplexMatrix, NumericsError, Tolerance, UnitVector, UnitaryMatrix, C64,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{2πik/m}`.
pub fn root_of_unity(m: usize, k: i64) -> C64 {
    C64::from_polar(1.0, TAU * k as f64 / m as f64)
}

fn unitary(m: ComplexMatrix) -> UnitaryMatrix {
    polar_project(&m).expect("family generators are unitary")
}

fn close(gens: Vec<UnitaryMatrix>) -> Result<FiniteUnitaryGroup, GroupError> {
    close_group(&gens, Tolerance::default(), DEFAULT_CAP)
}

/// Permutation matrix with `P e_j = e_{perm[j]}`.
pub fn permutation_matrix(perm: &[usize]) -> UnitaryMatrix {
    unitary(ComplexMatrix::permutation(perm))
}

/// Monomial matrix `diag(weights) · P` with `P e_j = e_{perm[j]}`.
pub fn monomial_matrix(perm: &[usize], weights: &[C64]) -> UnitaryMatrix {
    unitary(&ComplexMatrix::diagonal(weights) * &ComplexMatrix::permutation(perm))
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

fn three_cycle(n: usize, a: usize, b: usize, d: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p[a] = b;
    p[b] = d;
    p[d] = a;
    p
}

fn parity(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Cyclic shift `e_j ↦ e_{j+1}` generating `ℤ/n` on `ℂⁿ`.
pub fn cyclic_shift(n: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    close(vec![permutation_matrix(&cycle(n))])
}

/// Cyclic shift with weight `e^{2πi/m}` on the first coordinate; the `n`-th
/// power is the scalar `e^{2πi/m}`.
pub fn twisted_shift(n: usize, m: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    let mut w = vec![c(1.0, 0.0); n];
    w[0] = root_of_unity(m, 1);
    close(vec![monomial_matrix(&cycle(n), &w)])
}

/// Permutation representation of `S_n`.
pub fn symmetric(n: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    if n == 1 {
        return close(vec![UnitaryMatrix::identity(1)]);
    }
    close(vec![
        permutation_matrix(&transposition(n, 0, 1)),
        permutation_matrix(&cycle(n)),
    ])
}

/// Permutation representation of `A_n`, `n ≥ 3`.
pub fn alternating(n: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    let gens = (2..n)
        .map(|k| permutation_matrix(&three_cycle(n, 0, 1, k)))
        .collect();
    close(gens)
}

/// `S_n` acting by `sign(π) P_π`; the uniform vector has character `sign`.
pub fn sign_twisted_symmetric(n: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    let gens = [transposition(n, 0, 1), cycle(n)]
        .iter()
        .map(|p| unitary(ComplexMatrix::permutation(p).scale(c(parity(p) as f64, 0.0))))
        .collect();
    close(gens)
}

/// Signed permutation matrices, order `2ⁿ n!`; irreducible for `n ≥ 2`.
pub fn signed_permutations(n: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    let mut flip = vec![c(1.0, 0.0); n];
    flip[0] = c(-1.0, 0.0);
    let mut gens = vec![
        monomial_matrix(&(0..n).collect::<Vec<_>>(), &flip),
        permutation_matrix(&cycle(n)),
    ];
    if n > 2 {
        gens.push(permutation_matrix(&transposition(n, 0, 1)));
    }
    close(gens)
}

/// Diagonal group generated by `diag(ω^{k_1}, …, ω^{k_n})`, `ω = e^{2πi/m}`.
pub fn cyclic_diagonal(m: usize, exponents: &[i64]) -> Result<FiniteUnitaryGroup, GroupError> {
    let d: Vec<C64> = exponents.iter().map(|&k| root_of_unity(m, k)).collect();
    close(vec![unitary(ComplexMatrix::diagonal(&d))])
}

fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::permutation(&[1, 0])
}

fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)])
}

fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut data = Vec::with_capacity(ra * rb * ca * cb);
    for i in 0..ra * rb {
        for j in 0..ca * cb {
            data.push(a.get(i / rb, j / cb) * b.get(i % rb, j % cb));
        }
    }
    ComplexMatrix::new(ra * rb, ca * cb, data).expect("kron shape")
}

/// `⟨X, Z⟩` on `ℂ²`, order 8, irreducible.
pub fn pauli() -> Result<FiniteUnitaryGroup, GroupError> {
    close(vec![unitary(pauli_x()), unitary(pauli_z())])
}

/// `⟨X⊗I, Z⊗I, I⊗X, I⊗Z⟩` on `ℂ⁴`, order 32, irreducible.
pub fn pauli_two_qubit() -> Result<FiniteUnitaryGroup, GroupError> {
    let i2 = ComplexMatrix::identity(2);
    close(vec![
        unitary(kron(&pauli_x(), &i2)),
        unitary(kron(&pauli_z(), &i2)),
        unitary(kron(&i2, &pauli_x())),
        unitary(kron(&i2, &pauli_z())),
    ])
}

/// Shift and clock on `ℂᵈ`, order `d³`, irreducible.
pub fn heisenberg_weyl(d: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    let clock: Vec<C64> = (0..d).map(|k| root_of_unity(d, k as i64)).collect();
    close(vec![
        permutation_matrix(&cycle(d)),
        unitary(ComplexMatrix::diagonal(&clock)),
    ])
}

/// Dihedral group of order `2m` as rotations and a reflection of the plane.
pub fn dihedral(m: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    let (s, co) = (TAU / m as f64).sin_cos();
    let rot =
        ComplexMatrix::from_rows(&[vec![c(co, 0.0), c(-s, 0.0)], vec![c(s, 0.0), c(co, 0.0)]])
            .expect("2x2");
    close(vec![unitary(rot), unitary(pauli_z())])
}

/// Unit quaternion `a + bi + cj + dk` as an `SU(2)` matrix.
fn quaternion(a: f64, b: f64, cc: f64, d: f64) -> UnitaryMatrix {
    let rows = [vec![c(a, b), c(cc, d)], vec![c(-cc, d), c(a, -b)]];
    unitary(ComplexMatrix::from_rows(&rows).expect("2x2"))
}

/// Quaternion group `Q₈ ⊂ SU(2)`, irreducible.
pub fn quaternion_group() -> Result<FiniteUnitaryGroup, GroupError> {
    close(vec![
        quaternion(0.0, 1.0, 0.0, 0.0),
        quaternion(0.0, 0.0, 1.0, 0.0),
    ])
}

fn binary_icosahedral_generators() -> Vec<UnitaryMatrix> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    vec![
        quaternion(0.5, 0.5, 0.5, 0.5),
        quaternion(phi / 2.0, 0.5 / phi, 0.5, 0.0),
    ]
}

/// Binary icosahedral group `2I ⊂ SU(2)`, order 120, perfect and irreducible.
pub fn binary_icosahedral() -> Result<FiniteUnitaryGroup, GroupError> {
    close(binary_icosahedral_generators())
}

/// `2I ⊕ 1` on `ℂ³`: reducible, with `e₃` the only common eigendirection.
pub fn binary_icosahedral_plus_trivial() -> Result<FiniteUnitaryGroup, GroupError> {
    let gens = binary_icosahedral_generators()
        .iter()
        .map(|g| direct_sum_matrix(g.matrix(), &ComplexMatrix::identity(1)))
        .collect();
    close(gens)
}

/// Permutation representation of `A₅` on `ℂ⁵`, order 60.
pub fn a5_permutation() -> Result<FiniteUnitaryGroup, GroupError> {
    close(vec![
        permutation_matrix(&three_cycle(5, 0, 1, 2)),
        permutation_matrix(&cycle(5)),
    ])
}

/// `⟨ω A₅⟩` with `ω = e^{2πi/m}` scaling both generators. `A₅` is perfect,
/// so this is `Ω_m × A₅` of order `60m`.
pub fn scaled_a5(m: usize) -> Result<FiniteUnitaryGroup, GroupError> {
    let w = root_of_unity(m, 1);
    close(vec![
        unitary(ComplexMatrix::permutation(&three_cycle(5, 0, 1, 2)).scale(w)),
        unitary(ComplexMatrix::permutation(&cycle(5)).scale(w)),
    ])
}

fn direct_sum_matrix(a: &ComplexMatrix, b: &ComplexMatrix) -> UnitaryMatrix {
    let n = a.rows() + b.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut rows = out.to_rows();
    for i in 0..a.rows() {
        rows[i][..a.cols()].copy_from_slice(a.row(i));
    }
    for i in 0..b.rows() {
        rows[a.rows() + i][a.cols()..].copy_from_slice(b.row(i));
    }
    out = ComplexMatrix::from_rows(&rows).expect("square");
    unitary(out)
}

/// Group generated by `A_k ⊕ B_k` for paired generator lists; when both lists
/// present the same abstract group this is the direct sum representation.
pub fn direct_sum(
    a: &[UnitaryMatrix],
    b: &[UnitaryMatrix],
) -> Result<FiniteUnitaryGroup, GroupError> {
    if a.len() != b.len() || a.is_empty() {
        return Err(GroupError::NoGenerators);
    }
    close(
        a.iter()
            .zip(b)
            .map(|(x, y)| direct_sum_matrix(x.matrix(), y.matrix()))
            .collect(),
    )
}

/// Generators of a group, or all elements when none are recorded.
pub fn generators_of(g: &FiniteUnitaryGroup) -> Vec<UnitaryMatrix> {
    g.generator_matrices().into_iter().cloned().collect()
}

/// Uniformly random phases `diag(e^{iθ_k})`.
pub fn random_diagonal_phases<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    let d: Vec<C64> = (0..n)
        .map(|_| C64::from_polar(1.0, rng.random::<f64>() * TAU))
        .collect();
    unitary(ComplexMatrix::diagonal(&d))
}

/// Haar-random unitary: the polar factor of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    loop {
        let data = (0..n * n).map(|_| gaussian(rng)).collect();
        let m = ComplexMatrix::new(n, n, data).expect("square");
        match polar_project(&m) {
            Ok(u) => return u,
            Err(NumericsError::NearSingular { .. }) => continue,
            Err(e) => panic!("polar projection of a square matrix failed: {e}"),
        }
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly random unit vector in `ℂⁿ`.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitVector {
    loop {
        let v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        if let Ok(u) = UnitVector::new(v) {
            return u;
        }
    }
}

/// `normalize(ζ + δ w)` with `w` a random unit vector.
pub fn perturb<R: Rng + ?Sized>(zeta: &UnitVector, delta: f64, rng: &mut R) -> UnitVector {
    let w = random_unit_vector(zeta.dim(), rng);
    let v = zeta
        .entries()
        .iter()
        .zip(w.entries())
        .map(|(z, x)| z + x * delta)
        .collect();
    UnitVector::new(v).expect("perturbation of a unit vector by δ < 1 is nonzero")
}

/// Log-uniform sample from `[lo, hi]`.
pub fn log_uniform<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

/// Phases `φ ∈ [-π, π]ᵏ` with an `ε ∈ (0, 1)` for which
/// `|1 + Σ e^{iφ_j}| ≥ (k+1)(1-ε)` holds with a random margin.
pub fn random_phase_sum_input<R: Rng + ?Sized>(k: usize, rng: &mut R) -> (Vec<f64>, f64) {
    loop {
        let scale = log_uniform(1e-6, 1.0, rng);
        let phis: Vec<f64> = (0..k)
            .map(|_| {
                ((rng.random::<f64>() * 2.0 - 1.0) * scale * std::f64::consts::PI)
                    .clamp(-std::f64::consts::PI, std::f64::consts::PI)
            })
            .collect();
        let resultant = (C64::new(1.0, 0.0)
            + phis.iter().map(|&p| C64::from_polar(1.0, p)).sum::<C64>())
        .norm();
        let tight = 1.0 - resultant / (k + 1) as f64;
        let eps = tight * (1.0 + rng.random::<f64>()) + 1e-15;
        if eps > 0.0 && eps < 1.0 {
            return (phis, eps);
        }
    }
}

/// Tuple `g ∈ 𝕋ⁿ` with `Π g_i = 1`, built as `α e^{iψ}` with `α ∈ Ω_n` and
/// zero-sum phases `ψ`, and an `ε ∈ (0, 2/n³)` with `|Σ g_i| ≥ n(1-ε)`.
pub fn random_alpha_tuple<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Vec<C64>, f64) {
    let limit = 2.0 / (n as f64).powi(3);
    loop {
        let alpha = root_of_unity(n, rng.random_range(0..n as i64));
        let scale = log_uniform(1e-7, 1.0, rng) / n as f64;
        let mut psi: Vec<f64> = (0..n)
            .map(|_| (rng.random::<f64>() * 2.0 - 1.0) * scale)
            .collect();
        let mean = psi.iter().sum::<f64>() / n as f64;
        psi.iter_mut().for_each(|p| *p -= mean);
        let g: Vec<C64> = psi
            .iter()
            .map(|&p| alpha * C64::from_polar(1.0, p))
            .collect();
        let tight = 1.0 - g.iter().sum::<C64>().norm() / n as f64;
        let eps = tight * (1.0 + rng.random::<f64>()) + 1e-15;
        if eps > 0.0 && eps < limit {
            return (g, eps);
        }
    }
}

/// A named member of the test corpus.
#[derive(Debug, Clone)]
pub struct CorpusGroup {
    pub name: String,
    pub group: FiniteUnitaryGroup,
}

fn named(name: &str, g: Result<FiniteUnitaryGroup, GroupError>) -> CorpusGroup {
    CorpusGroup {
        name: name.to_string(),
        group: g.unwrap_or_else(|e| panic!("corpus group {name} failed to close: {e}")),
    }
}

/// Fixed list of corpus groups, orders at most 384 and dimensions at most 6.
pub fn corpus() -> Vec<CorpusGroup> {
    let s3 = symmetric(3).expect("S3");
    let s3_sign = sign_twisted_symmetric(3).expect("S3 sign");
    let mut out = vec![
        named("trivial_3", close(vec![UnitaryMatrix::identity(3)])),
        named(
            "minus_identity_2",
            close(vec![unitary(
                ComplexMatrix::identity(2).scale(c(-1.0, 0.0)),
            )]),
        ),
        named("cyclic_shift_2", cyclic_shift(2)),
        named("cyclic_shift_3", cyclic_shift(3)),
        named("cyclic_shift_4", cyclic_shift(4)),
        named("cyclic_shift_5", cyclic_shift(5)),
        named("twisted_shift_3_2", twisted_shift(3, 2)),
        named("twisted_shift_4_4", twisted_shift(4, 4)),
        named("symmetric_2", symmetric(2)),
        named("symmetric_3", Ok(s3.clone())),
        named("symmetric_4", symmetric(4)),
        named("alternating_4", alternating(4)),
        named("sign_twisted_symmetric_3", Ok(s3_sign.clone())),
        named("sign_twisted_symmetric_4", sign_twisted_symmetric(4)),
        named("signed_permutations_2", signed_permutations(2)),
        named("signed_permutations_3", signed_permutations(3)),
        named("cyclic_diagonal_4_013", cyclic_diagonal(4, &[0, 1, 3])),
        named("cyclic_diagonal_6_1234", cyclic_diagonal(6, &[1, 2, 3, 4])),
        named("pauli", pauli()),
        named("pauli_two_qubit", pauli_two_qubit()),
        named("heisenberg_weyl_3", heisenberg_weyl(3)),
        named("dihedral_3", dihedral(3)),
        named("dihedral_5", dihedral(5)),
        named("quaternion", quaternion_group()),
        named("binary_icosahedral", binary_icosahedral()),
        named(
            "binary_icosahedral_plus_trivial",
            binary_icosahedral_plus_trivial(),
        ),
        named("a5_permutation", a5_permutation()),
        named("scaled_a5_3", scaled_a5(3)),
        named(
            "s3_plus_sign",
            direct_sum(&generators_of(&s3), &generators_of(&s3_sign)),
        ),
    ];
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0xc0de);
    let phased = symmetric(4).expect("S4");
    let w = random_diagonal_phases(4, &mut rng);
    out.push(named("symmetric_4_phased", Ok(phased.conjugate_by(&w))));
    let u = random_unitary(3, &mut rng);
    out.push(named("symmetric_3_rotated", Ok(s3.conjugate_by(&u))));
    let u = random_unitary(2, &mut rng);
    out.push(named(
        "pauli_rotated",
        Ok(pauli().expect("pauli").conjugate_by(&u)),
    ));
    out
}

/// Transitive monomial groups on `ℂⁿ` that have a common eigenvector.
pub fn transitive_monomial_with_eigenvector(n: usize) -> Vec<CorpusGroup> {
    let mut out = vec![
        named(&format!("cyclic_shift_{n}"), cyclic_shift(n)),
        named(&format!("symmetric_{n}"), symmetric(n)),
        named(
            &format!("sign_twisted_symmetric_{n}"),
            sign_twisted_symmetric(n),
        ),
        named(
            &format!("twisted_shift_{n}_{}", 2 * n),
            twisted_shift(n, 2 * n),
        ),
    ];
    if n == 4 {
        out.push(named("alternating_4", alternating(4)));
    }
    out
}
