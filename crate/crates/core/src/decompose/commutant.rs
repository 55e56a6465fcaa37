use crate::group::FiniteUnitaryGroup;
use crate::numerics::{null_space, ComplexMatrix, C64};

/// Singular values of the commutator map at or below this count as zero.
pub const COMMUTANT_THRESHOLD: f64 = 1e-7;

/// Frobenius-orthonormal basis of `{X : GX = XG}` over the generators (all
/// elements when the group records none).
pub fn commutant_basis(g: &FiniteUnitaryGroup) -> Vec<ComplexMatrix> {
    let mats: Vec<&ComplexMatrix> = g
        .generator_matrices()
        .into_iter()
        .map(|u| u.matrix())
        .collect();
    commutant_of(&mats)
}

/// Null space of `X ↦ (G X − X G)_G` stacked over the given square matrices.
pub fn commutant_of(mats: &[&ComplexMatrix]) -> Vec<ComplexMatrix> {
    let n = mats[0].rows();
    let nn = n * n;
    let zero = C64::new(0.0, 0.0);
    let mut data = vec![zero; mats.len() * nn * nn];
    for (m, g) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = &mut data[(m * nn + i * n + j) * nn..(m * nn + i * n + j + 1) * nn];
                // (GX)_ij = Σ_k G_ik X_kj
                for k in 0..n {
                    row[k * n + j] += g.get(i, k);
                }
                // (XG)_ij = Σ_l X_il G_lj
                for l in 0..n {
                    row[i * n + l] -= g.get(l, j);
                }
            }
        }
    }
    let a = ComplexMatrix::new(mats.len() * nn, nn, data).expect("finite by construction");
    null_space(&a, COMMUTANT_THRESHOLD)
        .into_iter()
        .map(|v| ComplexMatrix::new(n, n, v).expect("n*n entries"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_group, DEFAULT_CAP};
    use crate::numerics::{certify_unitary, Tolerance, UnitaryMatrix};

    fn real(rows: &[&[f64]]) -> UnitaryMatrix {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        certify_unitary(
            ComplexMatrix::from_rows(&rows).unwrap(),
            &Tolerance::default(),
        )
        .unwrap()
    }

    fn close(gens: Vec<UnitaryMatrix>) -> FiniteUnitaryGroup {
        close_group(&gens, Tolerance::default(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn commutant_dimensions() {
        let x = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let z = real(&[&[1.0, 0.0], &[0.0, -1.0]]);
        assert_eq!(commutant_basis(&close(vec![x, z.clone()])).len(), 1);
        assert_eq!(
            commutant_basis(&close(vec![UnitaryMatrix::identity(2)])).len(),
            4
        );
        let diag = commutant_basis(&close(vec![z]));
        assert_eq!(diag.len(), 2);
        for b in &diag {
            assert!(b.get(0, 1).norm() < 1e-12 && b.get(1, 0).norm() < 1e-12);
        }
    }

    #[test]
    fn basis_is_frobenius_orthonormal_and_commutes() {
        let cyc = UnitaryMatrix::from_trusted(ComplexMatrix::permutation(&[1, 2, 0]));
        let tr = UnitaryMatrix::from_trusted(ComplexMatrix::permutation(&[1, 0, 2]));
        let g = close(vec![cyc, tr]);
        let basis = commutant_basis(&g);
        // S3 on C^3 = trivial + standard, so the commutant is 2-dimensional
        assert_eq!(basis.len(), 2);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let ip = a.frobenius_inner(b);
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - C64::new(expected, 0.0)).norm() < 1e-12);
            }
            for e in g.elements() {
                let lhs = e.matrix() * a;
                let rhs = a * e.matrix();
                assert!(lhs.frobenius_distance(&rhs) < 1e-12);
            }
        }
    }
}
