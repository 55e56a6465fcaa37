use super::{NumericsError, C64};

/// `⟨x, y⟩ = Σ x_i conj(y_i)`, linear in the first argument.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn distance(x: &[C64], y: &[C64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn scaled(x: &[C64], s: C64) -> Vec<C64> {
    x.iter().map(|z| z * s).collect()
}

/// Sum of vectors by pairwise (tree) reduction in slice order.
///
/// The reduction order depends only on the number of terms, so results are
/// reproducible regardless of how the terms were produced.
pub fn pairwise_sum(terms: &[Vec<C64>], dim: usize) -> Vec<C64> {
    match terms.len() {
        0 => vec![C64::new(0.0, 0.0); dim],
        1 => terms[0].clone(),
        len => {
            let (lo, hi) = terms.split_at(len / 2);
            let a = pairwise_sum(lo, dim);
            let b = pairwise_sum(hi, dim);
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        }
    }
}

/// Unit-norm complex vector. Construction normalizes.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector {
    entries: Vec<C64>,
}

impl UnitVector {
    pub fn new(entries: Vec<C64>) -> Result<Self, NumericsError> {
        if entries.is_empty() {
            return Err(NumericsError::EmptyMatrix);
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(NumericsError::NonFinite);
        }
        let len = norm(&entries);
        if len < 1e-300 {
            return Err(NumericsError::ZeroVector);
        }
        Ok(Self {
            entries: entries.into_iter().map(|z| z / len).collect(),
        })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self, NumericsError> {
        Self::new(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut entries = vec![C64::new(0.0, 0.0); dim];
        entries[index] = C64::new(1.0, 0.0);
        Self { entries }
    }

    /// `(1, …, 1)/√n`.
    pub fn uniform(dim: usize) -> Self {
        let v = 1.0 / (dim as f64).sqrt();
        Self {
            entries: vec![C64::new(v, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<C64> {
        self.entries
    }

    pub fn inner(&self, other: &Self) -> C64 {
        inner(&self.entries, &other.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_on_construction() {
        let v = UnitVector::new(vec![C64::new(3.0, 0.0), C64::new(0.0, 4.0)]).unwrap();
        assert!((norm(v.entries()) - 1.0).abs() < 1e-12);
        assert_eq!(v.entries()[1], C64::new(0.0, 0.8));
    }

    #[test]
    fn rejects_zero_vector() {
        assert!(matches!(
            UnitVector::new(vec![C64::new(0.0, 0.0); 3]),
            Err(NumericsError::ZeroVector)
        ));
    }

    #[test]
    fn inner_is_conjugate_linear_in_second_slot() {
        let x = vec![C64::new(0.0, 1.0)];
        let y = vec![C64::new(0.0, 1.0)];
        assert_eq!(inner(&x, &y), C64::new(1.0, 0.0));
        let y2 = scaled(&y, C64::new(0.0, 1.0));
        assert_eq!(inner(&x, &y2), C64::new(0.0, -1.0));
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let terms: Vec<Vec<C64>> = (0..7)
            .map(|k| vec![C64::new(k as f64, -(k as f64))])
            .collect();
        assert_eq!(pairwise_sum(&terms, 1), vec![C64::new(21.0, -21.0)]);
        assert_eq!(pairwise_sum(&[], 2), vec![C64::new(0.0, 0.0); 2]);
    }
}
