use super::FiniteUnitaryGroup;
use crate::numerics::C64;

/// One monomial element: `(G x)_i = weights[i] · x[perm[i]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialElement {
    pub perm: Vec<usize>,
    pub weights: Vec<C64>,
}

impl MonomialElement {
    /// `γ₁ ⋯ γ_n`.
    pub fn weight_product(&self) -> C64 {
        self.weights.iter().product()
    }
}

/// Permutation and weights of every element, in group order.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialStructure {
    pub elements: Vec<MonomialElement>,
}

/// Location of the first row that is not a single unimodular entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotMonomial {
    pub element: usize,
    pub row: usize,
}

/// Reads off permutation and weights from each element; every row must hold
/// exactly one entry of modulus `≥ 1 − eq_tol` and nothing else above `eq_tol`.
pub fn monomial_structure(g: &FiniteUnitaryGroup) -> Result<MonomialStructure, NotMonomial> {
    let tol = g.tol().eq_tol;
    let n = g.dim();
    let mut elements = Vec::with_capacity(g.order());
    for (e, u) in g.elements().iter().enumerate() {
        let m = u.matrix();
        let mut perm = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut used = vec![false; n];
        for i in 0..n {
            let mut big = m.row(i).iter().enumerate().filter(|(_, z)| z.norm() > tol);
            match (big.next(), big.next()) {
                (Some((j, z)), None) if z.norm() >= 1.0 - tol && !used[j] => {
                    used[j] = true;
                    perm.push(j);
                    weights.push(*z);
                }
                _ => return Err(NotMonomial { element: e, row: i }),
            }
        }
        elements.push(MonomialElement { perm, weights });
    }
    Ok(MonomialStructure { elements })
}

impl MonomialStructure {
    /// Orbits of the coordinate indices under the permutation action, each
    /// sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.elements.first().map_or(0, |e| e.perm.len());
        let mut label = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            label[start] = id;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let i = orbit[k];
                for e in &self.elements {
                    let j = e.perm[i];
                    if label[j] == usize::MAX {
                        label[j] = id;
                        orbit.push(j);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }
}

pub fn is_transitive(structure: &MonomialStructure) -> bool {
    structure.orbits().len() <= 1
}

/// `α(G) = γ₁ ⋯ γ_n` for the element at `index`.
pub fn weight_product_hom(structure: &MonomialStructure, index: usize) -> C64 {
    structure.elements[index].weight_product()
}
