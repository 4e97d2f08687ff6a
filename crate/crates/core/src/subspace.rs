//! Linear subspaces of `F^n` in canonical echelon form.

use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar::{Field, Rational};

/// Subspace of `F^n`. The basis vectors are the rows of a reduced row echelon
/// matrix without zero rows, so two equal subspaces always have identical
/// bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F = Rational> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span<V: AsRef<[F]>>(ambient: usize, vectors: &[V]) -> Self {
        let rows: Vec<Vec<F>> = vectors
            .iter()
            .map(|v| {
                let v = v.as_ref();
                assert_eq!(v.len(), ambient, "vector does not live in the ambient space");
                v.to_vec()
            })
            .collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(rows).expect("rows have equal length");
        let (r, pivots) = m.rref();
        let basis = Matrix::from_fn(pivots.len(), ambient, |i, j| r[(i, j)].clone());
        Subspace { ambient, basis, pivots }
    }

    /// Kernel of a linear map given by its matrix.
    pub fn kernel_of(map: &Matrix<F>) -> Self {
        Self::span(map.cols(), &map.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Echelon basis matrix (one basis vector per row).
    pub fn basis_matrix(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<F>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // Reduce v against the echelon basis; it lies in the span iff nothing is left.
        let mut rest = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if rest[p].is_zero() {
                continue;
            }
            let c = rest[p].clone();
            for (j, slot) in rest.iter_mut().enumerate() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    *slot = slot.clone() - c.clone() * b.clone();
                }
            }
        }
        rest.iter().all(F::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut all = self.basis();
        all.extend(other.basis());
        Self::span(self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // Solve a·A = b·B for coefficient rows (a, b); the intersection is spanned by a·A.
        let a = self.basis();
        let b = other.basis();
        let cols: Vec<Vec<F>> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect())).collect();
        let system = Matrix::from_columns(self.ambient, &cols);
        let vectors: Vec<Vec<F>> = system
            .kernel()
            .into_iter()
            .map(|coeffs| {
                let mut v = alloc::vec![F::zero(); self.ambient];
                for (c, row) in coeffs.iter().zip(&a) {
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, x) in v.iter_mut().zip(row) {
                        *slot = slot.clone() + c.clone() * x.clone();
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vectors)
    }

    /// Indices of standard basis vectors spanning a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use alloc::vec;

    #[test]
    fn canonical_basis() {
        let a = Subspace::span(3, &[vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]]);
        let b = Subspace::span(3, &[vec![int(1), int(2), int(1)], vec![int(1), int(0), int(-1)]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let xy = Subspace::span(3, &[vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]);
        let yz = Subspace::span(3, &[vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]);
        let y = xy.intersection(&yz);
        assert_eq!(y, Subspace::span(3, &[vec![int(0), int(5), int(0)]]));
        assert_eq!(xy.sum(&yz), Subspace::full(3));
        assert!(xy.contains(&[int(3), int(-2), int(0)]));
        assert!(!xy.contains(&[int(0), int(0), int(1)]));
        assert_eq!(xy.complement_coordinates(), vec![2]);
    }
}
