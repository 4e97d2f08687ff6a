//! Lie algebras given by structure constants, and the change-of-basis action.
//!
//! Indices are 0-based in this API; `e_1` of the usual notation is index 0.
//! Only brackets `[e_i, e_j]` with `i < j` are stored, skew-symmetry supplies
//! the rest.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Rational};

pub type SparseVector = BTreeMap<usize, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    brackets: BTreeMap<(usize, usize), SparseVector>,
}

/// A violated Jacobi triple `(i, j, l)` with the nonzero cyclic sum.
pub type JacobiViolation = ((usize, usize, usize), Vec<Rational>);

impl LieAlgebra {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        LieAlgebra { name: name.into(), dim, brackets: BTreeMap::new() }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(format!("A{dim}"), dim)
    }

    /// Builds an algebra from `[e_i, e_j] = e_k` entries written 1-based, the
    /// way tables list them. Repeated `(i, j)` pairs accumulate.
    pub fn from_unit_brackets(name: impl Into<String>, dim: usize, entries: &[(usize, usize, usize)]) -> Result<Self> {
        let mut a = Self::new(name, dim);
        for &(i, j, k) in entries {
            for idx in [i, j, k] {
                if idx == 0 || idx > dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            a.add_to_bracket(i - 1, j - 1, k - 1, Rational::one())?;
        }
        Ok(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i + 1, dim: self.dim })
        }
    }

    /// Sets `[e_i, e_j] = v`. Fails if the pair was already set.
    pub fn insert_bracket(&mut self, i: usize, j: usize, v: SparseVector) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        for &k in v.keys() {
            self.check_index(k)?;
        }
        if i == j {
            return Err(Error::SelfBracket(i + 1));
        }
        let (key, negate) = if i < j { ((i, j), false) } else { ((j, i), true) };
        if self.brackets.contains_key(&key) {
            return Err(Error::DuplicateBracket(key.0 + 1, key.1 + 1));
        }
        let v: SparseVector = v
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, if negate { -c } else { c }))
            .collect();
        if !v.is_empty() {
            self.brackets.insert(key, v);
        }
        Ok(())
    }

    /// Adds `c·e_k` to `[e_i, e_j]`.
    pub fn add_to_bracket(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_index(k)?;
        if i == j {
            return Err(Error::SelfBracket(i + 1));
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let entry = self.brackets.entry(key).or_default();
        let slot = entry.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            entry.remove(&k);
        }
        if entry.is_empty() {
            self.brackets.remove(&key);
        }
        Ok(())
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVector)> {
        self.brackets.iter()
    }

    pub fn bracket_count(&self) -> usize {
        self.brackets.len()
    }

    /// `[e_i, e_j]` as a sparse vector (any order of `i`, `j`).
    pub fn bracket(&self, i: usize, j: usize) -> SparseVector {
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            self.brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(&k, c)| (k, -c.clone())).collect())
                .unwrap_or_default()
        } else {
            SparseVector::new()
        }
    }

    /// Structure constant `c_{ij}^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        if i < j {
            self.brackets.get(&(i, j)).and_then(|v| v.get(&k)).cloned().unwrap_or_else(Rational::zero)
        } else if i > j {
            -self.constant(j, i, k)
        } else {
            Rational::zero()
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Bracket of two arbitrary vectors, over any field containing ℚ.
    pub fn bracket_of<F: Field>(&self, u: &[F], v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (&(p, q), vec) in &self.brackets {
            let w = u[p].clone() * v[q].clone() - u[q].clone() * v[p].clone();
            if w.is_zero() {
                continue;
            }
            for (&k, c) in vec {
                out[k] = out[k].clone() + w.clone() * F::from_rational(c);
            }
        }
        out
    }

    /// Images of the basis brackets, one dense vector per nonzero bracket.
    pub fn bracket_images(&self) -> Vec<Vec<Rational>> {
        self.brackets.values().map(|v| densify(v, self.dim)).collect()
    }

    /// Same dimension and same structure constants; names are ignored.
    pub fn same_constants(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.brackets == other.brackets
    }

    /// Pairs `(i, j)`, `i < j`, where the two algebras' brackets differ.
    pub fn differing_brackets(&self, other: &LieAlgebra) -> Vec<(usize, usize)> {
        let mut keys: Vec<(usize, usize)> = self.brackets.keys().chain(other.brackets.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().filter(|k| self.brackets.get(k) != other.brackets.get(k)).collect()
    }

    /// Cyclic sums `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]` that
    /// fail to vanish, for `i < j < l`. Empty iff the constants define a Lie
    /// algebra.
    pub fn jacobi_residual(&self) -> Vec<JacobiViolation> {
        let n = self.dim;
        let basis = |i: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let terms = [(i, j, l), (j, l, i), (l, i, j)];
                    let mut sum = vec![Rational::zero(); n];
                    for (a, b, c) in terms {
                        let inner = densify(&self.bracket(a, b), n);
                        let outer = self.bracket_of(&inner, &basis(c));
                        for (s, x) in sum.iter_mut().zip(outer) {
                            *s += x;
                        }
                    }
                    if sum.iter().any(|x| !x.is_zero()) {
                        out.push(((i, j, l), sum));
                    }
                }
            }
        }
        out
    }

    pub fn is_lie(&self) -> bool {
        self.jacobi_residual().is_empty()
    }

    /// `[g, [g, g]] = 0`.
    pub fn is_two_step(&self) -> bool {
        let images = self.bracket_images();
        (0..self.dim).all(|x| {
            let mut e = vec![Rational::zero(); self.dim];
            e[x] = Rational::one();
            images.iter().all(|v| self.bracket_of(&e, v).iter().all(Zero::is_zero))
        })
    }

    /// Structure constants in the basis `y_i = Σ_p s[p][i] e_p`, i.e.
    /// `s⁻¹ · μ(s·, s·)`. `s_inv` must be the inverse of `s`. Returns the nonzero
    /// brackets `[y_i, y_j]`, `i < j`, as dense vectors in the `y` basis.
    pub fn substituted_constants<F: Field>(&self, s: &Matrix<F>, s_inv: &Matrix<F>) -> BTreeMap<(usize, usize), Vec<F>> {
        let n = self.dim;
        let consts: Vec<((usize, usize), Vec<(usize, F)>)> = self
            .brackets
            .iter()
            .map(|(&pq, v)| (pq, v.iter().map(|(&k, c)| (k, F::from_rational(c))).collect()))
            .collect();
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![F::zero(); n];
                let mut any = false;
                for ((p, q), vec) in &consts {
                    let w = s[(*p, i)].clone() * s[(*q, j)].clone() - s[(*q, i)].clone() * s[(*p, j)].clone();
                    if w.is_zero() {
                        continue;
                    }
                    any = true;
                    for (k, c) in vec {
                        v[*k] = v[*k].clone() + w.clone() * c.clone();
                    }
                }
                if !any {
                    continue;
                }
                let w = s_inv.mul_vec(&v);
                if w.iter().any(|x| !x.is_zero()) {
                    out.insert((i, j), w);
                }
            }
        }
        out
    }

    /// The transported product `g · μ = g μ(g⁻¹·, g⁻¹·)`.
    pub fn change_basis(&self, g: &BasisChange) -> Result<LieAlgebra> {
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: g.dim() });
        }
        let consts = self.substituted_constants(g.inverse(), g.matrix());
        Ok(Self::from_dense(self.name.clone(), self.dim, consts))
    }

    pub(crate) fn from_dense(name: String, dim: usize, consts: BTreeMap<(usize, usize), Vec<Rational>>) -> Self {
        let brackets = consts
            .into_iter()
            .map(|(k, v)| (k, v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect::<SparseVector>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        LieAlgebra { name, dim, brackets }
    }

    /// `self ⊕ other`; the brackets of `other` are shifted by `self.dim()`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let shift = self.dim;
        let mut brackets = self.brackets.clone();
        for (&(i, j), v) in &other.brackets {
            brackets.insert((i + shift, j + shift), v.iter().map(|(&k, c)| (k + shift, c.clone())).collect());
        }
        let name = match (self.dim, other.dim) {
            (_, 0) => self.name.clone(),
            (0, _) => other.name.clone(),
            _ => format!("{}+{}", self.name, other.name),
        };
        LieAlgebra { name, dim: self.dim + other.dim, brackets }
    }

    /// Pads with trailing abelian directions up to dimension `dim`.
    pub fn padded(&self, dim: usize) -> LieAlgebra {
        assert!(dim >= self.dim, "cannot pad to a smaller dimension");
        let mut out = self.clone();
        out.dim = dim;
        out
    }

    /// Does `m` carry `self` onto `other` exactly?
    pub fn is_isomorphic_via(&self, other: &LieAlgebra, m: &BasisChange) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(self.change_basis(m)?.same_constants(other))
    }
}

pub fn densify<F: Field>(v: &BTreeMap<usize, F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (&k, c) in v {
        out[k] = c.clone();
    }
    out
}

/// An invertible matrix `g`, acting on the basis by `g e_j = Σ_i g[i][j] e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    matrix: Matrix<Rational>,
    inverse: Matrix<Rational>,
}

impl BasisChange {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        let inverse = matrix.inverse().ok_or(Error::SingularMatrix)?;
        Ok(BasisChange { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        BasisChange { matrix: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    /// `g e_j = e_{perm[j]}` (0-based).
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = Matrix::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i + 1, dim: n });
            }
            m[(i, j)] = Rational::one();
        }
        Self::new(m)
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        let n = entries.len();
        Self::new(Matrix::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { Rational::zero() }))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix<Rational> {
        &self.inverse
    }

    pub fn inverted(&self) -> BasisChange {
        BasisChange { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BasisChange) -> BasisChange {
        BasisChange { matrix: self.matrix.mul(&other.matrix), inverse: other.inverse.mul(&self.inverse) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn heisenberg8() -> LieAlgebra {
        LieAlgebra::from_unit_brackets("n3_1", 8, &[(2, 3, 1)]).unwrap()
    }

    #[test]
    fn jacobi_violation_is_reported() {
        let mut a = LieAlgebra::new("bad", 3);
        a.add_to_bracket(0, 1, 2, int(1)).unwrap();
        a.add_to_bracket(0, 2, 0, int(1)).unwrap();
        let res = a.jacobi_residual();
        assert_eq!(res, vec![((0, 1, 2), vec![int(0), int(0), int(-1)])]);
    }

    #[test]
    fn two_step_detection() {
        assert!(heisenberg8().is_two_step());
        assert!(LieAlgebra::abelian(8).is_two_step());
        let three = LieAlgebra::from_unit_brackets("f4", 4, &[(1, 2, 3), (1, 3, 4)]).unwrap();
        assert!(three.is_lie());
        assert!(!three.is_two_step());
    }

    #[test]
    fn self_bracket_and_duplicates_rejected() {
        let mut a = LieAlgebra::new("x", 8);
        assert_eq!(a.insert_bracket(0, 0, SparseVector::from([(1, int(1))])), Err(Error::SelfBracket(1)));
        a.insert_bracket(1, 2, SparseVector::from([(0, int(1))])).unwrap();
        assert_eq!(a.insert_bracket(2, 1, SparseVector::from([(0, int(1))])), Err(Error::DuplicateBracket(2, 3)));
        assert!(matches!(a.insert_bracket(1, 9, SparseVector::new()), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn scaling_by_two_halves_the_bracket() {
        let g = BasisChange::diagonal(&vec![int(2); 8]).unwrap();
        let b = heisenberg8().change_basis(&g).unwrap();
        assert_eq!(b.constant(1, 2, 0), frac(1, 2));
        assert_eq!(b.bracket_count(), 1);
    }

    #[test]
    fn swapping_e1_e3() {
        let mut perm: Vec<usize> = (0..8).collect();
        perm.swap(0, 2);
        let g = BasisChange::permutation(&perm).unwrap();
        let b = heisenberg8().change_basis(&g).unwrap();
        assert_eq!(b.constant(0, 1, 2), int(-1));
        assert_eq!(b.bracket_count(), 1);
    }

    #[test]
    fn identity_and_inverse_round_trip() {
        let a = LieAlgebra::from_unit_brackets("N5_8_2", 8, &[(1, 2, 7), (3, 4, 7), (5, 6, 7), (2, 3, 8), (4, 5, 8)]).unwrap();
        assert!(a.change_basis(&BasisChange::identity(8)).unwrap().same_constants(&a));
        let m = Matrix::from_fn(8, 8, |r, c| if r == c { int(1) } else if c == r + 1 { int(r as i64 - 3) } else { int(0) });
        let g = BasisChange::new(m).unwrap();
        let back = a.change_basis(&g).unwrap().change_basis(&g.inverted()).unwrap();
        assert!(back.same_constants(&a));
    }

    #[test]
    fn direct_sums() {
        let h3 = LieAlgebra::from_unit_brackets("n3_1", 3, &[(2, 3, 1)]).unwrap();
        let sum = h3.direct_sum(&h3).direct_sum(&LieAlgebra::abelian(2));
        let expected = LieAlgebra::from_unit_brackets("n3_1+n3_1", 8, &[(2, 3, 1), (5, 6, 4)]).unwrap();
        assert!(sum.same_constants(&expected));
        assert!(h3.direct_sum(&LieAlgebra::abelian(0)).same_constants(&h3));
        assert!(LieAlgebra::abelian(3).direct_sum(&LieAlgebra::abelian(5)).same_constants(&LieAlgebra::abelian(8)));
    }

    #[test]
    fn isomorphic_via_dimension_mismatch() {
        let a = heisenberg8();
        assert!(a.is_isomorphic_via(&a, &BasisChange::identity(8)).unwrap());
        assert!(!a.is_isomorphic_via(&LieAlgebra::abelian(8), &BasisChange::identity(8)).unwrap());
        assert!(a.is_isomorphic_via(&LieAlgebra::abelian(7), &BasisChange::identity(8)).is_err());
    }
}
