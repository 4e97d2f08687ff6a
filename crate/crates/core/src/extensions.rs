//! Alternating 2-cocycles with values in a trivial module `ℚ^r` and the
//! central extensions they define.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{densify, LieAlgebra, SparseVector};
use crate::error::{Error, Result};
use crate::invariants::center;
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::subspace::Subspace;

/// `b(e_i, e_j) = Σ_s b_{ij}^s z_s`, stored for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    dim: usize,
    rank: usize,
    values: BTreeMap<(usize, usize), SparseVector>,
}

impl Cocycle {
    pub fn zero(dim: usize, rank: usize) -> Self {
        Cocycle { dim, rank, values: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds `c·z_s` to `b(e_i, e_j)` (0-based indices).
    pub fn add(&mut self, i: usize, j: usize, s: usize, c: Rational) -> Result<()> {
        for (idx, bound) in [(i, self.dim), (j, self.dim), (s, self.rank)] {
            if idx >= bound {
                return Err(Error::IndexOutOfRange { index: idx + 1, dim: bound });
            }
        }
        if i == j {
            return Err(Error::SelfBracket(i + 1));
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let entry = self.values.entry(key).or_default();
        let slot = entry.entry(s).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            entry.remove(&s);
        }
        if entry.is_empty() {
            self.values.remove(&key);
        }
        Ok(())
    }

    /// `b(e_i, e_j)` as a dense vector of length `rank`.
    pub fn value(&self, i: usize, j: usize) -> Vec<Rational> {
        let v = if i < j {
            self.values.get(&(i, j)).map(|v| densify(v, self.rank))
        } else if i > j {
            self.values.get(&(j, i)).map(|v| densify(v, self.rank).into_iter().map(|x| -x).collect())
        } else {
            None
        };
        v.unwrap_or_else(|| vec![Rational::zero(); self.rank])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVector)> {
        self.values.iter()
    }

    /// `b(x, e_j)` for a dense vector `x`.
    fn eval_left(&self, x: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rank];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() || i == j {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.value(i, j)) {
                *o += xi * v;
            }
        }
        out
    }

    /// The coboundary `b(x, y) = f([x, y])` of a linear map `f: g → ℚ^r`,
    /// given as an `r × n` matrix.
    pub fn coboundary(g: &LieAlgebra, f: &Matrix<Rational>) -> Result<Cocycle> {
        if f.cols() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: f.cols() });
        }
        let mut b = Cocycle::zero(g.dim(), f.rows());
        for (&(i, j), v) in g.brackets() {
            let image = f.mul_vec(&densify(v, g.dim()));
            for (s, c) in image.into_iter().enumerate() {
                if !c.is_zero() {
                    b.add(i, j, s, c)?;
                }
            }
        }
        Ok(b)
    }
}

/// Triples `(i, j, l)`, `i < j < l`, where
/// `b([e_i,e_j],e_l) + b([e_j,e_l],e_i) + b([e_l,e_i],e_j) ≠ 0`.
pub fn cocycle_violations(g: &LieAlgebra, b: &Cocycle) -> Result<Vec<(usize, usize, usize)>> {
    let n = g.dim();
    if b.dim != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.dim });
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let mut sum = vec![Rational::zero(); b.rank];
                for (x, y, z) in [(i, j, l), (j, l, i), (l, i, j)] {
                    let br = densify(&g.bracket(x, y), n);
                    for (acc, v) in sum.iter_mut().zip(b.eval_left(&br, z)) {
                        *acc += v;
                    }
                }
                if sum.iter().any(|x| !x.is_zero()) {
                    out.push((i, j, l));
                }
            }
        }
    }
    Ok(out)
}

pub fn cocycle_check(g: &LieAlgebra, b: &Cocycle) -> Result<bool> {
    Ok(cocycle_violations(g, b)?.is_empty())
}

/// Radical `{x : b(x, y) = 0 for all y}` of `b`.
pub fn perp(b: &Cocycle) -> Subspace {
    let n = b.dim;
    // Row (y, s): x ↦ b(x, e_y)_s.
    let m = Matrix::from_fn(n * b.rank, n, |row, x| b.value(x, row / b.rank)[row % b.rank].clone());
    if b.rank == 0 {
        return Subspace::full(n);
    }
    Subspace::kernel_of(&m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerpReport {
    /// `b⊥ ∩ z(g) = 0`.
    pub holds: bool,
    pub perp: Subspace,
    pub intersection: Subspace,
}

pub fn perp_center_condition(g: &LieAlgebra, b: &Cocycle) -> Result<PerpReport> {
    if b.dim != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: b.dim });
    }
    let p = perp(b);
    let intersection = p.intersection(&center(g));
    Ok(PerpReport { holds: intersection.is_zero(), perp: p, intersection })
}

/// `g ⊕ ℚ^r` with bracket `[x, y] + b(x, y)`; the new basis vectors
/// `e_{n+1}, …, e_{n+r}` are central.
pub fn central_extension(g: &LieAlgebra, b: &Cocycle) -> Result<LieAlgebra> {
    if let Some(&(i, j, l)) = cocycle_violations(g, b)?.first() {
        return Err(Error::NotCocycle(i + 1, j + 1, l + 1));
    }
    let n = g.dim();
    let mut out = g.padded(n + b.rank).with_name(format!("{}(b)", g.name()));
    for (&(i, j), v) in &b.values {
        for (&s, c) in v {
            out.add_to_bracket(i, j, n + s, c.clone())?;
        }
    }
    debug_assert!(out.is_lie());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use num_traits::One;

    fn unit(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    }

    /// h3 ⊕ ℚ³ with [e1,e2] = e3.
    fn h3_plus() -> LieAlgebra {
        LieAlgebra::from_unit_brackets("h3+C3", 6, &[(1, 2, 3)]).unwrap()
    }

    fn cocycle(rank: usize, e: &[(usize, usize, usize)]) -> Cocycle {
        let mut b = Cocycle::zero(6, rank);
        for &(i, j, s) in e {
            b.add(i - 1, j - 1, s - 1, int(1)).unwrap();
        }
        b
    }

    #[test]
    fn b0_extension() {
        let b0 = cocycle(2, &[(1, 4, 1), (5, 6, 2)]);
        assert!(cocycle_check(&h3_plus(), &b0).unwrap());
        let ext = central_extension(&h3_plus(), &b0).unwrap();
        let expected = LieAlgebra::from_unit_brackets("x", 8, &[(1, 2, 3), (1, 4, 7), (5, 6, 8)]).unwrap();
        assert!(ext.same_constants(&expected));
        let report = perp_center_condition(&h3_plus(), &b0).unwrap();
        assert!(!report.holds);
        assert_eq!(report.intersection, Subspace::span(6, &[unit(6, 2)]));
    }

    #[test]
    fn non_cocycle() {
        let b = cocycle(1, &[(3, 4, 1)]);
        assert_eq!(cocycle_violations(&h3_plus(), &b).unwrap(), alloc::vec![(0, 1, 3)]);
        assert_eq!(central_extension(&h3_plus(), &b), Err(Error::NotCocycle(1, 2, 4)));
    }

    #[test]
    fn zero_cocycle() {
        let h = LieAlgebra::from_unit_brackets("n3_1", 3, &[(2, 3, 1)]).unwrap();
        let z = Cocycle::zero(3, 1);
        assert!(cocycle_check(&h, &z).unwrap());
        let ext = central_extension(&h, &z).unwrap();
        assert!(ext.same_constants(&h.direct_sum(&LieAlgebra::abelian(1))));
        let rep = perp_center_condition(&h, &z).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.perp, Subspace::full(3));
    }

    #[test]
    fn coboundary_is_cocycle() {
        let g = LieAlgebra::from_unit_brackets("f", 5, &[(1, 2, 3), (1, 3, 4), (2, 3, 5), (1, 4, 5)]).unwrap();
        assert!(g.is_lie());
        let f = Matrix::from_fn(2, 5, |r, c| int((r * 5 + c) as i64 - 4));
        let b = Cocycle::coboundary(&g, &f).unwrap();
        assert!(cocycle_check(&g, &b).unwrap());
        assert!(central_extension(&g, &b).unwrap().is_lie());
    }

    #[test]
    fn dimension_mismatch() {
        let b = Cocycle::zero(5, 1);
        assert!(matches!(cocycle_check(&h3_plus(), &b), Err(Error::DimensionMismatch { .. })));
        assert!(Cocycle::zero(3, 1).add(0, 3, 0, int(1)).is_err());
    }
}
