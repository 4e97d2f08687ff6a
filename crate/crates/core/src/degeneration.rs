//! One-parameter degenerations `g_t · μ → μ'` as `t → 0`.
//!
//! A witness is a matrix over `ℚ(t)`. With [`Orientation::Substitution`] its
//! columns are new basis vectors `y_i = Σ_j m_ji(t) e_j` and the bracket is
//! rewritten in the `y` basis. With [`Orientation::Operator`] the matrix is the
//! operator `g_t` and the curve is `g_t μ(g_t⁻¹·, g_t⁻¹·)`; this is the
//! substitution by `g_t⁻¹`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{BasisChange, LieAlgebra};
use crate::catalog::{Catalog, ProfileTable};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::obstructions::{profile_violations, ObstructionReason};
use crate::ratfunc::RatFunc;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Substitution,
    Operator,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Published,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationWitness {
    pub source: String,
    pub target: String,
    pub orientation: Orientation,
    pub provenance: Provenance,
    matrix: Matrix<RatFunc>,
    /// Substitution matrix over ℚ taking the limit to the target's
    /// presentation: the limit rewritten in the basis given by its columns
    /// must equal the target.
    postiso: Option<Matrix<Rational>>,
}

impl DegenerationWitness {
    pub fn new(
        source: impl Into<String>,
        target: impl Into<String>,
        orientation: Orientation,
        provenance: Provenance,
        matrix: Matrix<RatFunc>,
    ) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        if matrix.determinant().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(DegenerationWitness { source: source.into(), target: target.into(), orientation, provenance, matrix, postiso: None })
    }

    pub fn with_postiso(mut self, p: Matrix<Rational>) -> Result<Self> {
        if p.rows() != self.dim() || p.cols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: p.rows() });
        }
        if p.inverse().is_none() {
            return Err(Error::SingularMatrix);
        }
        self.postiso = Some(p);
        Ok(self)
    }

    /// The operator `t⁻¹·I`, which contracts every bracket to zero.
    pub fn universal_abelian(source: impl Into<String>, n: usize) -> Self {
        let m = Matrix::from_fn(n, n, |r, c| if r == c { RatFunc::monomial(Rational::one(), -1) } else { RatFunc::zero() });
        DegenerationWitness {
            source: source.into(),
            target: format!("A{n}"),
            orientation: Orientation::Operator,
            provenance: Provenance::Derived,
            matrix: m,
            postiso: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.matrix
    }

    pub fn postiso(&self) -> Option<&Matrix<Rational>> {
        self.postiso.as_ref()
    }

    /// The matrix in substitution form.
    pub fn substitution_matrix(&self) -> Matrix<RatFunc> {
        match self.orientation {
            Orientation::Substitution => self.matrix.clone(),
            Orientation::Operator => self.matrix.inverse().expect("witness matrices are invertible"),
        }
    }

    /// The witness at a specific parameter value, as an operator on the basis.
    /// `None` if `t0` hits a pole or a zero of the determinant.
    pub fn operator_at(&self, t0: &Rational) -> Option<BasisChange> {
        let n = self.dim();
        let mut vals = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                vals[(r, c)] = self.matrix[(r, c)].eval(t0)?;
            }
        }
        let b = BasisChange::new(vals).ok()?;
        Some(match self.orientation {
            Orientation::Operator => b,
            Orientation::Substitution => b.inverted(),
        })
    }
}

/// Constants of the source bracket along the curve, in the new basis.
pub fn transformed_constants(a: &LieAlgebra, w: &DegenerationWitness) -> Result<BTreeMap<(usize, usize), Vec<RatFunc>>> {
    if a.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: w.dim() });
    }
    let s = w.substitution_matrix();
    let s_inv = s.inverse().ok_or(Error::SingularMatrix)?;
    Ok(a.substituted_constants(&s, &s_inv))
}

/// The algebra at `t = 0`; fails if any constant has a pole there.
pub fn limit(a: &LieAlgebra, w: &DegenerationWitness) -> Result<LieAlgebra> {
    let consts = transformed_constants(a, w)?;
    let mut out = BTreeMap::new();
    for ((i, j), v) in consts {
        let mut vals = Vec::with_capacity(v.len());
        for (k, f) in v.iter().enumerate() {
            let val = f.value_at_zero().ok_or_else(|| Error::PoleAtZero { i: i + 1, j: j + 1, k: k + 1, value: f.to_string() })?;
            vals.push(val);
        }
        out.insert((i, j), vals);
    }
    let lim = LieAlgebra::from_dense(format!("lim {}", w.source), a.dim(), out);
    if !lim.is_lie() {
        return Err(Error::NotLie(lim.name().into()));
    }
    Ok(lim)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Brackets `(i, j)` (0-based) where the aligned limit and target differ.
    Mismatch(Vec<(usize, usize)>),
    Pole { i: usize, j: usize, k: usize, value: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub source: String,
    pub target: String,
    pub outcome: Outcome,
    /// Limit in the witness basis, when it exists.
    pub limit: Option<LieAlgebra>,
    /// Limit after the post-isomorphism.
    pub aligned: Option<LieAlgebra>,
    /// Monotonicity relations that fail between source and target profiles.
    /// Nonempty on a passing witness means an inconsistency somewhere.
    pub sanity: Vec<ObstructionReason>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Checks that the limit of `w` equals the target's catalog constants. The
/// monotonicity relations between the two profiles are checked on success.
pub fn verify_degeneration(w: &DegenerationWitness, catalog: &Catalog, profiles: &ProfileTable) -> Result<VerificationReport> {
    let source = catalog.algebra(&w.source)?;
    let target = catalog.algebra(&w.target)?;
    let mut report = VerificationReport {
        source: w.source.clone(),
        target: w.target.clone(),
        outcome: Outcome::Pass,
        limit: None,
        aligned: None,
        sanity: Vec::new(),
    };
    let lim = match limit(source, w) {
        Ok(l) => l,
        Err(Error::PoleAtZero { i, j, k, value }) => {
            report.outcome = Outcome::Pole { i, j, k, value };
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let aligned = match w.postiso() {
        Some(p) => {
            let inv = p.inverse().ok_or(Error::SingularMatrix)?;
            LieAlgebra::from_dense(lim.name().into(), lim.dim(), lim.substituted_constants(p, &inv))
        }
        None => lim.clone(),
    };
    let differing = aligned.differing_brackets(target);
    if aligned.dim() != target.dim() {
        return Err(Error::DimensionMismatch { expected: target.dim(), found: aligned.dim() });
    }
    if !differing.is_empty() {
        report.outcome = Outcome::Mismatch(differing);
    } else {
        let g = profiles.get(&w.source).ok_or_else(|| Error::UnknownAlgebra(w.source.clone()))?;
        let h = profiles.get(&w.target).ok_or_else(|| Error::UnknownAlgebra(w.target.clone()))?;
        if w.source != w.target {
            report.sanity = profile_violations(g, h);
        }
    }
    report.limit = Some(lim);
    report.aligned = Some(aligned);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn h3() -> LieAlgebra {
        LieAlgebra::from_unit_brackets("n3_1", 3, &[(2, 3, 1)]).unwrap()
    }

    fn diag(entries: &[RatFunc], orientation: Orientation) -> DegenerationWitness {
        let n = entries.len();
        let m = Matrix::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { RatFunc::zero() });
        DegenerationWitness::new("n3_1", "A3", orientation, Provenance::Derived, m).unwrap()
    }

    #[test]
    fn inverse_t_operator_contracts() {
        let w = DegenerationWitness::universal_abelian("n3_1", 3);
        let c = transformed_constants(&h3(), &w).unwrap();
        assert_eq!(c[&(1, 2)], alloc::vec![RatFunc::t(), RatFunc::zero(), RatFunc::zero()]);
        assert!(limit(&h3(), &w).unwrap().is_abelian());
    }

    #[test]
    fn scaling_e1_by_t_is_a_pole() {
        let one = RatFunc::one();
        let w = diag(&[RatFunc::t(), one.clone(), one], Orientation::Substitution);
        let err = limit(&h3(), &w).unwrap_err();
        assert_eq!(err, Error::PoleAtZero { i: 2, j: 3, k: 1, value: "(1)/(t)".into() });
    }

    #[test]
    fn the_two_orientations_are_inverse() {
        let t = RatFunc::t();
        let a = diag(&[t.clone(), t.clone(), RatFunc::one()], Orientation::Substitution);
        let tinv = RatFunc::monomial(int(1), -1);
        let b = diag(&[tinv.clone(), tinv, RatFunc::one()], Orientation::Operator);
        assert_eq!(transformed_constants(&h3(), &a).unwrap(), transformed_constants(&h3(), &b).unwrap());
    }

    #[test]
    fn singular_witness_rejected() {
        let m = Matrix::from_fn(2, 2, |r, _| if r == 0 { RatFunc::t() } else { RatFunc::zero() });
        assert_eq!(
            DegenerationWitness::new("a", "b", Orientation::Substitution, Provenance::Derived, m),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn operator_at_matches_curve() {
        let w = DegenerationWitness::universal_abelian("n3_1", 3);
        let g = w.operator_at(&int(2)).unwrap();
        let moved = h3().change_basis(&g).unwrap();
        assert_eq!(moved.constant(1, 2, 0), int(2));
        assert!(w.operator_at(&int(0)).is_none());
    }
}
