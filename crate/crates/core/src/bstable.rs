//! Four closed subsets `S1`–`S4` of the variety of 8-dimensional brackets,
//! each cut out by linear conditions on the structure constants with a few
//! existentially quantified scalars, and a randomized test of their stability
//! under triangular changes of basis.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BasisChange, LieAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{Field, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetId {
    S1,
    S2,
    S3,
    S4,
}

impl SetId {
    pub const ALL: [SetId; 4] = [SetId::S1, SetId::S2, SetId::S3, SetId::S4];

    pub fn parse(s: &str) -> Option<SetId> {
        match s {
            "S1" | "s1" => Some(SetId::S1),
            "S2" | "s2" => Some(SetId::S2),
            "S3" | "s3" => Some(SetId::S3),
            "S4" | "s4" => Some(SetId::S4),
            _ => None,
        }
    }
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// How to read the second family of conditions defining `S2`: as printed,
/// `c_{rs}^8 = μ c_{r4}^6`, or as `c_{rs}^8 = μ c_{rs}^6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum S2Reading {
    #[default]
    Literal,
    Corrected,
}

/// Which triangular matrices the stability test draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Borel {
    /// `g[i][j] = 0` for `i > j`: `g e_j ∈ span(e_1, …, e_j)`.
    #[default]
    Upper,
    /// `g[i][j] = 0` for `i < j`: `g e_j ∈ span(e_j, …, e_n)`.
    Lower,
    /// Diagonal only.
    Diagonal,
}

/// Index triple `(i, j, k)` of `c_{ij}^k`, 0-based.
pub type Slot = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Zero(Slot),
    /// `c_lhs = param · c_rhs`.
    Proportional { lhs: Slot, param: usize, rhs: Slot },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BStableSet {
    pub id: SetId,
    pub reading: S2Reading,
    pub params: Vec<&'static str>,
    pub constraints: Vec<Constraint>,
}

fn slot(r: usize, s: usize, t: usize) -> Slot {
    (r - 1, s - 1, t - 1)
}

/// `c_{rs}^t = 0` for `s` in `s_range`, `1 ≤ r < s`, every `t`.
fn central_tail(out: &mut Vec<Constraint>, s_range: core::ops::RangeInclusive<usize>) {
    for s in s_range {
        for r in 1..s {
            for t in 1..=8 {
                out.push(Constraint::Zero(slot(r, s, t)));
            }
        }
    }
}

impl BStableSet {
    pub fn new(id: SetId, reading: S2Reading) -> Self {
        let mut c = Vec::new();
        let params: Vec<&'static str> = match id {
            SetId::S1 => {
                for r in 1..=5 {
                    c.push(Constraint::Zero(slot(r, 6, 7)));
                }
                central_tail(&mut c, 7..=8);
                vec![]
            }
            SetId::S2 => {
                for s in 4..=5 {
                    for r in 1..s {
                        c.push(Constraint::Proportional { lhs: slot(r, s, 7), param: 0, rhs: slot(r, s, 6) });
                        let rhs = match reading {
                            S2Reading::Literal => slot(r, 4, 6),
                            S2Reading::Corrected => slot(r, s, 6),
                        };
                        c.push(Constraint::Proportional { lhs: slot(r, s, 8), param: 1, rhs });
                    }
                }
                central_tail(&mut c, 6..=8);
                vec!["lambda", "mu"]
            }
            SetId::S3 => {
                for s in 3..=5 {
                    for r in 1..s {
                        c.push(Constraint::Zero(slot(r, s, 6)));
                    }
                }
                for r in 1..=4 {
                    c.push(Constraint::Proportional { lhs: slot(r, 5, 8), param: 0, rhs: slot(r, 5, 7) });
                }
                for r in 1..=3 {
                    c.push(Constraint::Proportional { lhs: slot(r, 5, 7), param: r, rhs: slot(4, 5, 7) });
                }
                central_tail(&mut c, 6..=8);
                vec!["lambda", "mu1", "mu2", "mu3"]
            }
            SetId::S4 => {
                for s in 3..=5 {
                    for r in 1..s {
                        c.push(Constraint::Zero(slot(r, s, 6)));
                    }
                }
                for s in 3..=5 {
                    for r in 2..s {
                        c.push(Constraint::Zero(slot(r, s, 7)));
                    }
                }
                for r in 4..=5 {
                    c.push(Constraint::Zero(slot(1, r, 7)));
                }
                for r in 1..=3 {
                    c.push(Constraint::Proportional { lhs: slot(r, 5, 8), param: r - 1, rhs: slot(4, 5, 8) });
                }
                central_tail(&mut c, 6..=8);
                vec!["mu1", "mu2", "mu3"]
            }
        };
        BStableSet { id, reading, params, constraints: c }
    }

    /// Values of the scalars making every condition hold for the given
    /// presentation of `a`, or `None`. Unconstrained scalars are set to 0.
    pub fn membership(&self, a: &LieAlgebra) -> Option<Vec<Rational>> {
        if a.dim() != 8 {
            return None;
        }
        let p = self.params.len();
        let c = |(i, j, k): Slot| a.constant(i, j, k);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for con in &self.constraints {
            match con {
                Constraint::Zero(s) => {
                    if !c(*s).is_zero() {
                        return None;
                    }
                }
                Constraint::Proportional { lhs, param, rhs: r } => {
                    let mut row = vec![Rational::zero(); p];
                    row[*param] = c(*r);
                    rows.push(row);
                    rhs.push(c(*lhs));
                }
            }
        }
        if p == 0 || rows.is_empty() {
            return Some(vec![Rational::zero(); p]);
        }
        let m = Matrix::from_rows(rows).expect("rows have equal length");
        m.solve(&rhs)
    }

    /// Whether `values` satisfy every condition exactly.
    pub fn satisfied_by(&self, a: &LieAlgebra, values: &[Rational]) -> bool {
        self.constraints.iter().all(|con| match con {
            Constraint::Zero((i, j, k)) => a.constant(*i, *j, *k).is_zero(),
            Constraint::Proportional { lhs, param, rhs } => {
                a.constant(lhs.0, lhs.1, lhs.2) == values[*param].clone() * a.constant(rhs.0, rhs.1, rhs.2)
            }
        })
    }

    pub fn describe(&self) -> Vec<String> {
        let fmt_slot = |(i, j, k): &Slot| format!("c_{}{}^{}", i + 1, j + 1, k + 1);
        self.constraints
            .iter()
            .map(|c| match c {
                Constraint::Zero(s) => format!("{} = 0", fmt_slot(s)),
                Constraint::Proportional { lhs, param, rhs } => {
                    format!("{} = {} {}", fmt_slot(lhs), self.params[*param], fmt_slot(rhs))
                }
            })
            .collect()
    }
}

/// Random invertible triangular matrix with entries of height ≤ 2 and a
/// nonzero diagonal from `±1, ±2, ±3`.
pub fn random_triangular(rng: &mut impl Rng, n: usize, borel: Borel) -> BasisChange {
    const DIAG: [i64; 6] = [1, -1, 2, -2, 3, -3];
    let m = Matrix::from_fn(n, n, |r, c| {
        let keep = match borel {
            Borel::Upper => r < c,
            Borel::Lower => r > c,
            Borel::Diagonal => false,
        };
        if r == c {
            Rational::from_i64(DIAG[rng.gen_range(0..DIAG.len())])
        } else if keep {
            Rational::from_i64(rng.gen_range(-2..=2))
        } else {
            Rational::zero()
        }
    });
    BasisChange::new(m).expect("triangular with nonzero diagonal")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub trial_seed: u64,
    pub matrix: Matrix<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzReport {
    pub set: SetId,
    pub reading: S2Reading,
    pub borel: Borel,
    pub algebra: String,
    pub seed: u64,
    pub trials: usize,
    /// False if the algebra is not in the set to begin with; no trials run.
    pub base_member: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.base_member && self.counterexamples.is_empty()
    }
}

/// Moves `a` by `trials` random elements of the chosen Borel subgroup and
/// records every move that leaves the set. Trial `i` uses its own seed, the
/// `i`-th output of a generator seeded with `seed`.
pub fn fuzz(set: &BStableSet, a: &LieAlgebra, trials: usize, seed: u64, borel: Borel) -> FuzzReport {
    let mut report = FuzzReport {
        set: set.id,
        reading: set.reading,
        borel,
        algebra: a.name().into(),
        seed,
        trials,
        base_member: set.membership(a).is_some(),
        counterexamples: Vec::new(),
    };
    if !report.base_member {
        return report;
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let trial_seed = master.next_u64();
        let g = random_triangular(&mut ChaCha8Rng::seed_from_u64(trial_seed), a.dim(), borel);
        let moved = a.change_basis(&g).expect("dimensions agree");
        if set.membership(&moved).is_none() {
            report.counterexamples.push(Counterexample { trial, trial_seed, matrix: g.matrix().clone() });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(e: &[(usize, usize, usize)]) -> LieAlgebra {
        LieAlgebra::from_unit_brackets("x", 8, e).unwrap()
    }

    #[test]
    fn constraint_counts() {
        // S1: 5 + (6 + 7)·8 conditions.
        assert_eq!(BStableSet::new(SetId::S1, S2Reading::Literal).constraints.len(), 5 + 13 * 8);
        assert_eq!(BStableSet::new(SetId::S4, S2Reading::Literal).params.len(), 3);
    }

    #[test]
    fn abelian_is_in_every_set() {
        for id in SetId::ALL {
            let s = BStableSet::new(id, S2Reading::Literal);
            let v = s.membership(&LieAlgebra::abelian(8)).unwrap();
            assert!(s.satisfied_by(&LieAlgebra::abelian(8), &v));
        }
    }

    #[test]
    fn central_top_is_required() {
        let s = BStableSet::new(SetId::S1, S2Reading::Literal);
        assert!(s.membership(&alg(&[(1, 2, 7)])).is_some());
        assert!(s.membership(&alg(&[(1, 7, 8)])).is_none());
        assert!(s.membership(&alg(&[(3, 6, 7)])).is_none());
    }

    #[test]
    fn proportional_parameters_are_solved() {
        let mut a = alg(&[(1, 4, 6), (2, 5, 6)]);
        a.add_to_bracket(0, 3, 6, Rational::from_i64(3)).unwrap();
        a.add_to_bracket(1, 4, 6, Rational::from_i64(3)).unwrap();
        let s = BStableSet::new(SetId::S2, S2Reading::Corrected);
        let v = s.membership(&a).unwrap();
        assert_eq!(v[0], Rational::from_i64(3));
        assert_eq!(v[1], Rational::from_i64(0));
        assert!(s.satisfied_by(&a, &v));
    }

    #[test]
    fn identity_and_diagonal_trials() {
        let a = alg(&[(1, 2, 6), (4, 5, 6), (2, 3, 7), (1, 3, 8)]);
        let s = BStableSet::new(SetId::S2, S2Reading::Literal);
        assert!(s.membership(&a.change_basis(&BasisChange::identity(8)).unwrap()).is_some());
        assert!(fuzz(&s, &a, 20, 3, Borel::Diagonal).passed());
    }

    #[test]
    fn fuzz_is_deterministic() {
        let a = alg(&[(1, 2, 7), (4, 5, 7), (3, 4, 8), (5, 6, 8)]);
        let s = BStableSet::new(SetId::S1, S2Reading::Literal);
        assert_eq!(fuzz(&s, &a, 10, 9, Borel::Upper), fuzz(&s, &a, 10, 9, Borel::Upper));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_triangular(&mut rng, 8, Borel::Upper).matrix().is_upper_triangular());
        assert!(random_triangular(&mut rng, 8, Borel::Lower).matrix().is_lower_triangular());
    }
}
