//! Invariants that can only move one way along a degeneration: orbit
//! dimension, center, derived algebra, trivial cohomology and the largest
//! dimension of an abelian subalgebra.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::ideal::{has_common_zero, Polynomial};
use crate::linalg::Matrix;
use crate::scalar::{Field, Gaussian, Rational};
use crate::subspace::Subspace;

pub fn center(a: &LieAlgebra) -> Subspace {
    let n = a.dim();
    // Row (y, k) of the stacked adjoint maps: x ↦ c_{xy}^k.
    let m = Matrix::from_fn(n * n, n, |row, x| a.constant(x, row / n, row % n));
    Subspace::kernel_of(&m)
}

pub fn derived(a: &LieAlgebra) -> Subspace {
    Subspace::span(a.dim(), &a.bracket_images())
}

/// Lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...` down to zero.
pub fn lower_central_series(a: &LieAlgebra) -> Vec<Subspace> {
    let n = a.dim();
    let mut series = vec![Subspace::full(n)];
    loop {
        let last = series.last().expect("series is never empty");
        if last.is_zero() {
            break;
        }
        let mut images = Vec::new();
        for x in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[x] = Rational::one();
            for v in last.basis() {
                images.push(a.bracket_of(&e, &v));
            }
        }
        let next = Subspace::span(n, &images);
        if next == *last {
            break;
        }
        series.push(next);
    }
    series
}

/// Length of the lower central series; 0 for the zero algebra, 1 for abelian
/// ones. Returns `None` if the algebra is not nilpotent.
pub fn nilpotency_class(a: &LieAlgebra) -> Option<usize> {
    let series = lower_central_series(a);
    if series.last().is_some_and(Subspace::is_zero) {
        Some(series.len() - 1)
    } else {
        None
    }
}

/// Matrix of the linear system `D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]` in the
/// unknowns `D_{pq}` (column `p·n + q`, where `D e_q = Σ_p D_{pq} e_p`).
pub fn derivation_system(a: &LieAlgebra) -> Matrix<Rational> {
    let n = a.dim();
    let var = |p: usize, q: usize| p * n + q;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let bij = a.bracket(i, j);
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for (&r, c) in &bij {
                    row[var(k, r)] += c;
                }
                for p in 0..n {
                    let c1 = a.constant(p, j, k);
                    if !c1.is_zero() {
                        row[var(p, i)] -= c1;
                    }
                    let c2 = a.constant(i, p, k);
                    if !c2.is_zero() {
                        row[var(p, j)] -= c2;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, n * n);
    }
    Matrix::from_rows(rows).expect("rows have equal length")
}

pub fn derivation_dim(a: &LieAlgebra) -> usize {
    let n = a.dim();
    n * n - derivation_system(a).rank()
}

/// `n² − dim Der(g)`, the dimension of the orbit under change of basis.
pub fn orbit_dim(a: &LieAlgebra) -> usize {
    let n = a.dim();
    n * n - derivation_dim(a)
}

/// Coboundary matrix `d_k : C^k → C^{k+1}` on alternating forms with trivial
/// coefficients. Rows and columns follow the lexicographic order of index
/// subsets.
pub fn ce_differential(a: &LieAlgebra, k: usize) -> Result<Matrix<Rational>> {
    let n = a.dim();
    if k > n {
        return Err(Error::DegreeOutOfRange { k, dim: n });
    }
    let domain: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let codomain: Vec<Vec<usize>> = if k < n { (0..n).combinations(k + 1).collect() } else { Vec::new() };
    let index: BTreeMap<&[usize], usize> = domain.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut m: Matrix<Rational> = Matrix::zeros(codomain.len(), domain.len());
    for (row, s) in codomain.iter().enumerate() {
        for a_pos in 0..s.len() {
            for b_pos in a_pos + 1..s.len() {
                let bracket = a.bracket(s[a_pos], s[b_pos]);
                if bracket.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = s.iter().enumerate().filter(|&(p, _)| p != a_pos && p != b_pos).map(|(_, &x)| x).collect();
                let outer_sign = if (a_pos + b_pos) % 2 == 0 { 1 } else { -1 };
                for (&r, c) in &bracket {
                    if rest.contains(&r) {
                        continue;
                    }
                    // ω(e_r, e_rest) = ± ω(sorted subset), sign from moving e_r into place.
                    let shift = rest.iter().filter(|&&x| x < r).count();
                    let sign = if shift % 2 == 0 { outer_sign } else { -outer_sign };
                    let mut key = rest.clone();
                    key.insert(shift, r);
                    let col = index[key.as_slice()];
                    let cur = m[(row, col)].clone();
                    m[(row, col)] = if sign > 0 { cur + c } else { cur - c };
                }
            }
        }
    }
    Ok(m)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Ranks of `d_0, …, d_n`.
fn differential_ranks(a: &LieAlgebra) -> Vec<usize> {
    (0..=a.dim()).map(|k| ce_differential(a, k).expect("degree in range").rank()).collect()
}

/// `dim H^k(g)` with trivial coefficients.
pub fn ce_betti(a: &LieAlgebra, k: usize) -> Result<usize> {
    let n = a.dim();
    if k > n {
        return Err(Error::DegreeOutOfRange { k, dim: n });
    }
    let rk = ce_differential(a, k)?.rank();
    let rk_prev = if k == 0 { 0 } else { ce_differential(a, k - 1)?.rank() };
    Ok(binomial(n, k) - rk - rk_prev)
}

/// All Betti numbers `dim H^0 … dim H^n`.
pub fn betti(a: &LieAlgebra) -> Vec<usize> {
    let n = a.dim();
    let ranks = differential_ranks(a);
    (0..=n).map(|k| binomial(n, k) - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] }).collect()
}

/// An integer known to lie in `lower..=upper`, with an optional subspace
/// realising the lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedValue<F = Rational> {
    pub lower: usize,
    pub upper: usize,
    pub witness: Option<Subspace<F>>,
}

impl<F> CertifiedValue<F> {
    pub fn is_certified(&self) -> bool {
        self.lower == self.upper
    }

    pub fn exact(&self) -> Option<usize> {
        self.is_certified().then_some(self.lower)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxAbelianConfig {
    /// Coefficients of search vectors range over `-height..=height` (real and
    /// imaginary parts separately for the Gaussian search).
    pub height: i64,
    /// Random combinations of the component forms tried for the upper bound.
    pub samples: usize,
    pub seed: u64,
    /// Quotients `g/z` of larger dimension only get a greedy lower bound and
    /// no exact upper-bound refinement.
    pub max_quotient_dim: usize,
    /// Reduction steps allowed per chart when proving that no isotropic
    /// subspace of a given dimension exists.
    pub elimination_budget: usize,
}

impl Default for MaxAbelianConfig {
    fn default() -> Self {
        MaxAbelianConfig { height: 2, samples: 50, seed: 0x6e69_6c76, max_quotient_dim: 6, elimination_budget: 200_000 }
    }
}

/// Data of the reduction to an isotropy problem on `g/z`.
struct Quotient {
    zdim: usize,
    center: Subspace,
    coords: Vec<usize>,
    forms: Vec<Matrix<Rational>>,
}

fn quotient_forms(a: &LieAlgebra) -> Result<Quotient> {
    if !a.is_two_step() {
        return Err(Error::NotTwoStep(a.name().into()));
    }
    let z = center(a);
    let coords = z.complement_coordinates();
    let m = coords.len();
    let n = a.dim();
    let flat: Vec<Vec<Rational>> = (0..n)
        .map(|k| (0..m * m).map(|idx| a.constant(coords[idx / m], coords[idx % m], k)).collect())
        .collect();
    let span = Subspace::span(m * m, &flat);
    let forms = span.basis().into_iter().map(|v| Matrix::from_fn(m, m, |r, c| v[r * m + c].clone())).collect();
    Ok(Quotient { zdim: z.dim(), center: z, coords, forms })
}

fn leading_index<F: Field>(v: &[F]) -> usize {
    v.iter().position(|x| !x.is_zero()).expect("search vectors are nonzero")
}

fn pair<F: Field>(form: &Matrix<F>, u: &[F], v: &[F]) -> F {
    let w = form.mul_vec(v);
    u.iter().zip(w).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
}

/// Largest set of pairwise orthogonal vectors in reduced echelon shape chosen
/// from `candidates` (each with leading entry 1). Stops once `target` is
/// reached; with `greedy` only the first branch is followed.
fn isotropic_search<F: Field>(forms: &[Matrix<F>], candidates: &[Vec<F>], target: usize, greedy: bool) -> Vec<Vec<F>> {
    let ortho = |u: &[F], v: &[F]| forms.iter().all(|f| pair(f, u, v).is_zero());
    let mut best: Vec<Vec<F>> = Vec::new();
    let mut chosen: Vec<Vec<F>> = Vec::new();
    let all: Vec<usize> = (0..candidates.len()).collect();
    dfs(candidates, &ortho, &all, &mut chosen, &mut best, target, greedy);
    best
}

fn dfs<F: Field>(
    cands: &[Vec<F>],
    ortho: &impl Fn(&[F], &[F]) -> bool,
    pool: &[usize],
    chosen: &mut Vec<Vec<F>>,
    best: &mut Vec<Vec<F>>,
    target: usize,
    greedy: bool,
) -> bool {
    if chosen.len() > best.len() {
        *best = chosen.clone();
        if best.len() >= target {
            return true;
        }
    }
    for (pos, &idx) in pool.iter().enumerate() {
        let v = &cands[idx];
        let p = leading_index(v);
        if chosen.iter().any(|b| !b[p].is_zero()) {
            continue;
        }
        let rest: Vec<usize> = pool[pos + 1..]
            .iter()
            .copied()
            .filter(|&j| {
                let w = &cands[j];
                leading_index(w) > p && w[p].is_zero() && ortho(v, w)
            })
            .collect();
        let reachable = rest.iter().map(|&j| leading_index(&cands[j])).dedup().count();
        if chosen.len() + 1 + reachable <= best.len() {
            continue;
        }
        chosen.push(v.clone());
        let done = dfs(cands, ortho, &rest, chosen, best, target, greedy);
        chosen.pop();
        if done || greedy {
            return done;
        }
    }
    false
}

/// Vectors of length `m` with entries from `values`, leading entry 1, sorted
/// by position of the leading entry.
fn echelon_candidates<F: Field>(m: usize, values: &[F]) -> Vec<Vec<F>> {
    let mut out = Vec::new();
    for p in 0..m {
        let mut partial = vec![vec![F::zero(); m]];
        partial[0][p] = F::one();
        for slot in p + 1..m {
            partial = partial
                .into_iter()
                .flat_map(|v| {
                    values.iter().map(move |x| {
                        let mut w = v.clone();
                        w[slot] = x.clone();
                        w
                    })
                })
                .collect();
        }
        // Sparse, small vectors first: they are the likeliest witnesses.
        partial.sort_by_cached_key(|v| {
            let support = v.iter().filter(|x| !x.is_zero()).count();
            let height = v.iter().map(|x| values.iter().position(|y| y == x).map_or(0, |i| i.abs_diff(values.len() / 2))).max();
            (support, height)
        });
        out.extend(partial);
    }
    out
}

fn upper_bound(q: &Quotient, cfg: &MaxAbelianConfig) -> usize {
    let m = q.coords.len();
    let mut best = m;
    let mut consider = |w: &Matrix<Rational>| {
        best = best.min(m - w.rank() / 2);
    };
    for f in &q.forms {
        consider(f);
    }
    if q.forms.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.samples {
            let lambdas: Vec<i64> = q.forms.iter().map(|_| rng.gen_range(-5..=5)).collect();
            if lambdas.iter().all(|&l| l == 0) {
                continue;
            }
            let mut w: Matrix<Rational> = Matrix::zeros(m, m);
            for (f, &l) in q.forms.iter().zip(&lambdas) {
                if l != 0 {
                    w = Matrix::from_fn(m, m, |r, c| w[(r, c)].clone() + f[(r, c)].clone() * Rational::from_i64(l));
                }
            }
            consider(&w);
        }
    }
    best
}

/// Is there a `k`-dimensional subspace of `ℂ^m` isotropic for every form?
/// Each Schubert chart (pivot set of the reduced echelon basis) gives a
/// polynomial system.
fn isotropic_exists(forms: &[Matrix<Rational>], m: usize, k: usize, budget: usize) -> Chart {
    let mut unknown = false;
    for pivots in (0..m).combinations(k) {
        let free: Vec<(usize, usize)> =
            (0..k).flat_map(|a| (pivots[a] + 1..m).filter(|c| !pivots.contains(c)).map(move |c| (a, c))).collect();
        let nvars = free.len();
        let rows: Vec<Vec<Polynomial>> = (0..k)
            .map(|a| {
                (0..m)
                    .map(|c| match free.iter().position(|&x| x == (a, c)) {
                        Some(v) => Polynomial::var(nvars, v),
                        None if c == pivots[a] => Polynomial::constant(nvars, Rational::one()),
                        None => Polynomial::zero(nvars),
                    })
                    .collect()
            })
            .collect();
        let mut eqs = Vec::new();
        for (a, b) in (0..k).tuple_combinations() {
            for f in forms {
                let mut e = Polynomial::zero(nvars);
                for r in 0..m {
                    for c in 0..m {
                        if !f[(r, c)].is_zero() {
                            e = e.add(&rows[a][r].mul(&rows[b][c]).scale(&f[(r, c)]));
                        }
                    }
                }
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
        match has_common_zero(&eqs, budget) {
            Some(true) => return Chart::Solvable(pivots),
            Some(false) => {}
            None => unknown = true,
        }
    }
    if unknown {
        Chart::Unknown
    } else {
        Chart::Empty
    }
}

enum Chart {
    /// Pivot columns of a chart containing solutions.
    Solvable(Vec<usize>),
    Empty,
    Unknown,
}

fn max_abelian_over<F: Field>(a: &LieAlgebra, cfg: &MaxAbelianConfig, values: &[F]) -> Result<CertifiedValue<F>> {
    let q = quotient_forms(a)?;
    let m = q.coords.len();
    let ub = upper_bound(&q, cfg);
    let forms: Vec<Matrix<F>> = q.forms.iter().map(|f| f.map(F::from_rational)).collect();
    let cands = echelon_candidates(m, values);
    let mut ub = ub;
    let mut chart = None;
    if m <= cfg.max_quotient_dim {
        while ub > 0 {
            match isotropic_exists(&q.forms, m, ub, cfg.elimination_budget) {
                Chart::Empty => ub -= 1,
                Chart::Solvable(p) => {
                    chart = Some(p);
                    break;
                }
                Chart::Unknown => break,
            }
        }
    }
    // Search the chart known to contain solutions before everything else.
    let mut found = Vec::new();
    if let Some(p) = &chart {
        let inside: Vec<Vec<F>> = cands
            .iter()
            .filter(|v| {
                let lead = leading_index(v);
                p.contains(&lead) && p.iter().all(|&q| q == lead || v[q].is_zero())
            })
            .cloned()
            .collect();
        found = isotropic_search(&forms, &inside, ub, false);
    }
    if found.len() < ub {
        found = isotropic_search(&forms, &cands, ub, m > cfg.max_quotient_dim);
    }
    let n = a.dim();
    let embedded: Vec<Vec<F>> = found
        .iter()
        .map(|v| {
            let mut e = vec![F::zero(); n];
            for (c, x) in q.coords.iter().zip(v) {
                e[*c] = x.clone();
            }
            e
        })
        .collect();
    Ok(CertifiedValue { lower: q.zdim + found.len(), upper: q.zdim + ub, witness: Some(Subspace::span(n, &embedded)) })
}

/// `a(g)`, the largest dimension of an abelian subalgebra, as an interval.
/// For a 2-step algebra every maximal abelian subalgebra contains the center,
/// so this is `dim z` plus the largest isotropic subspace of the bracket on
/// `g/z`. The witness spans that isotropic part.
pub fn max_abelian(a: &LieAlgebra) -> Result<CertifiedValue> {
    max_abelian_with(a, &MaxAbelianConfig::default())
}

pub fn max_abelian_with(a: &LieAlgebra, cfg: &MaxAbelianConfig) -> Result<CertifiedValue> {
    let values: Vec<Rational> = (-cfg.height..=cfg.height).map(Rational::from_i64).collect();
    max_abelian_over(a, cfg, &values)
}

/// Same search with Gaussian rational coefficients `x + iy`.
pub fn max_abelian_gaussian(a: &LieAlgebra, cfg: &MaxAbelianConfig) -> Result<CertifiedValue<Gaussian>> {
    let h = cfg.height;
    let values: Vec<Gaussian> = (-h..=h)
        .flat_map(|x| (-h..=h).map(move |y| Gaussian::new(Rational::from_i64(x), Rational::from_i64(y))))
        .collect();
    max_abelian_over(a, cfg, &values)
}

/// Checks that `w + z(g)` is abelian.
pub fn is_abelian_with_center(a: &LieAlgebra, w: &Subspace) -> bool {
    let all = w.sum(&center(a)).basis();
    all.iter().tuple_combinations().all(|(u, v)| a.bracket_of(u, v).iter().all(Zero::is_zero))
}

/// `dim g/z(g)`, the size of the isotropy problem behind `max_abelian`.
pub fn quotient_dim(a: &LieAlgebra) -> Result<usize> {
    let q = quotient_forms(a)?;
    debug_assert_eq!(q.center.dim() + q.coords.len(), a.dim());
    Ok(q.coords.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantProfile {
    pub orbit_dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    /// `dim H^0 … dim H^n`.
    pub betti: Vec<usize>,
    pub max_abelian: CertifiedValue,
    pub nilpotency_class: usize,
}

pub fn profile(a: &LieAlgebra) -> Result<InvariantProfile> {
    profile_with(a, &MaxAbelianConfig::default())
}

pub fn profile_with(a: &LieAlgebra, cfg: &MaxAbelianConfig) -> Result<InvariantProfile> {
    if !a.is_lie() {
        return Err(Error::NotLie(a.name().into()));
    }
    Ok(InvariantProfile {
        orbit_dim: orbit_dim(a),
        center_dim: center(a).dim(),
        derived_dim: derived(a).dim(),
        betti: betti(a),
        max_abelian: max_abelian_with(a, cfg)?,
        nilpotency_class: nilpotency_class(a).ok_or_else(|| Error::NotTwoStep(a.name().into()))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(dim: usize, e: &[(usize, usize, usize)]) -> LieAlgebra {
        LieAlgebra::from_unit_brackets("t", dim, e).unwrap()
    }

    fn unit(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    }

    #[test]
    fn heisenberg_invariants() {
        let h = alg(3, &[(2, 3, 1)]);
        assert_eq!(center(&h), Subspace::span(3, &[unit(3, 0)]));
        assert_eq!(derived(&h).dim(), 1);
        // Der(h3) is 6-dimensional.
        assert_eq!(derivation_dim(&h), 6);
        assert_eq!(betti(&h), vec![1, 2, 2, 1]);
        assert_eq!(nilpotency_class(&h), Some(2));
        let ma = max_abelian(&h).unwrap();
        assert_eq!((ma.lower, ma.upper), (2, 2));
    }

    #[test]
    fn abelian_everything() {
        let a = LieAlgebra::abelian(4);
        assert_eq!(orbit_dim(&a), 0);
        assert_eq!(betti(&a), vec![1, 4, 6, 4, 1]);
        assert_eq!(max_abelian(&a).unwrap().exact(), Some(4));
        assert_eq!(nilpotency_class(&a), Some(1));
        assert_eq!(nilpotency_class(&LieAlgebra::abelian(0)), Some(0));
    }

    #[test]
    fn filiform_is_three_step() {
        let f = alg(4, &[(1, 2, 3), (1, 3, 4)]);
        assert_eq!(nilpotency_class(&f), Some(3));
        assert!(matches!(max_abelian(&f), Err(Error::NotTwoStep(_))));
        // H^1 of the 4-dim filiform algebra is 2-dimensional, H^2 is 2-dimensional.
        assert_eq!(betti(&f), vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn non_nilpotent_has_no_class() {
        let mut a = LieAlgebra::new("aff", 2);
        a.add_to_bracket(0, 1, 1, Rational::one()).unwrap();
        assert_eq!(nilpotency_class(&a), None);
    }

    #[test]
    fn degree_out_of_range() {
        let h = alg(3, &[(2, 3, 1)]);
        assert_eq!(ce_betti(&h, 4), Err(Error::DegreeOutOfRange { k: 4, dim: 3 }));
        assert_eq!(ce_betti(&h, 3), Ok(1));
    }

    #[test]
    fn differential_squares_to_zero() {
        let a = alg(6, &[(1, 2, 5), (3, 4, 5), (1, 3, 6)]);
        for k in 0..5 {
            let d0 = ce_differential(&a, k).unwrap();
            let d1 = ce_differential(&a, k + 1).unwrap();
            assert!(d1.mul(&d0).is_zero(), "d∘d ≠ 0 at degree {k}");
        }
    }

    #[test]
    fn echelon_candidates_shape() {
        let vals: Vec<Rational> = (-1..=1).map(Rational::from_i64).collect();
        let c = echelon_candidates(3, &vals);
        assert_eq!(c.len(), 9 + 3 + 1);
        assert!(c.iter().all(|v| v[leading_index(v)] == Rational::one()));
        assert_eq!(echelon_candidates::<Rational>(0, &vals).len(), 0);
    }

    #[test]
    fn gaussian_search_agrees_on_heisenberg_sum() {
        let a = alg(6, &[(2, 3, 1), (5, 6, 4)]);
        let cfg = MaxAbelianConfig { height: 1, ..Default::default() };
        let q = max_abelian_with(&a, &cfg).unwrap();
        let g = max_abelian_gaussian(&a, &cfg).unwrap();
        assert_eq!(q.exact(), Some(4));
        assert_eq!(g.exact(), Some(4));
    }
}
