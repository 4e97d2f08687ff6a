//! Polynomials over `ℚ` in a fixed number of variables and a bounded
//! Buchberger run, enough to decide whether a small system of equations has a
//! common complex zero.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Exponent vector under graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(|m| m.degree() == 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn monic(self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self,
        }
    }

    /// `self - c · m · q`.
    fn sub_multiple(&mut self, c: &Rational, m: &Monomial, q: &Polynomial) {
        for (qm, qc) in &q.terms {
            self.add_term(m.mul(qm), -(c * qc));
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(x).fold(c.clone(), |acc, (&e, xi)| (0..e).fold(acc, |a, _| a * xi))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Full reduction of `p` modulo the monic polynomials in `basis`. Every
/// cancelled term costs one unit of `budget`.
fn normal_form(mut p: Polynomial, basis: &[Polynomial], budget: &mut usize) -> Option<Polynomial> {
    let mut rest = Polynomial::zero(p.nvars);
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
            Some(g) => {
                *budget = budget.checked_sub(1)?;
                let lm = g.leading().expect("basis elements are nonzero").0;
                p.sub_multiple(&c, &lm.quotient_of(&m), g);
            }
            None => {
                p.terms.remove(&m);
                rest.add_term(m, c);
            }
        }
    }
    Some(rest)
}

/// Does the system `polys = 0` have a common zero over `ℂ`? `None` when the
/// Buchberger run exceeds `budget` reduction steps.
pub fn has_common_zero(polys: &[Polynomial], budget: usize) -> Option<bool> {
    let mut budget = budget;
    let mut basis: Vec<Polynomial> = Vec::new();
    for p in polys {
        let r = normal_form(p.clone(), &basis, &mut budget)?;
        if r.is_unit() {
            return Some(false);
        }
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let lm = |g: &Polynomial| g.leading().expect("basis elements are nonzero").0.clone();
    let mut queue: BinaryHeap<Reverse<(Monomial, usize, usize)>> = BinaryHeap::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            queue.push(Reverse((lm(&basis[i]).lcm(&lm(&basis[j])), i, j)));
            pending.insert((i, j));
        }
    }
    while let Some(Reverse((lcm, i, j))) = queue.pop() {
        pending.remove(&(i, j));
        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        if li.coprime(&lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let mut s = Polynomial::zero(basis[i].nvars);
        s.sub_multiple(&-Rational::one(), &li.quotient_of(&lcm), &basis[i]);
        s.sub_multiple(&Rational::one(), &lj.quotient_of(&lcm), &basis[j]);
        let r = normal_form(s, &basis, &mut budget)?;
        if r.is_unit() {
            return Some(false);
        }
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let lr = lm(&r);
        let k = basis.len();
        basis.push(r);
        for (i, g) in basis.iter().enumerate().take(k) {
            queue.push(Reverse((lm(g).lcm(&lr), i, k)));
            pending.insert((i, k));
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, int(v))
    }

    #[test]
    fn grevlex_order() {
        let m = |e: &[u32]| Monomial(e.to_vec());
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
    }

    #[test]
    fn inconsistent_systems() {
        // xy = 1, x = 0.
        let p = x(2, 0).mul(&x(2, 1)).add(&c(2, -1));
        assert_eq!(has_common_zero(&[p, x(2, 0)], 1000), Some(false));
        // x² + 1 = 0 has complex zeros.
        let q = x(1, 0).mul(&x(1, 0)).add(&c(1, 1));
        assert_eq!(has_common_zero(&[q], 1000), Some(true));
        assert_eq!(has_common_zero(&[c(1, 3)], 1000), Some(false));
    }

    #[test]
    fn needs_s_polynomials() {
        // x² - y = 0, xy - 1 = 0, y² - x = 0 has the cube roots of unity.
        let n = 2;
        let f = x(n, 0).mul(&x(n, 0)).add(&x(n, 1).scale(&int(-1)));
        let g = x(n, 0).mul(&x(n, 1)).add(&c(n, -1));
        let h = x(n, 1).mul(&x(n, 1)).add(&x(n, 0).scale(&int(-1)));
        assert_eq!(has_common_zero(&[f.clone(), g.clone(), h], 1000), Some(true));
        // Adding x - 2 = 0 leaves none.
        assert_eq!(has_common_zero(&[f, g, x(n, 0).add(&c(n, -2))], 1000), Some(false));
    }

    #[test]
    fn budget_exhaustion() {
        let p = x(2, 0).mul(&x(2, 0)).add(&c(2, -1));
        assert_eq!(has_common_zero(&[p.clone(), p.add(&x(2, 1))], 0), None);
    }

    #[test]
    fn evaluation() {
        let p = x(2, 0).mul(&x(2, 1)).add(&c(2, -1));
        assert_eq!(p.eval(&[int(2), int(3)]), int(5));
    }
}
