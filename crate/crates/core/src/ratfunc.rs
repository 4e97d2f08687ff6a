//! Polynomials and rational functions in one variable `t` over ℚ.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Field, Rational};

/// Polynomial in `t`, coefficients from the constant term up, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
        Poly::new((0..n).map(|i| get(&self, i) + get(&rhs, i)).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Element of `ℚ(t)`, kept as `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading();
        let inv = Rational::one() / lead;
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::poly(Poly::constant(c))
    }

    pub fn t() -> Self {
        Self::poly(Poly::t())
    }

    /// `c·t^k` for any integer `k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        let e = k.unsigned_abs() as usize;
        if k >= 0 {
            Self::poly(Poly::monomial(c, e))
        } else {
            Self::new(Poly::constant(c), Poly::monomial(Rational::one(), e))
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Order at `t = 0`: positive for zeros, negative for poles, `None` for 0.
    pub fn valuation(&self) -> Option<i64> {
        let n = self.num.valuation()? as i64;
        let d = self.den.valuation().expect("nonzero denominator") as i64;
        Some(n - d)
    }

    /// Value at `t = 0`, or `None` if there is a pole there.
    pub fn value_at_zero(&self) -> Option<Rational> {
        match self.valuation() {
            None => Some(Rational::zero()),
            Some(v) if v < 0 => None,
            Some(_) => {
                let d0 = self.den.eval(&Rational::zero());
                // With gcd removed, t does not divide both; a zero of den at 0 means a pole.
                Some(self.num.eval(&Rational::zero()) / d0)
            }
        }
    }

    /// Value at a point `x` that is not a root of the denominator.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.eval(&Rational::zero()))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(self.num + rhs.num, self.den);
        }
        RatFunc::new(self.num * rhs.den.clone() + rhs.num * self.den.clone(), self.den * rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.num.is_zero(), "division by the zero rational function");
        RatFunc::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::poly(Poly::one())
    }
}

impl Field for RatFunc {
    fn from_i64(v: i64) -> Self {
        RatFunc::constant(Rational::from_i64(v))
    }

    fn from_rational(q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use alloc::string::ToString;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn poly_division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[2, 2])), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), Poly::one());
    }

    #[test]
    fn ratfunc_normal_form() {
        let f = RatFunc::new(p(&[0, 2, 2]), p(&[0, 0, 4, 4]));
        assert_eq!(f.numerator(), &Poly::constant(frac(1, 2)));
        assert_eq!(f.denominator(), &p(&[0, 1]));
        assert_eq!(f.valuation(), Some(-1));
        assert_eq!(f.value_at_zero(), None);
        assert_eq!(f.to_string(), "(1/2)/(t)");
    }

    #[test]
    fn values_at_zero() {
        let t = RatFunc::t();
        let f = (t.clone() + RatFunc::one()) / (t.clone() * t.clone() + RatFunc::from_i64(2));
        assert_eq!(f.value_at_zero(), Some(frac(1, 2)));
        assert_eq!((t.clone() * f.clone()).value_at_zero(), Some(int(0)));
        assert_eq!((f / t).valuation(), Some(-1));
        assert_eq!(RatFunc::monomial(int(3), -2).valuation(), Some(-2));
    }

    #[test]
    fn field_identities() {
        let t = RatFunc::t();
        let a = (t.clone() + RatFunc::from_i64(3)) / (t.clone() - RatFunc::one());
        assert_eq!(a.clone() * a.inv(), RatFunc::one());
        assert_eq!(a.clone() - a.clone(), RatFunc::zero());
        assert_eq!(a.eval(&int(2)), Some(int(5)));
        assert_eq!(a.eval(&int(1)), None);
    }
}
