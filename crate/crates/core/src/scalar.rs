//! Exact scalars.
//!
//! Everything in this crate is computed over [`Rational`] (arbitrary precision
//! fractions). The [`Gaussian`] rationals `ℚ(i)` are available for the places
//! where a search over complex coefficients is worth trying, and the
//! rational-function field in `t` lives in [`crate::ratfunc`].

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. Always stored as a reduced fraction with positive
/// denominator.
pub type Rational = BigRational;

/// The operations the linear-algebra routines need from a coefficient field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse. Callers guarantee `self` is nonzero.
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn from_i64(v: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -self.im.clone()),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Gaussian::new(re, im)
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    fn div(self, rhs: Gaussian) -> Gaussian {
        let n = rhs.norm();
        let num = self * rhs.conj();
        Gaussian::new(num.re / &n, num.im / n)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::new(Rational::one(), Rational::zero())
    }
}

impl Field for Gaussian {
    fn from_i64(v: i64) -> Self {
        Gaussian::new(int(v), Rational::zero())
    }

    fn from_rational(q: &Rational) -> Self {
        Gaussian::new(q.clone(), Rational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let q = frac(6, -4);
        assert_eq!(*q.numer(), BigInt::from(-3));
        assert_eq!(*q.denom(), BigInt::from(2));
    }

    #[test]
    fn gaussian_field_ops() {
        let a = Gaussian::new(int(1), int(2));
        let b = Gaussian::new(frac(1, 3), int(-1));
        assert_eq!((a.clone() / b.clone()) * b.clone(), a);
        assert_eq!(Gaussian::i() * Gaussian::i(), -Gaussian::one());
        assert_eq!(a.inv() * a, Gaussian::one());
    }
}
