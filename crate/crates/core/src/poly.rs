//! Dense univariate polynomials in the monomial basis.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Monomial coefficients, lowest degree first. Trailing zeros are trimmed so
/// the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

/// Exact monomial-basis coefficients of one `P_n` or `Δ_n`.
pub type PolynomialCoeffs<T> = Polynomial<T>;

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    /// Multiplication by `x`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Sum of the coefficients, i.e. `p(1)`.
    pub fn sum(&self) -> T {
        self.coeffs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Exact quotient `q` with `p = (1 - x^2) q`.
    ///
    /// Fails with [`Error::NotDivisible`] unless the remainder is exactly zero,
    /// which for exact scalars is equivalent to `p(1) = p(-1) = 0`.
    pub fn divide_by_one_minus_x2(&self) -> Result<Self> {
        let p = &self.coeffs;
        if p.is_empty() {
            return Ok(Self::zero());
        }
        if p.len() < 3 {
            return Err(Error::NotDivisible);
        }
        // (1 - x^2) q has coefficients q_i - q_{i-2}.
        let d = p.len() - 1;
        let mut quotient: Vec<T> = Vec::with_capacity(d - 1);
        for i in 0..=d - 2 {
            let below = if i >= 2 { quotient[i - 2].clone() } else { T::zero() };
            quotient.push(p[i].clone() + below);
        }
        let top_ok = (p[d].clone() + quotient[d - 2].clone()).is_zero();
        let next = if d >= 3 { quotient[d - 3].clone() } else { T::zero() };
        let next_ok = (p[d - 1].clone() + next).is_zero();
        if !(top_ok && next_ok) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::new(quotient))
    }

    /// Exact quotient `q` with `p = (1 - x) q`.
    pub fn divide_by_one_minus_x(&self) -> Result<Self> {
        let p = &self.coeffs;
        if p.is_empty() {
            return Ok(Self::zero());
        }
        if p.len() < 2 {
            return Err(Error::NotDivisible);
        }
        // Synthetic division by (x - 1), then negate.
        let d = p.len() - 1;
        let mut rev: Vec<T> = Vec::with_capacity(d);
        let mut carry = T::zero();
        for c in p.iter().rev().take(d) {
            carry = carry + c.clone();
            rev.push(carry.clone());
        }
        let remainder = carry + p[0].clone();
        if !remainder.is_zero() {
            return Err(Error::NotDivisible);
        }
        rev.reverse();
        Ok(Self::new(rev.into_iter().map(|c| -c).collect()))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn poly(cs: &[(i64, i64)]) -> Polynomial<Rational> {
        Polynomial::new(cs.iter().map(|&(a, b)| q(a, b)).collect())
    }

    #[test]
    fn trims_and_reports_degree() {
        let p = poly(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::<Rational>::zero().degree(), None);
    }

    #[test]
    fn divides_quartic() {
        // (1 - x^4)/4 = (1 - x^2)(1 + x^2)/4
        let p = poly(&[(1, 4), (0, 1), (0, 1), (0, 1), (-1, 4)]);
        let quotient = p.divide_by_one_minus_x2().unwrap();
        assert_eq!(quotient, poly(&[(1, 4), (0, 1), (1, 4)]));
    }

    #[test]
    fn divides_one_minus_x2_to_one() {
        let p = poly(&[(1, 1), (0, 1), (-1, 1)]);
        assert_eq!(p.divide_by_one_minus_x2().unwrap(), poly(&[(1, 1)]));
    }

    #[test]
    fn rejects_non_multiple() {
        let p = poly(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(p.divide_by_one_minus_x2(), Err(Error::NotDivisible));
        assert_eq!(poly(&[(1, 1), (1, 1)]).divide_by_one_minus_x2(), Err(Error::NotDivisible));
        let odd = poly(&[(0, 1), (1, 1), (0, 1), (-1, 1)]);
        assert_eq!(odd.divide_by_one_minus_x2().unwrap(), poly(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn divides_by_one_minus_x() {
        // 1 - x^3 = (1 - x)(1 + x + x^2)
        let p = poly(&[(1, 1), (0, 1), (0, 1), (-1, 1)]);
        assert_eq!(p.divide_by_one_minus_x().unwrap(), poly(&[(1, 1), (1, 1), (1, 1)]));
        assert!(poly(&[(2, 1), (-1, 1)]).divide_by_one_minus_x().is_err());
    }

    #[test]
    fn arithmetic_matches_evaluation() {
        let a = poly(&[(1, 2), (-1, 3), (2, 1)]);
        let b = poly(&[(0, 1), (5, 7)]);
        let x = q(3, 11);
        assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        assert_eq!((&a - &b).eval(&x), a.eval(&x) - b.eval(&x));
        assert_eq!(a.shift().eval(&x), a.eval(&x) * x.clone());
        assert_eq!(a.reflect().eval(&x), a.eval(&-x));
    }
}
