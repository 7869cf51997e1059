//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

/// `Σ c[i] t^i`, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    /// `c·t^k`
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(inner).add(&Self::constant(c.clone()))
        })
    }

    /// Euclidean division: `(q, r)` with `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Precondition("division by the zero polynomial".into()))?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len().saturating_sub(dd);
        let mut quot = vec![Rational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// The first `n` ordinary power-series coefficients of `self / den`,
    /// for `den(0) ≠ 0`.
    pub fn series_div(&self, den: &Self, n: usize) -> Result<Vec<Rational>> {
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Precondition("denominator vanishes at 0".into()));
        }
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for (i, d) in den.coeffs.iter().enumerate().skip(1) {
                if i > k {
                    break;
                }
                acc -= d * &out[k - i];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_reconstructs() {
        let a = Poly::from_ints(&[3, 0, -2, 5, 1, 7]);
        let b = Poly::from_ints(&[1, 0, -1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(a.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn series_division() {
        // 1/(1 − t)^2 = Σ (n+1) t^n
        let den = Poly::from_ints(&[1, -2, 1]);
        let s = Poly::one().series_div(&den, 6).unwrap();
        for (n, c) in s.iter().enumerate() {
            assert_eq!(c, &rat(n as i64 + 1, 1));
        }
    }

    #[test]
    fn compose_shift() {
        // p(t) = t^2, p(1 − u) = 1 − 2u + u^2
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(
            p.compose(&Poly::from_ints(&[1, -1])),
            Poly::from_ints(&[1, -2, 1])
        );
        assert_eq!(p.eval(&rat(3, 2)), rat(9, 4));
    }
}
