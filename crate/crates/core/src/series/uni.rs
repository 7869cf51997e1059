use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{as_integer, factorials, rat_int, Rational};
use crate::error::{Error, Result};

/// Truncated univariate Taylor series `Σ_{n ≤ trunc_n} c[n] x^n`.
///
/// As with [`crate::BiSeries`], `c[n]` is an ordinary coefficient and the
/// exponential-generating-function count is `c[n]·n!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniSeries {
    coeffs: Vec<Rational>,
}

impl UniSeries {
    pub fn zero(trunc_n: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); trunc_n + 1],
        }
    }

    pub fn constant(trunc_n: usize, c: Rational) -> Self {
        let mut out = Self::zero(trunc_n);
        out.coeffs[0] = c;
        out
    }

    pub fn one(trunc_n: usize) -> Self {
        Self::constant(trunc_n, Rational::one())
    }

    pub fn monomial(trunc_n: usize, n: usize, c: Rational) -> Self {
        let mut out = Self::zero(trunc_n);
        if n <= trunc_n {
            out.coeffs[n] = c;
        }
        out
    }

    /// Panics on an empty vector; a series always retains degree 0.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant term"
        );
        Self { coeffs }
    }

    pub fn from_counts(trunc_n: usize, mut count: impl FnMut(usize) -> BigInt) -> Self {
        let fact = factorials(trunc_n);
        Self {
            coeffs: (0..=trunc_n)
                .map(|n| Rational::new(count(n), BigInt::from(fact[n].clone())))
                .collect(),
        }
    }

    pub fn trunc_n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// EGF count `c[n]·n!`.
    pub fn count(&self, n: usize) -> Rational {
        let fact = factorials(n);
        self.coeffs[n].clone() * rat_int(BigInt::from(fact[n].clone()))
    }

    pub fn integer_count(&self, n: usize) -> Result<BigInt> {
        let c = self.count(n);
        as_integer(&c)
            .ok_or_else(|| Error::Integrity(format!("count at n={n} is not an integer: {c}")))
    }

    /// All EGF counts, each required to be an integer.
    pub fn integer_counts(&self) -> Result<Vec<BigInt>> {
        let fact = factorials(self.trunc_n());
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let v = c * rat_int(BigInt::from(fact[n].clone()));
                as_integer(&v).ok_or_else(|| {
                    Error::Integrity(format!("count at n={n} is not an integer: {v}"))
                })
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncated(&self, trunc_n: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=trunc_n.min(self.trunc_n())].to_vec(),
        }
    }

    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let t = self.trunc_n().min(other.trunc_n());
        (0..=t).find(|&n| self.coeffs[n] != other.coeffs[n])
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let t = self.trunc_n().min(other.trunc_n());
        Self {
            coeffs: (0..=t)
                .map(|n| f(&self.coeffs[n], &other.coeffs[n]))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add_constant(&self, k: &Rational) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = &out.coeffs[0] + k;
        out
    }

    fn nonzero_terms(&self, max_n: usize) -> Vec<(usize, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .take(max_n + 1)
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Truncated Cauchy product (`u_mul`).
    pub fn mul(&self, other: &Self) -> Self {
        let t = self.trunc_n().min(other.trunc_n());
        let mut out = vec![Rational::zero(); t + 1];
        let rhs = other.nonzero_terms(t);
        for (i, a) in self.nonzero_terms(t) {
            for &(j, b) in &rhs {
                if i + j > t {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// `u_pow`.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.trunc_n());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `u_geom_inv`: `1/(1 − self)` for a zero-constant series.
    pub fn geom_inv(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant { op: "u_geom_inv" });
        }
        let t = self.trunc_n();
        let terms = self.nonzero_terms(t);
        let mut g = vec![Rational::zero(); t + 1];
        g[0] = Rational::one();
        for n in 1..=t {
            let mut acc = Rational::zero();
            for &(i, c) in &terms {
                if i > n {
                    break;
                }
                acc += c * &g[n - i];
            }
            g[n] = acc;
        }
        Ok(Self { coeffs: g })
    }

    /// Substitute `inner` (zero constant term) for the variable.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.constant_term().is_zero() {
            return Err(Error::NonzeroConstant { op: "compose" });
        }
        let t = inner.trunc_n();
        let mut acc = Self::zero(t);
        // Horner in the outer coefficients.
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add_constant(c);
        }
        Ok(acc)
    }
}

impl Add for &UniSeries {
    type Output = UniSeries;
    fn add(self, rhs: &UniSeries) -> UniSeries {
        UniSeries::add(self, rhs)
    }
}

impl Sub for &UniSeries {
    type Output = UniSeries;
    fn sub(self, rhs: &UniSeries) -> UniSeries {
        UniSeries::sub(self, rhs)
    }
}

impl Mul for &UniSeries {
    type Output = UniSeries;
    fn mul(self, rhs: &UniSeries) -> UniSeries {
        UniSeries::mul(self, rhs)
    }
}

impl Neg for &UniSeries {
    type Output = UniSeries;
    fn neg(self) -> UniSeries {
        UniSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn geom_inv_of_x() {
        let x = UniSeries::monomial(5, 1, rat(1, 1));
        let g = x.geom_inv().unwrap();
        assert!(g.coeffs().iter().all(|c| c == &rat(1, 1)));
        assert!(UniSeries::one(3).geom_inv().is_err());
    }

    #[test]
    fn pow_and_compose() {
        let a = UniSeries::from_coeffs(vec![rat(0, 1), rat(1, 1), rat(2, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(a.pow(1), a);
        assert_eq!(a.pow(0), UniSeries::one(4));
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        // 1/(1−u) composed with a equals geom_inv(a)
        let geo = UniSeries::from_coeffs(vec![rat(1, 1); 5]);
        assert_eq!(geo.compose(&a).unwrap(), a.geom_inv().unwrap());
    }
}
