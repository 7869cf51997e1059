use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{as_integer, factorials, rat_int, Rational};
use crate::error::{Error, Result};
use crate::series::uni::UniSeries;

/// Truncated bivariate Taylor series `Σ c[r][s] x^r y^s` for `r ≤ trunc_r`,
/// `s ≤ trunc_s`.
///
/// Coefficients are ordinary Taylor coefficients, so the labelled count an
/// exponential generating function encodes at `(r, s)` is `c[r][s]·r!·s!`
/// (see [`BiSeries::count`]). Binary operations work on the componentwise
/// minimum of the operands' truncations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiSeries {
    trunc_r: usize,
    trunc_s: usize,
    coeffs: Vec<Rational>,
}

impl BiSeries {
    pub fn zero(trunc_r: usize, trunc_s: usize) -> Self {
        Self {
            trunc_r,
            trunc_s,
            coeffs: vec![Rational::zero(); (trunc_r + 1) * (trunc_s + 1)],
        }
    }

    pub fn constant(trunc_r: usize, trunc_s: usize, c: Rational) -> Self {
        let mut out = Self::zero(trunc_r, trunc_s);
        out.coeffs[0] = c;
        out
    }

    pub fn one(trunc_r: usize, trunc_s: usize) -> Self {
        Self::constant(trunc_r, trunc_s, Rational::one())
    }

    /// The monomial `c·x^r y^s` (zero if it lies above the truncation).
    pub fn monomial(trunc_r: usize, trunc_s: usize, r: usize, s: usize, c: Rational) -> Self {
        let mut out = Self::zero(trunc_r, trunc_s);
        if r <= trunc_r && s <= trunc_s {
            out.set(r, s, c);
        }
        out
    }

    pub fn from_fn(
        trunc_r: usize,
        trunc_s: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> Self {
        let mut coeffs = Vec::with_capacity((trunc_r + 1) * (trunc_s + 1));
        for r in 0..=trunc_r {
            for s in 0..=trunc_s {
                coeffs.push(f(r, s));
            }
        }
        Self {
            trunc_r,
            trunc_s,
            coeffs,
        }
    }

    /// Build the EGF whose labelled count at `(r, s)` is `count(r, s)`.
    pub fn from_counts(
        trunc_r: usize,
        trunc_s: usize,
        mut count: impl FnMut(usize, usize) -> BigInt,
    ) -> Self {
        let fact = factorials(trunc_r.max(trunc_s));
        Self::from_fn(trunc_r, trunc_s, |r, s| {
            let denom = BigInt::from(&fact[r] * &fact[s]);
            Rational::new(count(r, s), denom)
        })
    }

    pub fn trunc_r(&self) -> usize {
        self.trunc_r
    }

    pub fn trunc_s(&self) -> usize {
        self.trunc_s
    }

    #[inline]
    fn idx(&self, r: usize, s: usize) -> usize {
        r * (self.trunc_s + 1) + s
    }

    pub fn coeff(&self, r: usize, s: usize) -> &Rational {
        &self.coeffs[self.idx(r, s)]
    }

    pub fn set(&mut self, r: usize, s: usize, c: Rational) {
        let i = self.idx(r, s);
        self.coeffs[i] = c;
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Labelled count `c[r][s]·r!·s!`.
    pub fn count(&self, r: usize, s: usize) -> Rational {
        let fact = factorials(r.max(s));
        self.coeff(r, s) * rat_int(BigInt::from(&fact[r] * &fact[s]))
    }

    /// Labelled count at `(r, s)`, required to be an integer.
    pub fn integer_count(&self, r: usize, s: usize) -> Result<BigInt> {
        let c = self.count(r, s);
        as_integer(&c)
            .ok_or_else(|| Error::Integrity(format!("count at ({r},{s}) is not an integer: {c}")))
    }

    /// Checks that every labelled count in the grid is a nonnegative integer.
    pub fn check_counts_natural(&self) -> Result<()> {
        let fact = factorials(self.trunc_r.max(self.trunc_s));
        for r in 0..=self.trunc_r {
            for s in 0..=self.trunc_s {
                let c = self.coeff(r, s) * rat_int(BigInt::from(&fact[r] * &fact[s]));
                match as_integer(&c) {
                    Some(n) if n >= BigInt::zero() => {}
                    _ => {
                        return Err(Error::Integrity(format!(
                            "count at ({r},{s}) is not a nonnegative integer: {c}"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Restrict to a smaller truncation.
    pub fn truncated(&self, trunc_r: usize, trunc_s: usize) -> Self {
        let tr = trunc_r.min(self.trunc_r);
        let ts = trunc_s.min(self.trunc_s);
        Self::from_fn(tr, ts, |r, s| self.coeff(r, s).clone())
    }

    fn aligned(&self, other: &Self) -> (usize, usize) {
        (
            self.trunc_r.min(other.trunc_r),
            self.trunc_s.min(other.trunc_s),
        )
    }

    /// First coefficient (in row-major order) where the two series differ on
    /// their common truncation.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let (tr, ts) = self.aligned(other);
        for r in 0..=tr {
            for s in 0..=ts {
                if self.coeff(r, s) != other.coeff(r, s) {
                    return Some((r, s));
                }
            }
        }
        None
    }

    /// Equality on the common truncation.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        let t = self.trunc_r.min(self.trunc_s);
        (0..=t).all(|r| (0..r).all(|s| self.coeff(r, s) == self.coeff(s, r)))
    }

    /// The x↔y mirror image.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.trunc_s, self.trunc_r, |r, s| self.coeff(s, r).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (tr, ts) = self.aligned(other);
        Self::from_fn(tr, ts, |r, s| self.coeff(r, s) + other.coeff(r, s))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (tr, ts) = self.aligned(other);
        Self::from_fn(tr, ts, |r, s| self.coeff(r, s) - other.coeff(r, s))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.trunc_r, self.trunc_s, |r, s| -self.coeff(r, s))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_fn(self.trunc_r, self.trunc_s, |r, s| self.coeff(r, s) * k)
    }

    pub fn add_constant(&self, k: &Rational) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = &out.coeffs[0] + k;
        out
    }

    fn nonzero_terms(&self, max_r: usize, max_s: usize) -> Vec<(usize, usize, &Rational)> {
        let mut out = Vec::new();
        for r in 0..=max_r.min(self.trunc_r) {
            for s in 0..=max_s.min(self.trunc_s) {
                let c = self.coeff(r, s);
                if !c.is_zero() {
                    out.push((r, s, c));
                }
            }
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let (tr, ts) = self.aligned(other);
        let mut out = Self::zero(tr, ts);
        let rhs = other.nonzero_terms(tr, ts);
        for (i, j, a) in self.nonzero_terms(tr, ts) {
            for &(k, l, b) in &rhs {
                if i + k <= tr && j + l <= ts {
                    let at = out.idx(i + k, j + l);
                    out.coeffs[at] += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.trunc_r, self.trunc_s);
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

    /// `x · self`, dropping the top x-row.
    pub fn x_times(&self) -> Self {
        Self::from_fn(self.trunc_r, self.trunc_s, |r, s| {
            if r == 0 {
                Rational::zero()
            } else {
                self.coeff(r - 1, s).clone()
            }
        })
    }

    /// `y · self`, dropping the top y-column.
    pub fn y_times(&self) -> Self {
        Self::from_fn(self.trunc_r, self.trunc_s, |r, s| {
            if s == 0 {
                Rational::zero()
            } else {
                self.coeff(r, s - 1).clone()
            }
        })
    }

    /// Euler operator `x ∂_x`.
    pub fn euler_x(&self) -> Self {
        Self::from_fn(self.trunc_r, self.trunc_s, |r, s| {
            self.coeff(r, s) * rat_int(BigInt::from(r))
        })
    }

    /// Euler operator `y ∂_y`.
    pub fn euler_y(&self) -> Self {
        Self::from_fn(self.trunc_r, self.trunc_s, |r, s| {
            self.coeff(r, s) * rat_int(BigInt::from(s))
        })
    }

    fn require_zero_constant(&self, op: &'static str) -> Result<()> {
        if self.constant_term().is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstant { op })
        }
    }

    /// `exp(self)` for a zero-constant series.
    ///
    /// Solves `D_x e = e·D_x a` (and `D_y` on the `r = 0` column) in
    /// lexicographic order, which visits every coefficient after all the
    /// lower-degree ones it depends on.
    pub fn exp_zero_const(&self) -> Result<Self> {
        self.require_zero_constant("exp_zero_const")?;
        let (tr, ts) = (self.trunc_r, self.trunc_s);
        let mut e = Self::zero(tr, ts);
        e.coeffs[0] = Rational::one();
        let dx = self.euler_x();
        let dy = self.euler_y();
        let dx_terms = dx.nonzero_terms(tr, ts);
        let dy_col: Vec<_> = dy.nonzero_terms(0, ts);
        for r in 0..=tr {
            for s in 0..=ts {
                if r == 0 && s == 0 {
                    continue;
                }
                let mut acc = Rational::zero();
                let divisor = if r > 0 {
                    for &(i, j, c) in &dx_terms {
                        if i <= r && j <= s {
                            acc += c * e.coeff(r - i, s - j);
                        }
                    }
                    r
                } else {
                    for &(_, j, c) in &dy_col {
                        if j <= s {
                            acc += c * e.coeff(0, s - j);
                        }
                    }
                    s
                };
                e.set(r, s, acc / rat_int(BigInt::from(divisor)));
            }
        }
        Ok(e)
    }

    /// `1/(1 − self) = Σ_k self^k` for a zero-constant series.
    ///
    /// The geometric sum is evaluated through the equivalent fixed point
    /// `g = 1 + self·g`, solved coefficient by coefficient.
    pub fn geom_inv(&self) -> Result<Self> {
        self.require_zero_constant("geom_inv")?;
        let (tr, ts) = (self.trunc_r, self.trunc_s);
        let terms = self.nonzero_terms(tr, ts);
        let mut g = Self::zero(tr, ts);
        g.coeffs[0] = Rational::one();
        for r in 0..=tr {
            for s in 0..=ts {
                if r == 0 && s == 0 {
                    continue;
                }
                let mut acc = Rational::zero();
                for &(i, j, c) in &terms {
                    if i <= r && j <= s {
                        acc += c * g.coeff(r - i, s - j);
                    }
                }
                g.set(r, s, acc);
            }
        }
        Ok(g)
    }

    /// `log(1 − self) = −Σ_{k≥1} self^k / k` for a zero-constant series,
    /// via `D log(1 − a) = −D(a)/(1 − a)`.
    pub fn log_one_minus(&self) -> Result<Self> {
        self.require_zero_constant("log_one_minus")?;
        let g = self.geom_inv()?;
        let dx = self.euler_x().mul(&g);
        let dy = self.euler_y().mul(&g);
        Ok(Self::from_fn(self.trunc_r, self.trunc_s, |r, s| {
            if r > 0 {
                -dx.coeff(r, s) / rat_int(BigInt::from(r))
            } else if s > 0 {
                -dy.coeff(0, s) / rat_int(BigInt::from(s))
            } else {
                Rational::zero()
            }
        }))
    }

    /// Set `y = x`: `d[n] = Σ_{r+s=n} c[r][s]`.
    pub fn diagonal(&self) -> Result<UniSeries> {
        if self.trunc_r != self.trunc_s {
            return Err(Error::Truncation(format!(
                "diagonal needs a square truncation, got ({}, {})",
                self.trunc_r, self.trunc_s
            )));
        }
        let t = self.trunc_r;
        let mut d = vec![Rational::zero(); t + 1];
        for r in 0..=t {
            for s in 0..=(t - r) {
                d[r + s] += self.coeff(r, s);
            }
        }
        Ok(UniSeries::from_coeffs(d))
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        BiSeries::add(self, rhs)
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        BiSeries::sub(self, rhs)
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        BiSeries::mul(self, rhs)
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        BiSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn small(tr: usize, ts: usize, vals: &[i64], zero_const: bool) -> BiSeries {
        let mut it = vals.iter().cycle();
        BiSeries::from_fn(tr, ts, |r, s| {
            let v = *it.next().unwrap();
            if zero_const && r == 0 && s == 0 {
                Rational::zero()
            } else {
                rat(v, 1 + ((r + 2 * s) % 3) as i64)
            }
        })
    }

    #[test]
    fn product_truncates_to_min() {
        let a = BiSeries::one(3, 5);
        let b = BiSeries::one(4, 2);
        let p = &a * &b;
        assert_eq!((p.trunc_r(), p.trunc_s()), (3, 2));
        assert_eq!(p.add(&a).trunc_s(), 2);
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = BiSeries::zero(4, 4).exp_zero_const().unwrap();
        assert_eq!(e, BiSeries::one(4, 4));
    }

    #[test]
    fn exp_of_x_is_exponential() {
        let x = BiSeries::monomial(6, 2, 1, 0, rat(1, 1));
        let e = x.exp_zero_const().unwrap();
        let fact = factorials(6);
        for r in 0..=6 {
            assert_eq!(
                e.coeff(r, 0),
                &Rational::new(1.into(), BigInt::from(fact[r].clone()))
            );
            assert!(e.coeff(r, 1).is_zero());
        }
    }

    #[test]
    fn nonzero_constant_is_rejected() {
        let one = BiSeries::one(2, 2);
        assert_eq!(
            one.exp_zero_const().unwrap_err(),
            Error::NonzeroConstant {
                op: "exp_zero_const"
            }
        );
        assert!(one.geom_inv().is_err());
        assert!(one.log_one_minus().is_err());
    }

    #[test]
    fn geom_inv_and_log_of_zero() {
        let z = BiSeries::zero(3, 3);
        assert_eq!(z.geom_inv().unwrap(), BiSeries::one(3, 3));
        assert!(z.log_one_minus().unwrap().is_zero());
    }

    #[test]
    fn geom_inv_matches_explicit_sum() {
        let a = small(4, 3, &[1, -2, 3, 5, -1], true);
        let mut sum = BiSeries::one(4, 3);
        let mut p = BiSeries::one(4, 3);
        for _ in 0..8 {
            p = p.mul(&a);
            sum = sum.add(&p);
        }
        assert_eq!(a.geom_inv().unwrap(), sum);
    }

    #[test]
    fn log_matches_explicit_sum() {
        let a = small(3, 4, &[2, 1, -3, 4], true);
        let mut sum = BiSeries::zero(3, 4);
        let mut p = BiSeries::one(3, 4);
        for k in 1..=8 {
            p = p.mul(&a);
            sum = sum.sub(&p.scale(&rat(1, k)));
        }
        assert_eq!(a.log_one_minus().unwrap(), sum);
    }

    #[test]
    fn diagonal_requires_square() {
        assert!(BiSeries::zero(2, 3).diagonal().is_err());
        assert!(BiSeries::zero(3, 3).diagonal().unwrap().is_zero());
    }

    #[test]
    fn euler_operators_commute() {
        let a = small(4, 4, &[3, 1, 4, 1, 5, 9, 2, 6], false);
        assert_eq!(a.euler_x().euler_y(), a.euler_y().euler_x());
        assert!(BiSeries::one(3, 3).euler_x().is_zero());
    }

    fn arb_series(zero_const: bool) -> impl Strategy<Value = BiSeries> {
        (1usize..4, 1usize..4, prop::collection::vec(-6i64..7, 1..20))
            .prop_map(move |(tr, ts, v)| small(tr, ts, &v, zero_const))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in arb_series(false), b in arb_series(false), c in arb_series(false)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn exp_is_a_homomorphism(a in arb_series(true), b in arb_series(true)) {
            let lhs = (&a + &b).exp_zero_const().unwrap();
            let rhs = &a.exp_zero_const().unwrap() * &b.exp_zero_const().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn geom_inv_and_log_identities(a in arb_series(true)) {
            let g = a.geom_inv().unwrap();
            let one_minus = (-&a).add_constant(&rat(1, 1));
            prop_assert_eq!(&g * &one_minus, BiSeries::one(a.trunc_r(), a.trunc_s()));
            let e = a.log_one_minus().unwrap().neg().exp_zero_const().unwrap();
            prop_assert_eq!(e, g);
        }

        #[test]
        fn diagonal_is_multiplicative(t in 1usize..5, v in prop::collection::vec(-5i64..6, 1..12), w in prop::collection::vec(-5i64..6, 1..12)) {
            let a = small(t, t, &v, false);
            let b = small(t, t, &w, false);
            let lhs = (&a * &b).diagonal().unwrap();
            let rhs = a.diagonal().unwrap().mul(&b.diagonal().unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
