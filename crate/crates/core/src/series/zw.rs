//! Rational expressions `Σ_j p_j(w) z^j / (1 − w)^{m_j}` and their
//! evaluation on series.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, rat_int, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{BiSeries, UniSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZWTerm {
    pub z_power: u32,
    pub denom_power: u32,
    /// Numerator polynomial in `w`.
    pub numer: Poly,
}

impl ZWTerm {
    /// `w^shift · (Σ_i c_i w^i) / denom · z^z_power / (1 − w)^denom_power`.
    pub fn scaled(
        z_power: u32,
        denom_power: u32,
        shift: usize,
        coeffs: &[i64],
        denom: i64,
    ) -> Self {
        let mut v = vec![Rational::zero(); shift];
        v.extend(coeffs.iter().map(|&c| rat(c, denom)));
        Self {
            z_power,
            denom_power,
            numer: Poly::new(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RationalZWExpr {
    pub terms: Vec<ZWTerm>,
}

/// Minimal ring interface shared by [`BiSeries`] and [`UniSeries`] so a
/// `RationalZWExpr` can be substituted into either.
pub trait SeriesRing: Clone {
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, k: &Rational) -> Self;
    fn plus_constant(&self, k: &Rational) -> Self;
    fn one_minus_inv(&self) -> Result<Self>;
    fn has_zero_constant(&self) -> bool;
}

impl SeriesRing for BiSeries {
    fn one_like(&self) -> Self {
        BiSeries::one(self.trunc_r(), self.trunc_s())
    }
    fn zero_like(&self) -> Self {
        BiSeries::zero(self.trunc_r(), self.trunc_s())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scaled(&self, k: &Rational) -> Self {
        self.scale(k)
    }
    fn plus_constant(&self, k: &Rational) -> Self {
        self.add_constant(k)
    }
    fn one_minus_inv(&self) -> Result<Self> {
        self.geom_inv()
    }
    fn has_zero_constant(&self) -> bool {
        self.constant_term().is_zero()
    }
}

impl SeriesRing for UniSeries {
    fn one_like(&self) -> Self {
        UniSeries::one(self.trunc_n())
    }
    fn zero_like(&self) -> Self {
        UniSeries::zero(self.trunc_n())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scaled(&self, k: &Rational) -> Self {
        self.scale(k)
    }
    fn plus_constant(&self, k: &Rational) -> Self {
        self.add_constant(k)
    }
    fn one_minus_inv(&self) -> Result<Self> {
        self.geom_inv()
    }
    fn has_zero_constant(&self) -> bool {
        self.constant_term().is_zero()
    }
}

fn power_cache<S: SeriesRing>(base: &S, max: u32) -> Vec<S> {
    let mut out = vec![base.one_like()];
    for k in 1..=max as usize {
        out.push(out[k - 1].times(base));
    }
    out
}

impl RationalZWExpr {
    pub fn new(terms: Vec<ZWTerm>) -> Self {
        Self { terms }
    }

    /// The expression `w`.
    pub fn w() -> Self {
        Self::new(vec![ZWTerm {
            z_power: 0,
            denom_power: 0,
            numer: Poly::from_ints(&[0, 1]),
        }])
    }

    /// The expression `z`.
    pub fn z() -> Self {
        Self::new(vec![ZWTerm {
            z_power: 1,
            denom_power: 0,
            numer: Poly::one(),
        }])
    }

    pub fn max_z_power(&self) -> u32 {
        self.terms.iter().map(|t| t.z_power).max().unwrap_or(0)
    }

    pub fn max_denom_power(&self) -> u32 {
        self.terms.iter().map(|t| t.denom_power).max().unwrap_or(0)
    }

    /// Substitute series for `z` and `w`. `w` must have zero constant term.
    pub fn eval<S: SeriesRing>(&self, z: &S, w: &S) -> Result<S> {
        if !w.has_zero_constant() {
            return Err(Error::NonzeroConstant { op: "eval_zw" });
        }
        let zpow = power_cache(z, self.max_z_power());
        let max_m = self.max_denom_power();
        let gpow = if max_m > 0 {
            power_cache(&w.one_minus_inv()?, max_m)
        } else {
            vec![w.one_like()]
        };
        let mut acc = w.zero_like();
        for t in &self.terms {
            // Horner for the numerator in w.
            let mut p = w.zero_like();
            for c in t.numer.coeffs().iter().rev() {
                p = p.times(w).plus_constant(c);
            }
            let term = p
                .times(&zpow[t.z_power as usize])
                .times(&gpow[t.denom_power as usize]);
            acc = acc.plus(&term);
        }
        Ok(acc)
    }

    /// `(N, M)` with `f(2Y, Y²) = N(Y) / (1 − Y²)^M`: the diagonal of
    /// `f(Z, W)` written as a rational function of `Y = T_x(x, x) = T_y(x, x)`.
    pub fn diagonal_rational(&self) -> (Poly, u32) {
        let m_max = self.max_denom_power();
        let y2 = Poly::from_ints(&[0, 0, 1]);
        let one_minus_y2 = Poly::from_ints(&[1, 0, -1]);
        let two_y = Poly::from_ints(&[0, 2]);
        let mut numer = Poly::zero();
        for t in &self.terms {
            let piece = t
                .numer
                .compose(&y2)
                .mul(&two_y.pow(t.z_power))
                .mul(&one_minus_y2.pow(m_max - t.denom_power));
            numer = numer.add(&piece);
        }
        (numer, m_max)
    }

    /// `D_z` applied to the expression.
    pub fn euler_z(&self) -> Self {
        Self::new(
            self.terms
                .iter()
                .filter(|t| t.z_power > 0)
                .map(|t| ZWTerm {
                    z_power: t.z_power,
                    denom_power: t.denom_power,
                    numer: t.numer.scale(&rat_int(t.z_power)),
                })
                .collect(),
        )
    }

    /// `D_w` applied to the expression:
    /// `D_w [p/(1−w)^m] = w p'/(1−w)^m + m w p/(1−w)^{m+1}`.
    pub fn euler_w(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            let wdp = Poly::new(
                t.numer
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * rat_int(i as u64))
                    .collect(),
            );
            if !wdp.is_zero() {
                out.push(ZWTerm {
                    z_power: t.z_power,
                    denom_power: t.denom_power,
                    numer: wdp,
                });
            }
            if t.denom_power > 0 {
                let wp = t
                    .numer
                    .mul(&Poly::from_ints(&[0, 1]))
                    .scale(&rat_int(t.denom_power));
                out.push(ZWTerm {
                    z_power: t.z_power,
                    denom_power: t.denom_power + 1,
                    numer: wp,
                });
            }
        }
        Self::new(out)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|t| ZWTerm {
                    numer: t.numer.scale(k),
                    ..t.clone()
                })
                .collect(),
        )
    }

    /// Reports why the expression is not of the shape
    /// `w² / (1 − w)^{3(k−1)} · Σ_{j<k} q_j(w) z^j`, if it is not.
    pub fn generic_form_violation(&self, k: u32) -> Option<String> {
        if k < 2 {
            return Some(format!("generic form is defined for k ≥ 2, got {k}"));
        }
        let m = 3 * (k - 1);
        for t in &self.terms {
            if t.denom_power != m {
                return Some(format!(
                    "term z^{} has (1−w)^{} instead of ^{m}",
                    t.z_power, t.denom_power
                ));
            }
            if t.z_power > k - 1 {
                return Some(format!("z-degree {} exceeds {}", t.z_power, k - 1));
            }
            if t.numer.valuation().is_some_and(|v| v < 2) {
                return Some(format!("term z^{} lacks the w² factor", t.z_power));
            }
        }
        None
    }
}

impl fmt::Display for RationalZWExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "[{}]·z^{}/(1−w)^{}",
                t.numer.to_string().replace('t', "w"),
                t.z_power,
                t.denom_power
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_zw() -> (BiSeries, BiSeries) {
        let z = BiSeries::from_fn(3, 3, |r, s| rat((r + 2 * s) as i64, 1 + s as i64));
        let w = BiSeries::from_fn(3, 3, |r, s| {
            if r + s == 0 {
                rat(0, 1)
            } else {
                rat(1, (r + s) as i64)
            }
        });
        (z, w)
    }

    #[test]
    fn identity_substitutions() {
        let (z, w) = sample_zw();
        assert_eq!(RationalZWExpr::w().eval(&z, &w).unwrap(), w);
        assert_eq!(RationalZWExpr::z().eval(&z, &w).unwrap(), z);
        let bad_w = w.add_constant(&rat(1, 1));
        assert!(RationalZWExpr::w().eval(&z, &bad_w).is_err());
    }

    #[test]
    fn denominator_uses_geometric_inverse() {
        let (z, w) = sample_zw();
        let e = RationalZWExpr::new(vec![ZWTerm::scaled(2, 2, 1, &[3], 5)]);
        let g = w.geom_inv().unwrap();
        let expected = w.scale(&rat(3, 5)).mul(&z).mul(&z).mul(&g).mul(&g);
        assert_eq!(e.eval(&z, &w).unwrap(), expected);
    }

    #[test]
    fn diagonal_rational_of_w() {
        let (n, m) = RationalZWExpr::w().diagonal_rational();
        assert_eq!(m, 0);
        assert_eq!(n, Poly::from_ints(&[0, 0, 1]));
        let (n, _) = RationalZWExpr::z().diagonal_rational();
        assert_eq!(n, Poly::from_ints(&[0, 2]));
    }
}
