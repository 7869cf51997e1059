//! Small exact-arithmetic helpers shared by the series kernel and the
//! counting modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `[0!, 1!, ..., n!]`
pub fn factorials(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigUint::one();
    out.push(acc.clone());
    for i in 1..=n {
        acc *= i as u64;
        out.push(acc.clone());
    }
    out
}

/// Pascal triangle rows `0..=n`; `table[a][b] = C(a, b)`.
pub fn binomial_table(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for a in 0..=n {
        let mut row = vec![BigUint::one(); a + 1];
        for b in 1..a {
            row[b] = &rows[a - 1][b - 1] + &rows[a - 1][b];
        }
        rows.push(row);
    }
    rows
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn upow(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Falling factorial `n (n-1) ... (n-k+1)`; empty product is 1.
pub fn falling(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        if i >= n {
            return BigUint::zero();
        }
        acc *= n - i;
    }
    acc
}

/// Rational power with integer (possibly negative) exponent, `0^0 = 1`.
pub fn rpow(base: &Rational, exp: i64) -> Option<Rational> {
    if exp >= 0 {
        Some(num_traits::pow(base.clone(), exp as usize))
    } else if base.is_zero() {
        None
    } else {
        Some(num_traits::pow(base.recip(), (-exp) as usize))
    }
}

/// Natural log of a positive big integer, accurate to f64 precision even when
/// the integer itself overflows f64.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Signed variant of [`ln_biguint`]: returns `(sign, ln|x|)`.
pub fn ln_abs_bigint(x: &BigInt) -> (i8, f64) {
    let sign = if x.is_negative() { -1 } else { 1 };
    (sign, ln_biguint(x.magnitude()))
}

/// Extract the integer value of a rational, if it has denominator 1.
pub fn as_integer(q: &Rational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

pub fn as_natural(q: &Rational) -> Option<BigUint> {
    as_integer(q).and_then(|n| n.to_biguint())
}

/// Format `exp(ln_value)` as a decimal scientific string without going through
/// an overflowing f64.
pub fn sci_from_ln(ln_value: f64) -> String {
    let log10 = ln_value / std::f64::consts::LN_10;
    let mut exp = log10.floor();
    let mut mantissa = 10f64.powf(log10 - exp);
    if mantissa >= 9.9999995 {
        mantissa = 1.0;
        exp += 1.0;
    }
    format!("{mantissa:.6}e{}", exp as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_table() {
        let t = binomial_table(12);
        for n in 0..=12u64 {
            for k in 0..=n {
                assert_eq!(t[n as usize][k as usize], binomial(n, k));
            }
        }
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn ln_of_huge_integer() {
        let x = upow(2000, 2000);
        let expected = 2000.0 * 2000f64.ln();
        assert!((ln_biguint(&x) - expected).abs() / expected < 1e-12);
        assert!((ln_biguint(&BigUint::from(10u32)) - 10f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn sci_string() {
        assert_eq!(sci_from_ln(1000f64.ln()), "1.000000e3");
        assert_eq!(sci_from_ln(0.0), "1.000000e0");
    }

    #[test]
    fn zero_to_zero_is_one() {
        assert_eq!(upow(0, 0), BigUint::one());
        assert_eq!(rpow(&rat(0, 1), 0), Some(rat(1, 1)));
        assert_eq!(rpow(&rat(0, 1), -1), None);
        assert_eq!(rpow(&rat(2, 3), -2), Some(rat(9, 4)));
    }
}
