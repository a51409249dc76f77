//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Q`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Q {
    let p = BigInt::one() << (e.unsigned_abs() as usize);
    if e >= 0 {
        Q::from_integer(p)
    } else {
        Q::new(BigInt::one(), p)
    }
}

/// Integer power with a signed exponent.
pub fn powi(x: &Q, e: i64) -> Q {
    let mut acc = one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Parses `-?[0-9]+(/[1-9][0-9]*)?`.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::MalformedRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            let b = d.as_bytes();
            if b.is_empty() || b[0] == b'0' || !b.iter().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    Ok(Q::new(n, d))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Nearest binary64 value, correct even when numerator and denominator
/// individually overflow `f64`.
pub fn to_f64(x: &Q) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = 60 - (nb - db);
    let scaled = if shift >= 0 {
        (x.numer() << (shift as usize)) / x.denom()
    } else {
        x.numer() / (x.denom() << ((-shift) as usize))
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(-shift as i32)
}

/// Exact rational from a finite `f64`.
pub fn from_f64(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(zero)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Q::from_integer(acc)
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u32, k: u32) -> Q {
    if k > n {
        return zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Q::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "91/1024", "-17/512", "12/8"] {
            let x = parse_q(s).unwrap();
            assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
        }
        assert_eq!(fmt_q(&parse_q("12/8").unwrap()), "3/2");
    }

    #[test]
    fn parse_rejects_bad_grammar() {
        for s in ["1/0", "", "-", "1/", "/2", "1.5", "+1", "1/-2", "1/02", "a"] {
            assert!(matches!(parse_q(s), Err(Error::MalformedRational(_))), "{s}");
        }
    }

    #[test]
    fn float_conversion_of_huge_parts() {
        let big = Q::new(BigInt::one() << 2000, (BigInt::one() << 2000) * 3);
        assert!((to_f64(&big) - 1.0 / 3.0).abs() < 1e-15);
        let tiny = Q::new(BigInt::one(), BigInt::one() << 1100);
        assert_eq!(to_f64(&tiny), 0.0);
        assert_eq!(to_f64(&q(-5, 4)), -1.25);
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), qi(120));
        assert_eq!(binomial(6, 2), qi(15));
        assert_eq!(pow2(-3), q(1, 8));
        assert_eq!(powi(&q(2, 3), -2), q(9, 4));
    }
}
