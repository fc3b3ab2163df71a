//! Exact rational helpers on top of `num_rational::BigRational`.
//!
//! Display of a `BigRational` already follows the `num/den` convention with
//! the denominator omitted when it is one, so values print as `7/24`, `3`,
//! `-1/180`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn factorial_q(n: u32) -> Rational {
    from_biguint(factorial(n))
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multinomial coefficient `total! / (parts_1! ... parts_n!)`.
///
/// Zero whenever some entry is negative or the entries do not sum to `total`.
pub fn multinomial(total: i64, parts: &[i64]) -> BigUint {
    if total < 0 || parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != total {
        return BigUint::zero();
    }
    let mut acc = factorial(total as u32);
    for &p in parts {
        acc /= factorial(p as u32);
    }
    acc
}

/// Integer power with a possibly negative exponent. `0^e` for `e < 0` panics.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Parses the `num/den` text form (whitespace tolerated, `den` optional).
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("cannot parse rational `{text}`"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        assert_eq!(ratio(7, 24).to_string(), "7/24");
        assert_eq!(int(3).to_string(), "3");
        assert_eq!(ratio(1, -180).to_string(), "-1/180");
        assert_eq!(ratio(6, 2).to_string(), "3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["7/24", "3", "-1/180", "0"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn multinomial_convention() {
        assert_eq!(multinomial(4, &[4, 0, 0]), BigUint::from(1u32));
        assert_eq!(multinomial(4, &[2, 1, 1]), BigUint::from(12u32));
        assert_eq!(multinomial(2, &[3, -1]), BigUint::zero());
        assert_eq!(multinomial(3, &[1, 1]), BigUint::zero());
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 5), BigUint::zero());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow(&int(2), -3), ratio(1, 8));
        assert_eq!(pow(&ratio(2, 3), 2), ratio(4, 9));
        assert_eq!(pow(&int(5), 0), int(1));
    }
}
