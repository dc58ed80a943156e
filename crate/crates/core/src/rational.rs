//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator, so structural equality is value
//! equality.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `base^exp` for a possibly negative exponent.
pub fn pow(base: &Rational, exp: i32) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_on_construction() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 5), Rational::zero());
        assert_eq!(rat(0, 5).denom(), &BigInt::from(1));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(format(&rat(4, 2)), "2");
        assert_eq!(format(&rat(-1, 3)), "-1/3");
    }

    #[test]
    fn signs_and_powers() {
        assert_eq!(sign(3), int(-1));
        assert_eq!(sign(-2), int(1));
        assert_eq!(pow(&int(-2), 3), int(-8));
        assert_eq!(pow(&int(2), -2), rat(1, 4));
    }
}
