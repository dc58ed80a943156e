use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;

/// A univariate polynomial over the rationals. Zero coefficients are never
/// stored, so `==` is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn monomial(exp: u32, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_coeffs(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(&e, v)| (e, v * c)))
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, c)| (e - 1, c * Rational::from_integer(e.into()))),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner from the top degree down.
        let Some(top) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for e in (0..=top).rev() {
            acc = acc * x + self.coeff(e);
        }
        acc
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: RationalPoly) -> RationalPoly {
        &self + &(-rhs)
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: RationalPoly) -> RationalPoly {
        &self + &rhs
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = RationalPoly::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn x_plus(a: i64) -> RationalPoly {
        RationalPoly::from_coeffs([(0, int(a)), (1, int(1))])
    }

    #[test]
    fn no_stored_zeros() {
        let p = x_plus(1) - x_plus(1);
        assert!(p.is_empty());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn product_and_power() {
        let p = &x_plus(1) * &x_plus(-1);
        assert_eq!(p, RationalPoly::from_coeffs([(0, int(-1)), (2, int(1))]));
        let cube = x_plus(1).pow(3);
        assert_eq!(cube.coeff(2), int(3));
        assert_eq!(cube.eval(&int(1)), int(8));
    }

    #[test]
    fn derivative_and_eval() {
        let p = x_plus(2).pow(2).scale(&rat(1, 2));
        assert_eq!(p.derivative(), x_plus(2));
        assert_eq!(p.eval(&rat(1, 2)), rat(25, 8));
    }
}
