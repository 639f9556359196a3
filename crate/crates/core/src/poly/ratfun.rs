use std::fmt;
use std::sync::Arc;

use super::{same_ring, MultiPoly, PolyRing};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Quotient of two polynomials with a nonzero denominator. No canonical
/// form is maintained; equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction<F: Field> {
    num: MultiPoly<F>,
    den: MultiPoly<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: MultiPoly<F>, den: MultiPoly<F>) -> Result<Self> {
        same_ring(num.ring(), den.ring())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: MultiPoly<F>) -> Self {
        let den = MultiPoly::one(p.ring());
        RationalFunction { num: p, den }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.num.ring()
    }

    pub fn numer(&self) -> &MultiPoly<F> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = self.num.checked_mul(&other.den)?.checked_add(&other.num.checked_mul(&self.den)?)?;
        Self::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let num = self.num.checked_mul(&other.den)?.checked_sub(&other.num.checked_mul(&self.den)?)?;
        Self::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.checked_mul(&other.den)?, self.den.checked_mul(&other.num)?)
    }

    /// `self == other` as rational functions.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.num.checked_mul(&other.den)? == other.num.checked_mul(&self.den)?)
    }

    /// Divides numerator and denominator by a common exact factor.
    pub fn cancel_by(&self, g: &MultiPoly<F>) -> Result<Self> {
        Self::new(self.num.exact_div(g)?, self.den.exact_div(g)?)
    }

    pub fn evaluate_at(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let n = self.num.evaluate_at(point)?;
        let d = self.den.evaluate_at(point)?;
        self.num.field().div(&n, &d)
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, OrderKind};
    use crate::scalar::Rationals;

    #[test]
    fn cross_multiplication_equality() {
        let r = PolyRing::new(Rationals, &["x", "y"], OrderKind::Lex).unwrap();
        let a = RationalFunction::new(parse_poly(&r, "x^2-y^2").unwrap(), parse_poly(&r, "x-y").unwrap()).unwrap();
        let b = RationalFunction::from_poly(parse_poly(&r, "x+y").unwrap());
        assert!(a.equals(&b).unwrap());
        let c = a.sub(&b).unwrap();
        assert!(c.is_zero());
        assert_eq!(
            RationalFunction::new(parse_poly(&r, "x").unwrap(), MultiPoly::zero(&r)).unwrap_err(),
            Error::DivisionByZero
        );
    }
}
