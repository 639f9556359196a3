use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;

use super::{Field, PrimeField, PrimeFieldElem, Rational};
use crate::error::{Error, Result};

/// Element `r0 + r1·ω` of Q(ω), where ω² + ω + 1 = 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycRat {
    pub r0: Rational,
    pub r1: Rational,
}

impl CycRat {
    pub fn new(r0: Rational, r1: Rational) -> Self {
        CycRat { r0, r1 }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycRat { r0: r, r1: Rational::zero() }
    }

    pub fn from_i64(n: i64) -> Self {
        CycRat::from_rational(Rational::from(n))
    }

    pub fn zero() -> Self {
        CycRat::default()
    }

    pub fn one() -> Self {
        CycRat::from_i64(1)
    }

    pub fn omega() -> Self {
        CycRat { r0: Rational::zero(), r1: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.r1.is_zero()
    }

    /// Galois conjugation ω ↦ ω² = −1 − ω.
    pub fn conj(&self) -> Self {
        CycRat { r0: &self.r0 - &self.r1, r1: -&self.r1 }
    }

    /// Field norm z·conj(z) = r0² − r0·r1 + r1².
    pub fn norm(&self) -> Rational {
        &(&(&self.r0 * &self.r0) - &(&self.r0 * &self.r1)) + &(&self.r1 * &self.r1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm().inv()?;
        let c = self.conj();
        Ok(CycRat { r0: &c.r0 * &n, r1: &c.r1 * &n })
    }

    pub fn pow(&self, e: u32) -> Self {
        CyclotomicField.pow(self, e)
    }

    /// True when both components are integers, i.e. the element lies in Z[ω].
    pub fn is_integral(&self) -> bool {
        self.r0.is_integer() && self.r1.is_integer()
    }
}

impl Add<&CycRat> for &CycRat {
    type Output = CycRat;
    fn add(self, rhs: &CycRat) -> CycRat {
        CycRat { r0: &self.r0 + &rhs.r0, r1: &self.r1 + &rhs.r1 }
    }
}

impl Sub<&CycRat> for &CycRat {
    type Output = CycRat;
    fn sub(self, rhs: &CycRat) -> CycRat {
        CycRat { r0: &self.r0 - &rhs.r0, r1: &self.r1 - &rhs.r1 }
    }
}

impl Mul<&CycRat> for &CycRat {
    type Output = CycRat;
    fn mul(self, rhs: &CycRat) -> CycRat {
        if self.r1.is_zero() && rhs.r1.is_zero() {
            return CycRat::from_rational(&self.r0 * &rhs.r0);
        }
        // (a0 + a1ω)(b0 + b1ω) with ω² = −1 − ω
        let a1b1 = &self.r1 * &rhs.r1;
        let r0 = &(&self.r0 * &rhs.r0) - &a1b1;
        let r1 = &(&(&self.r0 * &rhs.r1) + &(&self.r1 * &rhs.r0)) - &a1b1;
        CycRat { r0, r1 }
    }
}

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat { r0: -&self.r0, r1: -&self.r1 }
    }
}

impl fmt::Debug for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wpart = |f: &mut fmt::Formatter<'_>, r: &Rational| {
            if r.is_one() {
                write!(f, "w")
            } else if (-r).is_one() {
                write!(f, "-w")
            } else {
                write!(f, "{r}*w")
            }
        };
        match (self.r0.is_zero(), self.r1.is_zero()) {
            (_, true) => write!(f, "{}", self.r0),
            (true, false) => wpart(f, &self.r1),
            (false, false) => {
                write!(f, "({}", self.r0)?;
                if self.r1.is_negative() {
                    write!(f, " - ")?;
                    wpart(f, &self.r1.abs())?;
                } else {
                    write!(f, " + ")?;
                    wpart(f, &self.r1)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// The cyclotomic field Q(ω) as a rank-2 Q-module.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CyclotomicField;

impl Field for CyclotomicField {
    fn image_in(&self, a: &CycRat, target: &PrimeField) -> Option<PrimeFieldElem> {
        let w = target.omega()?;
        let r0 = target.from_rational(&a.r0).ok()?;
        let r1 = target.from_rational(&a.r1).ok()?;
        Some(target.add(&r0, &target.mul(&r1, &w)))
    }
    type Elem = CycRat;

    fn zero(&self) -> CycRat {
        CycRat::zero()
    }
    fn one(&self) -> CycRat {
        CycRat::one()
    }
    fn from_i64(&self, n: i64) -> CycRat {
        CycRat::from_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> CycRat {
        CycRat::from_rational(Rational::from_integer(n.clone()))
    }
    fn from_rational(&self, r: &Rational) -> Result<CycRat> {
        Ok(CycRat::from_rational(r.clone()))
    }
    fn add(&self, a: &CycRat, b: &CycRat) -> CycRat {
        a + b
    }
    fn sub(&self, a: &CycRat, b: &CycRat) -> CycRat {
        a - b
    }
    fn mul(&self, a: &CycRat, b: &CycRat) -> CycRat {
        a * b
    }
    fn neg(&self, a: &CycRat) -> CycRat {
        -a
    }
    fn inv(&self, a: &CycRat) -> Result<CycRat> {
        a.inv()
    }
    fn is_zero(&self, a: &CycRat) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &CycRat) -> bool {
        a.r1.is_zero() && a.r0.is_one()
    }
    fn is_atomic(&self, a: &CycRat) -> bool {
        a.r0.is_zero() || a.r1.is_zero()
    }
    fn is_negative_display(&self, a: &CycRat) -> bool {
        if a.r1.is_zero() {
            a.r0.is_negative()
        } else {
            a.r0.is_zero() && a.r1.is_negative()
        }
    }
    fn fmt_elem(&self, a: &CycRat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(a, f)
    }
    fn omega(&self) -> Option<CycRat> {
        Some(CycRat::omega())
    }
    fn name(&self) -> String {
        "QQ(w)".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squared_and_cubed() {
        let w = CycRat::omega();
        let w2 = &w * &w;
        assert_eq!(w2, CycRat::new(Rational::from(-1), Rational::from(-1)));
        assert_eq!(&w2 * &w, CycRat::one());
        assert_eq!(w.pow(3), CycRat::one());
        assert!((&(&w2 + &w) + &CycRat::one()).is_zero());
    }

    #[test]
    fn inverse_of_omega_is_its_square() {
        let w = CycRat::omega();
        assert_eq!(w.inv().unwrap(), &w * &w);
        assert_eq!(CycRat::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation_fixes_rationals() {
        let r = CycRat::from_rational(Rational::new(3, 7).unwrap());
        assert_eq!(r.conj(), r);
        assert_eq!(CycRat::omega().conj(), &CycRat::omega() * &CycRat::omega());
    }

    #[test]
    fn display() {
        assert_eq!(CycRat::omega().to_string(), "w");
        let x = CycRat::new(Rational::from(2), Rational::from(-3));
        assert_eq!(x.to_string(), "(2 - 3*w)");
    }
}
