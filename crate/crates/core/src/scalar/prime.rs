use std::fmt;

use num::bigint::BigInt;
use num::{Integer, ToPrimitive};

use super::{CycRat, Field, Rational};
use crate::error::{Error, Result};

/// Canonical representative in `[0, p)`; the modulus lives in the owning
/// [`PrimeField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PrimeFieldElem(pub u32);

impl PrimeFieldElem {
    pub fn value(self) -> u32 {
        self.0
    }
}

/// Z/pZ for a prime `3 < p < 2³²`, optionally with a distinguished
/// primitive cube root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    omega: Option<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = 17u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn check_modulus(p: u64) -> Result<u32> {
    if p <= 3 {
        return Err(Error::UnsupportedPrime(p, "modulus must exceed 3"));
    }
    if p > u32::MAX as u64 {
        return Err(Error::UnsupportedPrime(p, "modulus must be below 2^32"));
    }
    if !is_prime(p) {
        return Err(Error::UnsupportedPrime(p, "modulus is not prime"));
    }
    Ok(p as u32)
}

/// A nontrivial cube root of unity modulo `p`: the first `g^((p-1)/3) ≠ 1`
/// over `g = 2, 3, ...`.
pub fn cube_root_of_unity_mod(p: u64) -> Result<PrimeFieldElem> {
    let p32 = check_modulus(p)?;
    if p % 3 != 1 {
        return Err(Error::UnsupportedPrime(p, "p is not 1 mod 3, so it has no primitive cube root of unity"));
    }
    let p = p32 as u64;
    for g in 2..p {
        let w = pow_mod(g, (p - 1) / 3, p);
        if w != 1 {
            debug_assert_eq!((w * w + w + 1) % p, 0);
            return Ok(PrimeFieldElem(w as u32));
        }
    }
    unreachable!("the multiplicative group of a prime field is cyclic")
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        Ok(PrimeField { p: check_modulus(p)?, omega: None })
    }

    /// Prime field with ω mapped to [`cube_root_of_unity_mod`].
    pub fn with_omega(p: u64) -> Result<Self> {
        let w = cube_root_of_unity_mod(p)?;
        Ok(PrimeField { p: p as u32, omega: Some(w.0) })
    }

    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    pub fn elem(&self, n: i64) -> PrimeFieldElem {
        PrimeFieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_bigint(&self, n: &BigInt) -> PrimeFieldElem {
        let r = n.mod_floor(&BigInt::from(self.p));
        PrimeFieldElem(r.to_u32().expect("reduced residue fits"))
    }

    /// Reduction of a rational number; fails when `p` divides the denominator.
    pub fn from_rational(&self, r: &Rational) -> Result<PrimeFieldElem> {
        let den = self.from_bigint(r.denom());
        if den.0 == 0 {
            return Err(Error::BadPrime(self.p as u64));
        }
        let num = self.from_bigint(r.numer());
        Ok(self.mul(&num, &self.inv(&den)?))
    }

    /// Reduction of an element of Q(ω), sending ω to this field's cube root.
    pub fn from_cyc(&self, c: &CycRat) -> Result<PrimeFieldElem> {
        let r0 = self.from_rational(&c.r0)?;
        if c.r1.is_zero() {
            return Ok(r0);
        }
        let w = self
            .omega
            .ok_or(Error::UnsupportedPrime(self.p as u64, "field has no cube root of unity attached"))?;
        let r1 = self.from_rational(&c.r1)?;
        Ok(self.add(&r0, &self.mul(&r1, &PrimeFieldElem(w))))
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: PrimeFieldElem) -> i64 {
        let v = a.0 as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }
}

impl Field for PrimeField {
    type Elem = PrimeFieldElem;

    fn image_in(&self, a: &PrimeFieldElem, target: &PrimeField) -> Option<PrimeFieldElem> {
        (target.p == self.p).then_some(*a)
    }

    fn zero(&self) -> PrimeFieldElem {
        PrimeFieldElem(0)
    }
    fn one(&self) -> PrimeFieldElem {
        PrimeFieldElem(1)
    }
    fn from_i64(&self, n: i64) -> PrimeFieldElem {
        self.elem(n)
    }
    fn from_bigint(&self, n: &BigInt) -> PrimeFieldElem {
        PrimeField::from_bigint(self, n)
    }
    fn from_rational(&self, r: &Rational) -> Result<PrimeFieldElem> {
        PrimeField::from_rational(self, r)
    }
    #[inline]
    fn add(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        PrimeFieldElem(if s >= p { s - p } else { s } as u32)
    }
    #[inline]
    fn sub(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        if a.0 >= b.0 {
            PrimeFieldElem(a.0 - b.0)
        } else {
            PrimeFieldElem((a.0 as u64 + self.p as u64 - b.0 as u64) as u32)
        }
    }
    #[inline]
    fn mul(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32)
    }
    #[inline]
    fn neg(&self, a: &PrimeFieldElem) -> PrimeFieldElem {
        if a.0 == 0 {
            *a
        } else {
            PrimeFieldElem(self.p - a.0)
        }
    }
    fn inv(&self, a: &PrimeFieldElem) -> Result<PrimeFieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(PrimeFieldElem(pow_mod(a.0 as u64, self.p as u64 - 2, self.p as u64) as u32))
    }
    #[inline]
    fn is_zero(&self, a: &PrimeFieldElem) -> bool {
        a.0 == 0
    }
    #[inline]
    fn add_mul_assign(&self, acc: &mut PrimeFieldElem, a: &PrimeFieldElem, b: &PrimeFieldElem) {
        let p = self.p as u64;
        acc.0 = ((acc.0 as u64 + a.0 as u64 * b.0 as u64) % p) as u32;
    }
    fn is_atomic(&self, _a: &PrimeFieldElem) -> bool {
        true
    }
    fn is_negative_display(&self, a: &PrimeFieldElem) -> bool {
        self.signed(*a) < 0
    }
    fn fmt_elem(&self, a: &PrimeFieldElem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed(*a))
    }
    fn omega(&self) -> Option<PrimeFieldElem> {
        self.omega.map(PrimeFieldElem)
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots_small_primes() {
        let w7 = cube_root_of_unity_mod(7).unwrap().0;
        assert!(w7 == 2 || w7 == 4);
        let w13 = cube_root_of_unity_mod(13).unwrap().0;
        assert!(w13 == 3 || w13 == 9);
        assert!(matches!(cube_root_of_unity_mod(5), Err(Error::UnsupportedPrime(5, _))));
        assert!(matches!(cube_root_of_unity_mod(91), Err(Error::UnsupportedPrime(91, _))));
    }

    #[test]
    fn omega_relation_for_default_primes() {
        for p in [7u64, 13, 32029, 2147483629] {
            let f = PrimeField::with_omega(p).unwrap();
            let w = f.omega().unwrap();
            let s = f.add(&f.add(&f.mul(&w, &w), &w), &f.one());
            assert!(f.is_zero(&s), "p = {p}");
        }
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_rational(&Rational::new(1, 2).unwrap()).unwrap(), PrimeFieldElem(4));
        assert_eq!(f.from_rational(&Rational::new(1, 7).unwrap()), Err(Error::BadPrime(7)));
        assert_eq!(f.from_rational(&Rational::from(-1)).unwrap(), PrimeFieldElem(6));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(1 << 33).is_err());
        assert!(is_prime(2147483629));
        assert!(!is_prime(2147483627));
    }

    #[test]
    fn inverse_and_division_by_zero() {
        let f = PrimeField::new(32003).unwrap();
        let a = f.elem(12345);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }
}
