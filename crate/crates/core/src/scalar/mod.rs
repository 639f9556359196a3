//! Exact coefficient fields.
//!
//! A [`Field`] is a small descriptor object (zero-sized for Q and Q(ω), a
//! modulus for prime fields) that performs arithmetic on its element type.
//! Polynomials carry the descriptor in their ring, so generic code never
//! needs an element in hand to produce `0` or `1`.

mod cyclo;
mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;

use num::bigint::BigInt;

pub use cyclo::{CycRat, CyclotomicField};
pub use prime::{cube_root_of_unity_mod, is_prime, PrimeField, PrimeFieldElem};
pub use rational::{Rational, Rationals};

use crate::error::Result;

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// Image of a rational number; prime fields report [`Error::BadPrime`]
    /// when the denominator vanishes.
    ///
    /// [`Error::BadPrime`]: crate::error::Error::BadPrime
    fn from_rational(&self, r: &Rational) -> Result<Self::Elem> {
        self.div(&self.from_bigint(r.numer()), &self.from_bigint(r.denom()))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// In-place `acc += a * b`; prime fields override this with a fused version.
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    /// Whether the element prints as a single signed token (no `+` inside).
    fn is_atomic(&self, a: &Self::Elem) -> bool;

    /// Whether the printed form starts with a minus sign.
    fn is_negative_display(&self, a: &Self::Elem) -> bool;

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    /// Image of `a` under the reduction map into `target` (integers reduced
    /// mod p, ω sent to the target's ω), or `None` when the map is not
    /// defined at `a`.
    fn image_in(&self, _a: &Self::Elem, _target: &PrimeField) -> Option<PrimeFieldElem> {
        None
    }

    /// The image of ω, when the field contains a primitive cube root of unity.
    fn omega(&self) -> Option<Self::Elem> {
        None
    }

    fn name(&self) -> String;
}

/// Display adapter for a field element.
pub struct ElemDisplay<'a, F: Field>(pub &'a F, pub &'a F::Elem);

impl<F: Field> fmt::Display for ElemDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_elem(self.1, f)
    }
}
