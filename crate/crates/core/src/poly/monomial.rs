use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of variables a ring may have.
pub const MAX_VARS: usize = 16;

/// Exponent vector with a cached total degree.
///
/// Slots past the ring's variable count are always zero, so equality and
/// hashing do not need to know the ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        let mut m = Monomial::one();
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::Structural(format!(
                "{} variables exceed the supported maximum of {MAX_VARS}",
                exps.len()
            )));
        }
        let mut m = Monomial::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u32).sum();
        Ok(m)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Self {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e as u32;
        m.exps[i] = e;
        m
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        Monomial { deg: self.deg + other.deg, exps }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Some(Monomial { deg: other.deg - self.deg, exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0u32;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            deg += exps[i] as u32;
        }
        Monomial { deg, exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0u32;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].min(other.exps[i]);
            deg += exps[i] as u32;
        }
        Monomial { deg, exps }
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, name) in names.iter().enumerate() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Totally ordered image of a monomial under a fixed [`MonomialOrder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey([u32; MAX_VARS + 1]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A monomial order: a kind plus a variable precedence (most significant
/// variable first), given as a permutation of ring variable indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    nvars: u8,
    perm: [u8; MAX_VARS],
}

impl MonomialOrder {
    /// Order with the ring's own variable sequence as precedence.
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        let mut perm = [0u8; MAX_VARS];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        MonomialOrder { kind, nvars: nvars as u8, perm }
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::new(OrderKind::DegRevLex, nvars)
    }

    pub fn with_precedence(kind: OrderKind, precedence: &[usize]) -> Result<Self> {
        let n = precedence.len();
        if n > MAX_VARS {
            return Err(Error::Structural("too many variables".into()));
        }
        let mut seen = [false; MAX_VARS];
        let mut perm = [0u8; MAX_VARS];
        for (k, &i) in precedence.iter().enumerate() {
            if i >= n || seen[i] {
                return Err(Error::Structural(format!(
                    "precedence {precedence:?} is not a permutation"
                )));
            }
            seen[i] = true;
            perm[k] = i as u8;
        }
        Ok(MonomialOrder { kind, nvars: n as u8, perm })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn precedence(&self) -> impl Iterator<Item = usize> + '_ {
        self.perm[..self.nvars as usize].iter().map(|&i| i as usize)
    }

    #[inline]
    /// A key whose lexicographic order agrees with this monomial order.
    pub fn key(&self, m: &Monomial) -> OrderKey {
        let n = self.nvars as usize;
        let mut k = [0u32; MAX_VARS + 1];
        match self.kind {
            OrderKind::Lex => {
                for (slot, &i) in k[1..].iter_mut().zip(&self.perm[..n]) {
                    *slot = m.exps[i as usize] as u32;
                }
            }
            OrderKind::DegRevLex => {
                k[0] = m.deg;
                for (slot, &i) in k[1..].iter_mut().zip(self.perm[..n].iter().rev()) {
                    *slot = u32::MAX - m.exps[i as usize] as u32;
                }
            }
        }
        OrderKey(k)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = self.nvars as usize;
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.perm[..n] {
                    let (x, y) = (a.exps[i as usize], b.exps[i as usize]);
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                for &i in self.perm[..n].iter().rev() {
                    let (x, y) = (a.exps[i as usize], b.exps[i as usize]);
                    if x != y {
                        return y.cmp(&x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec: Vec<usize> = self.precedence().collect();
        write!(f, "{:?}{:?}", self.kind, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e).unwrap()
    }

    #[test]
    fn lex_and_degrevlex() {
        let lex = MonomialOrder::lex(3);
        let drl = MonomialOrder::degrevlex(3);
        // x > y^5 in lex, reversed in degrevlex
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Greater);
        assert_eq!(drl.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Less);
        // degrevlex tie-break: x*z < y^2 (smaller power of the last variable wins)
        assert_eq!(drl.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(drl.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(lex.cmp(&Monomial::one(), &m(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn precedence_permutes_lex() {
        let o = MonomialOrder::with_precedence(OrderKind::Lex, &[2, 0, 1]).unwrap();
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[3, 3, 0])), Ordering::Greater);
        assert!(MonomialOrder::with_precedence(OrderKind::Lex, &[0, 0, 1]).is_err());
    }

    #[test]
    fn divisibility_lcm_gcd() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert!(m(&[1, 1, 0]).divides(&a));
        assert_eq!(m(&[1, 1, 0]).div_into(&a), Some(m(&[1, 0, 0])));
        assert_eq!(b.div_into(&a), None);
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 2, 1])));
        assert_eq!(a.mul(&b).degree(), 8);
    }

    proptest::proptest! {
        #[test]
        fn key_agrees_with_cmp(a in proptest::collection::vec(0u16..6, 4),
                               b in proptest::collection::vec(0u16..6, 4),
                               lex in proptest::bool::ANY) {
            let kind = if lex { OrderKind::Lex } else { OrderKind::DegRevLex };
            let o = MonomialOrder::with_precedence(kind, &[3, 1, 0, 2]).unwrap();
            let (a, b) = (m(&a), m(&b));
            proptest::prop_assert_eq!(o.key(&a).cmp(&o.key(&b)), o.cmp(&a, &b));
        }
    }
}
