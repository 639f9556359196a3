use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{same_ring, Monomial, PolyRing, RationalFunction};
use crate::error::{Error, Result};
use crate::scalar::{ElemDisplay, Field};

/// Sparse polynomial: nonzero terms strictly decreasing in the ring's order.
/// The zero polynomial has no terms.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        MultiPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn from_i64(ring: &Arc<PolyRing<F>>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, m: Monomial, c: F::Elem) -> Self {
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        MultiPoly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    pub fn var(ring: &Arc<PolyRing<F>>, name: &str) -> Result<Self> {
        Ok(Self::var_index(ring, ring.var_index(name)?))
    }

    pub fn var_index(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        assert!(i < ring.nvars());
        Self::monomial(ring, Monomial::var(i), ring.field().one())
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        let order = *ring.order();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        let field = ring.field();
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if field.is_zero(lc) {
                out.pop();
            }
        }
        MultiPoly { ring: ring.clone(), terms: out }
    }

    /// Caller guarantees the terms are sorted, distinct and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field().is_zero(c)));
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }

    pub fn constant_value(&self) -> Option<F::Elem> {
        if self.is_zero() {
            Some(self.field().zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_term(&self) -> Option<Self> {
        self.terms
            .first()
            .map(|(m, c)| Self::monomial(&self.ring, *m, c.clone()))
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.0.exp(var)).max().unwrap_or(0)
    }

    /// Total degree in a subset of the variables.
    pub fn degree_in_vars(&self, vars: &[usize]) -> u32 {
        self.terms
            .iter()
            .map(|t| vars.iter().map(|&v| t.0.exp(v) as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let field = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &F::Elem| if negate { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, fix(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { field.sub(&a[i].1, &b[j].1) } else { field.add(&a[i].1, &b[j].1) };
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, fix(c))));
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(big.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(c) => field.add_mul_assign(c, ca, cb),
                    None => {
                        acc.insert(m, field.mul(ca, cb));
                    }
                }
            }
        }
        let order = *self.ring.order();
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly { ring: self.ring.clone(), terms }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), field.mul(cc, c)))
            .collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// `self - c · m · g`, merged in one pass.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        let field = self.field();
        let order = self.ring.order();
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match order.cmp(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, field.neg(&field.mul(c, &b[j].1))));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
                    if !field.is_zero(&v) {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(bm, bc)| (bm.mul(m), field.neg(&field.mul(c, bc)))));
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    /// Exact quotient `self / q`, or [`Error::NotDivisible`].
    pub fn exact_div(&self, q: &Self) -> Result<Self> {
        same_ring(&self.ring, &q.ring)?;
        let (qm, qc) = match q.terms.first() {
            None => return Err(Error::DivisionByZero),
            Some(t) => t,
        };
        let field = self.field();
        let qc_inv = field.inv(qc)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        if q.len() == 1 {
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                let mm = qm.div_into(m).ok_or(Error::NotDivisible)?;
                terms.push((mm, field.mul(c, &qc_inv)));
            }
            return Ok(MultiPoly { ring: self.ring.clone(), terms });
        }
        // Quick rejection: total degrees and per-variable degrees must fit.
        for v in 0..self.ring.nvars() {
            if q.degree_in(v) > self.degree_in(v) {
                return Err(Error::NotDivisible);
            }
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            let m = qm.div_into(rm).ok_or(Error::NotDivisible)?;
            let c = field.mul(rc, &qc_inv);
            rem = rem.sub_mul_term(&c, &m, q);
            quot.push((m, c));
        }
        let quot = MultiPoly::from_sorted(&self.ring, quot);
        debug_assert!(quot.mul_impl(q) == *self);
        Ok(quot)
    }

    pub fn is_divisible_by(&self, q: &Self) -> bool {
        self.exact_div(q).is_ok()
    }

    /// Evaluation at a full point given in ring variable order.
    pub fn evaluate_at(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Structural(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        let field = self.field();
        let n = self.ring.nvars();
        // cache of powers per variable
        let mut powers: Vec<Vec<F::Elem>> = point.iter().map(|x| vec![field.one(), x.clone()]).collect();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..n {
                let e = m.exp(v) as usize;
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e {
                    let next = field.mul(powers[v].last().unwrap(), &point[v]);
                    powers[v].push(next);
                }
                t = field.mul(&t, &powers[v][e]);
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluation at a named point; every occurring variable must be bound.
    pub fn evaluate(&self, point: &HashMap<String, F::Elem>) -> Result<F::Elem> {
        let mut full = Vec::with_capacity(self.ring.nvars());
        for (v, name) in self.ring.vars().iter().enumerate() {
            match point.get(name) {
                Some(x) => full.push(x.clone()),
                None if self.degree_in(v) == 0 => full.push(self.field().zero()),
                None => return Err(Error::UnboundVariable(name.clone())),
            }
        }
        self.evaluate_at(&full)
    }

    /// Partially evaluates the given variables, leaving the rest symbolic.
    pub fn partial_eval(&self, bindings: &[(usize, F::Elem)]) -> Self {
        let field = self.field();
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut mm = *m;
            let mut cc = c.clone();
            for (v, x) in bindings {
                let e = m.exp(*v);
                if e > 0 {
                    cc = field.mul(&cc, &field.pow(x, e as u32));
                    mm = mm.with_exp(*v, 0);
                }
            }
            terms.push((mm, cc));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Substitutes rational functions for variables; unbound variables pass
    /// through unchanged.
    ///
    /// The result's denominator is the product of binding denominators, each
    /// raised to the maximal degree of its variable in `self`.
    pub fn substitute(&self, bindings: &[(usize, RationalFunction<F>)]) -> Result<RationalFunction<F>> {
        for (_, rf) in bindings {
            same_ring(&self.ring, rf.ring())?;
        }
        let ring = &self.ring;
        let maxdeg: Vec<u16> = bindings.iter().map(|(v, _)| self.degree_in(*v)).collect();
        // powers[k][e] = num_k^e, dpowers[k][e] = den_k^e
        let mut npow: Vec<Vec<Self>> = Vec::new();
        let mut dpow: Vec<Vec<Self>> = Vec::new();
        for ((_, rf), &d) in bindings.iter().zip(&maxdeg) {
            let mut np = vec![Self::one(ring)];
            let mut dp = vec![Self::one(ring)];
            for _ in 0..d {
                np.push(np.last().unwrap().mul_impl(rf.numer()));
                dp.push(dp.last().unwrap().mul_impl(rf.denom()));
            }
            npow.push(np);
            dpow.push(dp);
        }
        let mut num = Self::zero(ring);
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut t = Self::one(ring);
            for (k, (v, _)) in bindings.iter().enumerate() {
                let e = m.exp(*v) as usize;
                rest = rest.with_exp(*v, 0);
                t = t.mul_impl(&npow[k][e]).mul_impl(&dpow[k][maxdeg[k] as usize - e]);
            }
            num = num.merge(&t.mul_term(&rest, c), false);
        }
        let mut den = Self::one(ring);
        for (k, &d) in maxdeg.iter().enumerate() {
            den = den.mul_impl(&dpow[k][d as usize]);
        }
        RationalFunction::new(num, den)
    }

    /// Substitution with polynomial bindings.
    pub fn compose(&self, bindings: &[(usize, Self)]) -> Result<Self> {
        let rb: Vec<_> = bindings
            .iter()
            .map(|(v, p)| (*v, RationalFunction::from_poly(p.clone())))
            .collect();
        let rf = self.substitute(&rb)?;
        Ok(rf.numer().clone())
    }

    /// Substitutes by variable name.
    pub fn substitute_named(&self, bindings: &[(&str, RationalFunction<F>)]) -> Result<RationalFunction<F>> {
        let mut idx = Vec::with_capacity(bindings.len());
        for (name, rf) in bindings {
            idx.push((self.ring.var_index(name)?, rf.clone()));
        }
        self.substitute(&idx)
    }

    /// Termwise image under a coefficient homomorphism into a ring with the
    /// same number of variables; zero images are dropped.
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Arc<PolyRing<G>>,
        hom: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<MultiPoly<G>> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::Structural("target ring has a different number of variables".into()));
        }
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((*m, hom(c)?));
        }
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Moves the polynomial into another ring over the same field, matching
    /// variables by name.
    pub fn convert(&self, target: &Arc<PolyRing<F>>) -> Result<Self> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (v, name) in self.ring.vars().iter().enumerate() {
            match target.var_index(name) {
                Ok(i) => map.push(Some(i)),
                Err(_) if self.degree_in(v) == 0 => map.push(None),
                Err(e) => return Err(e),
            }
        }
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut e = [0u16; super::MAX_VARS];
            for (v, slot) in map.iter().enumerate() {
                if let Some(i) = slot {
                    e[*i] = m.exp(v);
                }
            }
            terms.push((Monomial::from_exps(&e[..target.nvars()])?, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Coefficients with respect to one variable: `self = Σ_k out[k] · var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            buckets[e].push((m.with_exp(var, 0), c.clone()));
        }
        // Each bucket stays sorted: removing a fixed power of `var` from all
        // terms preserves their relative order.
        buckets
            .into_iter()
            .map(|t| MultiPoly::from_sorted(&self.ring, t))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(ring: &Arc<PolyRing<F>>, var: usize, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let xk = Monomial::var_pow(var, k as u16);
            for (m, cc) in &c.terms {
                debug_assert_eq!(m.exp(var), 0);
                terms.push((m.mul(&xk), cc.clone()));
            }
        }
        Self::from_terms(ring, terms)
    }

    pub fn display(&self) -> PolyDisplay<'_, F> {
        PolyDisplay(self)
    }
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for MultiPoly<F> {}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&PolyDisplay(self), f)
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&PolyDisplay(self), f)
    }
}

/// Prints a polynomial in the textual grammar accepted by the parser.
pub struct PolyDisplay<'a, F: Field>(pub &'a MultiPoly<F>);

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.0;
        let field = p.field();
        let names = p.ring.vars();
        if p.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in p.terms.iter().enumerate() {
            let neg = field.is_negative_display(c) && field.is_atomic(c);
            let c_abs = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", ElemDisplay(field, &c_abs))?;
            } else {
                if !field.is_one(&c_abs) {
                    write!(f, "{}*", ElemDisplay(field, &c_abs))?;
                }
                m.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

macro_rules! impl_ops {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<F: Field> $tr<&MultiPoly<F>> for &MultiPoly<F> {
            type Output = MultiPoly<F>;
            /// Panics if the operands live in different rings; use the
            /// `checked_*` methods to get an error instead.
            fn $m(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
                self.$checked(rhs).expect("polynomial operands must share a ring")
            }
        }
        impl<F: Field> $tr for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}

impl_ops!(Add, add, checked_add);
impl_ops!(Sub, sub, checked_sub);
impl_ops!(Mul, mul, checked_mul);

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        let field = self.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect(),
        }
    }
}

impl<F: Field> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, OrderKind};
    use crate::scalar::{CyclotomicField, PrimeField, Rational, Rationals};

    fn qring(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, vars, OrderKind::Lex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = qring(&["x", "y"]);
        let x = MultiPoly::var(&r, "x").unwrap();
        let y = MultiPoly::var(&r, "y").unwrap();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, parse_poly(&r, "x^2 - y^2").unwrap());
        assert_eq!(&p + &MultiPoly::zero(&r), p);
    }

    #[test]
    fn cyclotomic_product_expansion() {
        let r = PolyRing::new(CyclotomicField, &["u", "v", "x", "y", "a", "b"], OrderKind::Lex).unwrap();
        let p = parse_poly(&r, "(v*x - y^2)*(v*x - w*y^2)").unwrap();
        let expected = parse_poly(&r, "v^2*x^2 - (1+w)*v*x*y^2 + w*y^4").unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn exact_division() {
        let r = qring(&["x", "y"]);
        let p = parse_poly(&r, "x^2 - y^2").unwrap();
        let q = parse_poly(&r, "x - y").unwrap();
        assert_eq!(p.exact_div(&q).unwrap(), parse_poly(&r, "x + y").unwrap());
        let p2 = parse_poly(&r, "x^2 + 1").unwrap();
        assert_eq!(p2.exact_div(&q), Err(Error::NotDivisible));
        assert_eq!(p.exact_div(&MultiPoly::zero(&r)), Err(Error::DivisionByZero));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = qring(&["x", "y"]);
        let r2 = qring(&["x", "z"]);
        let a = MultiPoly::var(&r1, "x").unwrap();
        let b = MultiPoly::var(&r2, "x").unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn evaluation() {
        let r = qring(&["x", "y"]);
        let p = parse_poly(&r, "x^2 + y").unwrap();
        let mut pt = HashMap::new();
        pt.insert("x".to_string(), Rational::from(2));
        assert_eq!(p.evaluate(&pt), Err(Error::UnboundVariable("y".into())));
        pt.insert("y".to_string(), Rational::from(3));
        assert_eq!(p.evaluate(&pt).unwrap(), Rational::from(7));

        let rc = PolyRing::new(CyclotomicField, &["x"], OrderKind::Lex).unwrap();
        let w = parse_poly(&rc, "w^2 + w + 1").unwrap();
        assert!(w.is_zero());
        assert!(w.evaluate(&HashMap::new()).unwrap().is_zero());
    }

    #[test]
    fn substitution_of_rational_functions() {
        let r = qring(&["X", "Y", "u", "v"]);
        let p = parse_poly(&r, "X*Y").unwrap();
        let x_img = RationalFunction::new(parse_poly(&r, "u").unwrap(), parse_poly(&r, "Y").unwrap()).unwrap();
        let y_img = RationalFunction::new(parse_poly(&r, "v*X").unwrap(), parse_poly(&r, "Y").unwrap()).unwrap();
        let img = p.substitute_named(&[("X", x_img), ("Y", y_img)]).unwrap();
        let expected = RationalFunction::new(parse_poly(&r, "u*v*X").unwrap(), parse_poly(&r, "Y^2").unwrap()).unwrap();
        assert!(img.equals(&expected).unwrap());
        let same = p.substitute(&[]).unwrap();
        assert_eq!(same.numer(), &p);
        assert!(same.denom().is_one());
    }

    #[test]
    fn coefficient_maps() {
        let r = qring(&["x"]);
        let f7 = PrimeField::with_omega(7).unwrap();
        let r7 = r.over(f7);
        let p = parse_poly(&r, "1/2*x + 3").unwrap();
        let img = p.map_coefficients(&r7, |c| f7.from_rational(c)).unwrap();
        assert_eq!(img, parse_poly(&r7, "4*x + 3").unwrap());
        let bad = parse_poly(&r, "1/7*x").unwrap();
        assert_eq!(bad.map_coefficients(&r7, |c| f7.from_rational(c)), Err(Error::BadPrime(7)));

        let rc = PolyRing::new(CyclotomicField, &["x"], OrderKind::Lex).unwrap();
        let wx = parse_poly(&rc, "w*x").unwrap();
        let img = wx.map_coefficients(&r7, |c| f7.from_cyc(c)).unwrap();
        let w7 = f7.omega().unwrap();
        assert_eq!(img, MultiPoly::monomial(&r7, Monomial::var(0), w7));
    }

    #[test]
    fn coefficients_roundtrip() {
        let r = qring(&["x", "y", "z"]);
        let p = parse_poly(&r, "3*x^2*y + x*z - y^3*z + 7").unwrap();
        let cs = p.coefficients_in(1);
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[1], parse_poly(&r, "3*x^2").unwrap());
        assert_eq!(MultiPoly::from_coefficients_in(&r, 1, &cs), p);
    }

    #[test]
    fn display_roundtrip() {
        let r = PolyRing::new(CyclotomicField, &["x", "y"], OrderKind::DegRevLex).unwrap();
        let p = parse_poly(&r, "18*x*(x-1)*(x - w*y^2) - 1/3*y + (2-w)").unwrap();
        let s = p.to_string();
        assert_eq!(parse_poly(&r, &s).unwrap(), p);
    }
}
