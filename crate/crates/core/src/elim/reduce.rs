//! Multivariate division with a sorted-map accumulator.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::poly::{Monomial, MonomialOrder, MultiPoly, OrderKey, MAX_VARS};
use crate::scalar::Field;

/// Bit `i` set iff variable `i` occurs.
pub(crate) fn divmask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for (i, &e) in m.exps().iter().enumerate().take(MAX_VARS) {
        if e != 0 {
            mask |= 1 << i;
        }
    }
    mask
}

/// A polynomial under construction, keyed by order so the leading term can
/// be popped in logarithmic time.
pub(crate) struct Accumulator<F: Field> {
    order: MonomialOrder,
    map: BTreeMap<OrderKey, (Monomial, F::Elem)>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(p: &MultiPoly<F>) -> Self {
        let order = *p.ring().order();
        let map = p.terms().iter().map(|(m, c)| (order.key(m), (*m, c.clone()))).collect();
        Accumulator { order, map }
    }

    /// `self -= c · m · g`, skipping the leading term of `g` (assumed to
    /// cancel the term just popped).
    pub fn sub_scaled_tail(&mut self, field: &F, c: &F::Elem, m: &Monomial, g: &MultiPoly<F>) {
        for (gm, gc) in &g.terms()[1..] {
            let mm = gm.mul(m);
            let key = self.order.key(&mm);
            let t = field.mul(c, gc);
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert((mm, field.neg(&t)));
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let v = field.sub(&e.get().1, &t);
                    if field.is_zero(&v) {
                        e.remove();
                    } else {
                        e.get_mut().1 = v;
                    }
                }
            }
        }
    }

    pub fn pop_lead(&mut self) -> Option<(Monomial, F::Elem)> {
        self.map.pop_last().map(|(_, t)| t)
    }
}

/// Reducer set with cached leading data.
pub(crate) struct Reducers<'a, F: Field> {
    polys: Vec<&'a MultiPoly<F>>,
    lms: Vec<Monomial>,
    masks: Vec<u32>,
    lc_inv: Vec<F::Elem>,
}

impl<'a, F: Field> Reducers<'a, F> {
    pub fn new(polys: Vec<&'a MultiPoly<F>>) -> Self {
        let mut lms = Vec::with_capacity(polys.len());
        let mut masks = Vec::with_capacity(polys.len());
        let mut lc_inv = Vec::with_capacity(polys.len());
        for p in &polys {
            let lm = *p.leading_monomial().expect("reducers are nonzero");
            masks.push(divmask(&lm));
            lms.push(lm);
            lc_inv.push(p.field().inv(p.leading_coeff().unwrap()).expect("nonzero"));
        }
        Reducers { polys, lms, masks, lc_inv }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = divmask(m);
        (0..self.polys.len()).find(|&i| self.masks[i] & !mask == 0 && self.lms[i].divides(m))
    }

    /// Fully reduces `p`. Quotient terms `(index, monomial, coefficient)` are
    /// appended to `quotients` when given, so that
    /// `p = Σ coeff · mono · polys[index] + remainder`.
    /// Returns `None` if `deadline` passes first.
    pub fn reduce(
        &self,
        p: &MultiPoly<F>,
        mut quotients: Option<&mut Vec<(usize, Monomial, F::Elem)>>,
        deadline: Option<Instant>,
    ) -> Option<MultiPoly<F>> {
        let field = p.field();
        let mut acc = Accumulator::new(p);
        let mut rem = Vec::new();
        let mut steps = 0u32;
        while let Some((m, c)) = acc.pop_lead() {
            steps = steps.wrapping_add(1);
            if steps.is_multiple_of(512) && deadline.is_some_and(|d| Instant::now() > d) {
                return None;
            }
            match self.find(&m) {
                Some(i) => {
                    let q = self.lms[i].div_into(&m).expect("divides");
                    let coef = field.mul(&c, &self.lc_inv[i]);
                    acc.sub_scaled_tail(field, &coef, &q, self.polys[i]);
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs.push((i, q, coef));
                    }
                }
                None => rem.push((m, c)),
            }
        }
        Some(MultiPoly::from_sorted(p.ring(), rem))
    }
}

/// Remainder of `p` on division by `basis`: `p − r` lies in the ideal and no
/// term of `r` is divisible by a leading monomial of `basis`. The first
/// divisor in list order is used at each step.
pub fn normal_form<F: Field>(p: &MultiPoly<F>, basis: &[MultiPoly<F>]) -> MultiPoly<F> {
    let polys: Vec<_> = basis.iter().filter(|g| !g.is_zero()).collect();
    Reducers::new(polys).reduce(p, None, None).expect("no deadline")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, OrderKind, PolyRing};
    use crate::scalar::Rationals;

    #[test]
    fn textbook_division() {
        let r = PolyRing::new(Rationals, &["x", "y"], OrderKind::Lex).unwrap();
        let p = parse_poly(&r, "x^2").unwrap();
        let g = parse_poly(&r, "x - y").unwrap();
        assert_eq!(normal_form(&p, &[g]), parse_poly(&r, "y^2").unwrap());
    }

    #[test]
    fn quotients_reconstruct_input() {
        let r = PolyRing::new(Rationals, &["x", "y", "z"], OrderKind::DegRevLex).unwrap();
        let p = parse_poly(&r, "x^3*y - 2*x*y*z + z^4 - 7").unwrap();
        let g1 = parse_poly(&r, "3*x*y - z").unwrap();
        let g2 = parse_poly(&r, "z^2 - x").unwrap();
        let red = Reducers::new(vec![&g1, &g2]);
        let mut qs = Vec::new();
        let rem = red.reduce(&p, Some(&mut qs), None).unwrap();
        let mut back = rem.clone();
        for (i, m, c) in qs {
            let g = if i == 0 { &g1 } else { &g2 };
            back = &back + &g.mul_term(&m, &c);
        }
        assert_eq!(back, p);
        for (m, _) in rem.terms() {
            assert!(!g1.leading_monomial().unwrap().divides(m));
            assert!(!g2.leading_monomial().unwrap().divides(m));
        }
    }
}
