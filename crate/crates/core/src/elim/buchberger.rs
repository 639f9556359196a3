//! Gröbner bases by Buchberger's algorithm (or F4 over prime fields) with
//! the Gebauer–Möller criteria, optional cofactor tracking and a post-hoc
//! certification pass.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::reduce::Reducers;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, OrderKey, OrderKind, PolyRing};
use crate::scalar::Field;

/// Critical-pair selection rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Smallest lcm first.
    Normal,
    /// Smallest sugar degree first, ties by lcm.
    Sugar,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    /// One S-polynomial at a time; supports cofactors.
    #[default]
    Buchberger,
    /// All pairs of the lowest degree per sparse matrix reduction.
    F4,
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    pub algorithm: Algorithm,
    /// Track cofactors over the inputs.
    pub extended: bool,
    /// Wall-clock budget for the completion loop.
    pub budget: Option<Duration>,
    /// Defaults to sugar for lex and normal otherwise.
    pub strategy: Option<Strategy>,
    /// Print progress lines to standard error.
    pub trace: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_pruned: usize,
    pub max_basis: usize,
    pub elapsed_ms: u128,
}

/// What the certification pass checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub spairs_checked: usize,
    pub inputs_checked: usize,
    pub cofactor_rows_checked: usize,
    pub elapsed_ms: u128,
}

/// A reduced Gröbner basis (monic generators, ascending leading monomials)
/// together with its inputs and, in extended mode, the cofactor matrix.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<MultiPoly<F>>,
    inputs: Vec<MultiPoly<F>>,
    cofactors: Option<Vec<Vec<MultiPoly<F>>>>,
    stats: GbStats,
    certificate: Certificate,
}

pub(super) struct Element<F: Field> {
    pub(super) poly: MultiPoly<F>,
    pub(super) lm: Monomial,
    sugar: u32,
    pub(super) active: bool,
    cof: Option<Vec<MultiPoly<F>>>,
}

pub(super) struct Pair {
    pub(super) i: usize,
    pub(super) j: usize,
    pub(super) lcm: Monomial,
    key: OrderKey,
    pub(super) sugar: u32,
}

/// Gröbner basis of `inputs` under `order` (which must be an order on the
/// inputs' variables). Zero inputs are dropped.
pub fn buchberger<F: Field>(
    inputs: &[MultiPoly<F>],
    order: &MonomialOrder,
    extended: bool,
) -> Result<GroebnerBasis<F>> {
    buchberger_with(inputs, order, &GbOptions { extended, ..GbOptions::default() })
}

pub fn buchberger_with<F: Field>(
    inputs: &[MultiPoly<F>],
    order: &MonomialOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis<F>> {
    let first = inputs
        .first()
        .ok_or_else(|| Error::Structural("empty input system".into()))?;
    for p in inputs {
        crate::poly::same_ring(first.ring(), p.ring())?;
    }
    let src = first.ring();
    if order.nvars() != src.nvars() {
        return Err(Error::Structural("order and ring variable count disagree".into()));
    }
    let ring = if src.order() == order { src.clone() } else { src.reordered(*order)? };
    let inputs: Vec<MultiPoly<F>> = inputs
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| MultiPoly::from_terms(&ring, p.terms().to_vec()))
        .collect();
    if inputs.is_empty() {
        return Err(Error::Structural("all inputs are zero".into()));
    }
    let strategy = opts.strategy.unwrap_or(match order.kind() {
        OrderKind::Lex => Strategy::Sugar,
        OrderKind::DegRevLex => Strategy::Normal,
    });
    let mut engine = Engine {
        ring: ring.clone(),
        order: *order,
        strategy,
        extended: opts.extended,
        ninputs: inputs.len(),
        basis: Vec::new(),
        pairs: Vec::new(),
        stats: GbStats::default(),
        start: Instant::now(),
        deadline: opts.budget.map(|b| Instant::now() + b),
        trace: opts.trace,
    };
    match opts.algorithm {
        Algorithm::Buchberger => engine.run(&inputs)?,
        Algorithm::F4 if opts.extended => {
            return Err(Error::Structural("cofactor tracking needs the Buchberger algorithm".into()))
        }
        Algorithm::F4 => engine.run_f4(&inputs)?,
    }
    let (generators, cofactors) = engine.interreduce()?;
    let mut stats = engine.stats;
    stats.elapsed_ms = engine.start.elapsed().as_millis();
    let mut gb = GroebnerBasis {
        ring,
        generators,
        inputs,
        cofactors,
        stats,
        certificate: Certificate::default(),
    };
    gb.certificate = gb.certify()?;
    Ok(gb)
}

pub(super) struct Engine<F: Field> {
    pub(super) ring: Arc<PolyRing<F>>,
    pub(super) order: MonomialOrder,
    pub(super) strategy: Strategy,
    extended: bool,
    ninputs: usize,
    pub(super) basis: Vec<Element<F>>,
    pub(super) pairs: Vec<Pair>,
    pub(super) stats: GbStats,
    pub(super) start: Instant,
    pub(super) deadline: Option<Instant>,
    pub(super) trace: bool,
}

impl<F: Field> Engine<F> {
    pub(super) fn budget_error(&self) -> Error {
        Error::BudgetExceeded {
            elapsed_ms: self.start.elapsed().as_millis(),
            basis_len: self.basis.iter().filter(|e| e.active).count(),
            pairs_left: self.pairs.len(),
        }
    }

    fn run(&mut self, inputs: &[MultiPoly<F>]) -> Result<()> {
        let mut idx: Vec<usize> = (0..inputs.len()).collect();
        idx.sort_by_key(|&k| self.order.key(inputs[k].leading_monomial().unwrap()));
        for k in idx {
            let cof = self.extended.then(|| self.unit_row(k));
            let sugar = inputs[k].total_degree();
            if let Some((h, hcof)) = self.reduce_active(&inputs[k], cof)? {
                self.insert(h, hcof, sugar);
            }
        }
        while let Some(pair) = self.select() {
            if self.deadline.is_some_and(|d| Instant::now() > d) {
                self.pairs.push(pair);
                return Err(self.budget_error());
            }
            self.stats.pairs_reduced += 1;
            if self.trace && self.stats.pairs_reduced.is_multiple_of(100) {
                eprintln!(
                    "[gb] {:>8} ms  pairs {:>6} reduced, {:>6} zero, {:>6} pending; basis {:>4}; degree {} sugar {}",
                    self.start.elapsed().as_millis(),
                    self.stats.pairs_reduced,
                    self.stats.zero_reductions,
                    self.pairs.len(),
                    self.basis.iter().filter(|e| e.active).count(),
                    pair.lcm.degree(),
                    pair.sugar
                );
            }
            let (s, scof) = self.spoly(pair.i, pair.j, &pair.lcm);
            match self.reduce_active(&s, scof)? {
                None => self.stats.zero_reductions += 1,
                Some((h, hcof)) => self.insert(h, hcof, pair.sugar),
            }
        }
        Ok(())
    }

    fn unit_row(&self, k: usize) -> Vec<MultiPoly<F>> {
        (0..self.ninputs)
            .map(|i| if i == k { MultiPoly::one(&self.ring) } else { MultiPoly::zero(&self.ring) })
            .collect()
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> (MultiPoly<F>, Option<Vec<MultiPoly<F>>>) {
        let field = self.ring.field();
        let one = field.one();
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let ma = a.lm.div_into(lcm).expect("lcm");
        let mb = b.lm.div_into(lcm).expect("lcm");
        let s = a.poly.mul_term(&ma, &one).sub_mul_term(&one, &mb, &b.poly);
        let cof = match (&a.cof, &b.cof) {
            (Some(ca), Some(cb)) => Some(
                ca.iter()
                    .zip(cb)
                    .map(|(x, y)| x.mul_term(&ma, &one).sub_mul_term(&one, &mb, y))
                    .collect(),
            ),
            _ => None,
        };
        (s, cof)
    }

    /// Fully reduces by the active elements and makes the result monic;
    /// `None` for a zero remainder.
    #[allow(clippy::type_complexity)]
    fn reduce_active(
        &self,
        p: &MultiPoly<F>,
        cof: Option<Vec<MultiPoly<F>>>,
    ) -> Result<Option<(MultiPoly<F>, Option<Vec<MultiPoly<F>>>)>> {
        let active: Vec<usize> = (0..self.basis.len()).filter(|&i| self.basis[i].active).collect();
        let reducers = Reducers::new(active.iter().map(|&i| &self.basis[i].poly).collect());
        let mut qs = Vec::new();
        let rem = reducers
            .reduce(p, cof.as_ref().map(|_| &mut qs), self.deadline)
            .ok_or_else(|| self.budget_error())?;
        if rem.is_zero() {
            return Ok(None);
        }
        let field = self.ring.field();
        let inv = field.inv(rem.leading_coeff().unwrap())?;
        let cof = cof.map(|c| {
            let c = subtract_quotients(c, &qs, |k| self.basis[active[k]].cof.as_ref().unwrap());
            c.iter().map(|x| x.scale(&inv)).collect()
        });
        Ok(Some((rem.scale(&inv), cof)))
    }

    fn select(&mut self) -> Option<Pair> {
        let best = match self.strategy {
            Strategy::Normal => (0..self.pairs.len()).min_by_key(|&k| (self.pairs[k].key, self.pairs[k].i, self.pairs[k].j)),
            Strategy::Sugar => (0..self.pairs.len())
                .min_by_key(|&k| (self.pairs[k].sugar, self.pairs[k].key, self.pairs[k].i, self.pairs[k].j)),
        }?;
        Some(self.pairs.swap_remove(best))
    }

    /// Adds `h` and updates the pair set (Gebauer–Möller).
    pub(super) fn insert(&mut self, h: MultiPoly<F>, cof: Option<Vec<MultiPoly<F>>>, sugar: u32) {
        let hlm = *h.leading_monomial().unwrap();
        let t = self.basis.len();
        let sugar = sugar.max(h.total_degree());
        self.basis.push(Element { poly: h, lm: hlm, sugar, active: true, cof });

        let cands: Vec<(usize, Monomial)> = (0..t)
            .filter(|&g| self.basis[g].active)
            .map(|g| (g, hlm.lcm(&self.basis[g].lm)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g1, l1)) in cands.iter().enumerate() {
            let coprime = hlm.coprime(&self.basis[*g1].lm);
            let dominated = cands[k + 1..].iter().any(|(_, l2)| l2.divides(l1))
                || kept.iter().any(|(_, l2)| l2.divides(l1));
            if coprime || !dominated {
                kept.push((*g1, *l1));
            } else {
                self.stats.pairs_pruned += 1;
            }
        }

        let before = self.pairs.len();
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && hlm.lcm(&basis[p.i].lm) != p.lcm
                && hlm.lcm(&basis[p.j].lm) != p.lcm)
        });
        self.stats.pairs_pruned += before - self.pairs.len();

        for (g, l) in kept {
            if hlm.coprime(&self.basis[g].lm) {
                self.stats.pairs_pruned += 1;
                continue;
            }
            let sg = &self.basis[g];
            let sugar = (sg.sugar + l.degree() - sg.lm.degree()).max(sugar + l.degree() - hlm.degree());
            self.pairs.push(Pair { i: g, j: t, lcm: l, key: self.order.key(&l), sugar });
        }

        for g in 0..t {
            if self.basis[g].active && hlm.divides(&self.basis[g].lm) {
                self.basis[g].active = false;
            }
        }
        let active = self.basis.iter().filter(|e| e.active).count();
        self.stats.max_basis = self.stats.max_basis.max(active);
    }

    /// Tail-reduces the minimal basis into the reduced basis.
    #[allow(clippy::type_complexity)]
    fn interreduce(&mut self) -> Result<(Vec<MultiPoly<F>>, Option<Vec<Vec<MultiPoly<F>>>>)> {
        let mut elems: Vec<Element<F>> = std::mem::take(&mut self.basis).into_iter().filter(|e| e.active).collect();
        elems.sort_by_key(|e| self.order.key(&e.lm));
        for i in 0..elems.len() {
            let others: Vec<usize> = (0..elems.len()).filter(|&k| k != i).collect();
            let reducers = Reducers::new(others.iter().map(|&k| &elems[k].poly).collect());
            let mut qs = Vec::new();
            let want_q = elems[i].cof.is_some();
            let r = reducers
                .reduce(&elems[i].poly, want_q.then_some(&mut qs), self.deadline)
                .ok_or_else(|| self.budget_error())?;
            debug_assert_eq!(r.leading_monomial(), Some(&elems[i].lm));
            if want_q && !qs.is_empty() {
                let c = elems[i].cof.take().unwrap();
                let c = subtract_quotients(c, &qs, |k| elems[others[k]].cof.as_ref().unwrap());
                elems[i].cof = Some(c);
            }
            elems[i].poly = r;
        }
        let cofactors = self
            .extended
            .then(|| elems.iter_mut().map(|e| e.cof.take().unwrap()).collect());
        Ok((elems.into_iter().map(|e| e.poly).collect(), cofactors))
    }
}

/// `cof − Σ coef · mono · rows(index)` with quotient terms grouped per
/// reducer.
fn subtract_quotients<'a, F: Field>(
    mut cof: Vec<MultiPoly<F>>,
    qs: &[(usize, Monomial, F::Elem)],
    rows: impl Fn(usize) -> &'a Vec<MultiPoly<F>>,
) -> Vec<MultiPoly<F>> {
    if qs.is_empty() {
        return cof;
    }
    let ring = cof[0].ring().clone();
    let mut grouped: Vec<(usize, Vec<(Monomial, F::Elem)>)> = Vec::new();
    for (k, m, c) in qs {
        match grouped.iter_mut().find(|(g, _)| g == k) {
            Some((_, terms)) => terms.push((*m, c.clone())),
            None => grouped.push((*k, vec![(*m, c.clone())])),
        }
    }
    for (k, terms) in grouped {
        let q = MultiPoly::from_terms(&ring, terms);
        for (c, r) in cof.iter_mut().zip(rows(k)) {
            if !r.is_zero() {
                *c = &*c - &(&q * r);
            }
        }
    }
    cof
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.generators
    }

    /// The nonzero inputs, in the basis ring.
    pub fn inputs(&self) -> &[MultiPoly<F>] {
        &self.inputs
    }

    /// Row `j` gives `generators[j] = Σ_i row[i] · inputs[i]`.
    pub fn cofactors(&self) -> Option<&[Vec<MultiPoly<F>>]> {
        self.cofactors.as_deref()
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// True iff the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant())
    }

    /// Brings `p` into the basis ring (same variables, possibly another
    /// order).
    pub fn adopt(&self, p: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        if p.ring().vars() != self.ring.vars() || p.ring().field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        Ok(MultiPoly::from_terms(&self.ring, p.terms().to_vec()))
    }

    pub fn normal_form(&self, p: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        let p = self.adopt(p)?;
        Ok(Reducers::new(self.generators.iter().collect()).reduce(&p, None, None).expect("no deadline"))
    }

    pub fn contains(&self, p: &MultiPoly<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Cofactors `c` with `p = Σ c_i · inputs[i]`, or `None` if `p` is not
    /// in the ideal. Requires extended mode.
    pub fn express(&self, p: &MultiPoly<F>) -> Result<Option<Vec<MultiPoly<F>>>> {
        let rows = self
            .cofactors
            .as_ref()
            .ok_or_else(|| Error::Structural("basis was computed without cofactors".into()))?;
        let p = self.adopt(p)?;
        let mut qs = Vec::new();
        let rem = Reducers::new(self.generators.iter().collect())
            .reduce(&p, Some(&mut qs), None)
            .expect("no deadline");
        if !rem.is_zero() {
            return Ok(None);
        }
        let zero = vec![MultiPoly::zero(&self.ring); self.inputs.len()];
        let neg = subtract_quotients(zero, &qs, |k| &rows[k]);
        Ok(Some(neg.into_iter().map(|c| -c).collect()))
    }

    /// Checks every S-polynomial and input reduces to zero and, in extended
    /// mode, that every cofactor row re-multiplies to its generator.
    pub fn certify(&self) -> Result<Certificate> {
        let start = Instant::now();
        let field = self.ring.field();
        let one = field.one();
        let n = self.generators.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let gens = &self.generators;
        pairs.par_iter().try_for_each(|&(i, j)| {
            let (a, b) = (&gens[i], &gens[j]);
            let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
            let l = la.lcm(lb);
            let s = a
                .mul_term(&la.div_into(&l).unwrap(), &one)
                .sub_mul_term(&one, &lb.div_into(&l).unwrap(), b);
            let r = Reducers::new(gens.iter().collect()).reduce(&s, None, None).unwrap();
            if r.is_zero() {
                Ok(())
            } else {
                Err(Error::Structural(format!("S-polynomial of generators {i} and {j} does not reduce to zero")))
            }
        })?;
        self.inputs.par_iter().enumerate().try_for_each(|(k, p)| {
            let r = Reducers::new(gens.iter().collect()).reduce(p, None, None).unwrap();
            if r.is_zero() {
                Ok(())
            } else {
                Err(Error::Structural(format!("input {k} does not reduce to zero")))
            }
        })?;
        let mut rows = 0;
        if let Some(cof) = &self.cofactors {
            cof.par_iter().zip(gens.par_iter()).enumerate().try_for_each(|(j, (row, g))| {
                let mut sum = MultiPoly::zero(&self.ring);
                for (c, p) in row.iter().zip(&self.inputs) {
                    if !c.is_zero() {
                        sum = &sum + &(c * p);
                    }
                }
                if &sum == g {
                    Ok(())
                } else {
                    Err(Error::Structural(format!("cofactor row {j} does not re-multiply to its generator")))
                }
            })?;
            rows = cof.len();
        }
        Ok(Certificate {
            spairs_checked: pairs.len(),
            inputs_checked: self.inputs.len(),
            cofactor_rows_checked: rows,
            elapsed_ms: start.elapsed().as_millis(),
        })
    }
}

/// `normal_form(p, gb) == 0`.
pub fn ideal_contains<F: Field>(p: &MultiPoly<F>, gb: &GroebnerBasis<F>) -> Result<bool> {
    gb.contains(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, parse_poly_list};
    use crate::scalar::{CyclotomicField, PrimeField, Rationals};

    #[test]
    fn textbook_system() {
        let r = PolyRing::new(Rationals, &["x", "y"], OrderKind::Lex).unwrap();
        let f = parse_poly_list(&r, "x^2 - 1\nx*y - 1").unwrap();
        let gb = buchberger(&f, r.order(), true).unwrap();
        assert!(gb.contains(&parse_poly(&r, "x - y").unwrap()).unwrap());
        assert!(gb.contains(&parse_poly(&r, "y^2 - 1").unwrap()).unwrap());
        assert!(!gb.contains(&MultiPoly::one(&r)).unwrap());
        assert_eq!(gb.generators().len(), 2);
        let c = gb.express(&parse_poly(&r, "x - y").unwrap()).unwrap().unwrap();
        assert_eq!(&(&c[0] * &f[0]) + &(&c[1] * &f[1]), parse_poly(&r, "x - y").unwrap());
        assert_eq!(gb.certificate().cofactor_rows_checked, 2);
    }

    #[test]
    fn principal_ideal_is_monic_generator() {
        let r = PolyRing::new(Rationals, &["x", "y"], OrderKind::DegRevLex).unwrap();
        let p = parse_poly(&r, "3*x^2*y - 6*y + 1").unwrap();
        let gb = buchberger(std::slice::from_ref(&p), r.order(), false).unwrap();
        assert_eq!(gb.generators(), &[p.monic()]);
    }

    #[test]
    fn unit_ideal_and_proper_ideal() {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), &["x", "y"], OrderKind::DegRevLex).unwrap();
        let gb = buchberger(&parse_poly_list(&r, "x\ny").unwrap(), r.order(), false).unwrap();
        assert!(!gb.contains(&MultiPoly::one(&r)).unwrap());
        let gb = buchberger(&parse_poly_list(&r, "x*y - 1\nx").unwrap(), r.order(), false).unwrap();
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn other_order_than_ring() {
        let r = PolyRing::new(CyclotomicField, &["x", "y", "z"], OrderKind::DegRevLex).unwrap();
        let f = parse_poly_list(&r, "x^2 + w*y*z - 1\nx*y - z^2\ny^3 - x").unwrap();
        let lex = MonomialOrder::lex(3);
        let gb = buchberger(&f, &lex, true).unwrap();
        assert_eq!(gb.order(), &lex);
        // lex basis contains an element in z alone (elimination property)
        assert!(gb.generators().iter().any(|g| g.support() == vec![2]));
    }

    #[test]
    fn budget_is_reported() {
        let r = PolyRing::new(Rationals, &["a", "b", "c", "d"], OrderKind::DegRevLex).unwrap();
        let f = parse_poly_list(
            &r,
            "a+b+c+d\na*b+b*c+c*d+d*a\na*b*c+b*c*d+c*d*a+d*a*b\na*b*c*d-1",
        )
        .unwrap();
        let opts = GbOptions { budget: Some(Duration::ZERO), ..GbOptions::default() };
        match buchberger_with(&f, r.order(), &opts) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
        // cyclic-4 completes without a budget
        let gb = buchberger(&f, r.order(), false).unwrap();
        assert!(gb.certificate().spairs_checked > 0);
    }
}
