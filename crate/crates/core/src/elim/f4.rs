//! Matrix completion (F4): every critical pair of the lowest degree is
//! reduced at once by sparse elimination against the basis multiples it
//! needs.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use super::buchberger::{Engine, Strategy};
use super::reduce::divmask;
use crate::error::Result;
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::Field;

/// Sparse row, columns ascending (leading column first).
type Row<E> = Vec<(u32, E)>;

/// Monomials of one matrix, interned in discovery order.
struct Columns {
    ids: HashMap<Monomial, u32>,
    mons: Vec<Monomial>,
}

impl Columns {
    fn intern(&mut self, m: Monomial) -> u32 {
        let next = self.mons.len() as u32;
        *self.ids.entry(m).or_insert_with(|| {
            self.mons.push(m);
            next
        })
    }
}

impl<F: Field> Engine<F> {
    pub(super) fn run_f4(&mut self, inputs: &[MultiPoly<F>]) -> Result<()> {
        let one = Monomial::one();
        let rows: Vec<(Monomial, &MultiPoly<F>)> = inputs.iter().map(|p| (one, p)).collect();
        let mut first = self.f4_reduce(&rows, true)?;
        first.sort_by_cached_key(|h| std::cmp::Reverse(self.order.key(h.leading_monomial().expect("nonzero"))));
        for h in first {
            let sugar = h.total_degree();
            self.insert(h, None, sugar);
        }
        let mut step = 0usize;
        while !self.pairs.is_empty() {
            if self.deadline.is_some_and(|d| Instant::now() > d) {
                return Err(self.budget_error());
            }
            let degree = |p: &super::buchberger::Pair| match self.strategy {
                Strategy::Normal => p.lcm.degree(),
                Strategy::Sugar => p.sugar,
            };
            let d = self.pairs.iter().map(degree).min().unwrap();
            let (now, later): (Vec<_>, Vec<_>) = std::mem::take(&mut self.pairs).into_iter().partition(|p| degree(p) == d);
            self.pairs = later;

            let mut seen = HashSet::new();
            let mut heads = Vec::new();
            for p in &now {
                for g in [p.i, p.j] {
                    let m = self.basis[g].lm.div_into(&p.lcm).expect("lcm");
                    if seen.insert((g, m)) {
                        heads.push((m, g));
                    }
                }
            }
            let polys: Vec<(Monomial, MultiPoly<F>)> =
                heads.iter().map(|&(m, g)| (m, self.basis[g].poly.clone())).collect();
            let rows: Vec<(Monomial, &MultiPoly<F>)> = polys.iter().map(|(m, p)| (*m, p)).collect();
            let new = self.f4_reduce(&rows, false)?;
            self.stats.pairs_reduced += now.len();
            self.stats.zero_reductions += now.len().saturating_sub(new.len());
            step += 1;
            if self.trace {
                eprintln!(
                    "[f4] {:>8} ms  step {step}: degree {d}, {} pairs, {} new; {} pending; basis {}",
                    self.start.elapsed().as_millis(),
                    now.len(),
                    new.len(),
                    self.pairs.len(),
                    self.basis.iter().filter(|e| e.active).count()
                );
            }
            // largest lead first, so a later divisor retires it
            let mut new = new;
            new.sort_by_cached_key(|h| std::cmp::Reverse(self.order.key(h.leading_monomial().expect("nonzero"))));
            for h in new {
                let sugar = d.max(h.total_degree());
                self.insert(h, None, sugar);
            }
        }
        Ok(())
    }

    /// Row-reduces the multiples `m · p` together with the basis multiples
    /// found by symbolic preprocessing. Returns the monic rows whose leading
    /// monomial is new, or every nonzero reduced row when `all` is set.
    fn f4_reduce(&self, upper: &[(Monomial, &MultiPoly<F>)], all: bool) -> Result<Vec<MultiPoly<F>>> {
        let field = self.ring.field();
        let mut cols = Columns { ids: HashMap::new(), mons: Vec::new() };
        let mut done: Vec<bool> = Vec::new();

        let mut upper_rows: Vec<Row<F::Elem>> = Vec::with_capacity(upper.len());
        for (m, p) in upper {
            let row: Row<F::Elem> = p.terms().iter().map(|(t, c)| (cols.intern(t.mul(m)), c.clone())).collect();
            done.resize(cols.mons.len(), false);
            done[row[0].0 as usize] = true;
            upper_rows.push(row);
        }

        // symbolic preprocessing
        let active: Vec<usize> = (0..self.basis.len()).filter(|&i| self.basis[i].active).collect();
        let masks: Vec<u32> = active.iter().map(|&i| divmask(&self.basis[i].lm)).collect();
        let mut lower_rows: Vec<Row<F::Elem>> = Vec::new();
        let mut k = 0;
        while k < cols.mons.len() {
            if k % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
                return Err(self.budget_error());
            }
            done.resize(cols.mons.len(), false);
            if !done[k] {
                done[k] = true;
                let m = cols.mons[k];
                let mask = divmask(&m);
                let best = active
                    .iter()
                    .zip(&masks)
                    .filter(|&(&g, &gm)| gm & !mask == 0 && self.basis[g].lm.divides(&m))
                    .min_by_key(|&(&g, _)| self.basis[g].poly.len())
                    .map(|(&g, _)| g);
                if let Some(g) = best {
                    let q = self.basis[g].lm.div_into(&m).expect("divides");
                    let row = self.basis[g].poly.terms().iter().map(|(t, c)| (cols.intern(t.mul(&q)), c.clone())).collect();
                    lower_rows.push(row);
                }
            }
            k += 1;
        }

        // columns in descending monomial order
        let ncols = cols.mons.len();
        let mut by_order: Vec<u32> = (0..ncols as u32).collect();
        by_order.sort_by_cached_key(|&c| std::cmp::Reverse(self.order.key(&cols.mons[c as usize])));
        let mut col_of = vec![0u32; ncols];
        for (pos, &c) in by_order.iter().enumerate() {
            col_of[c as usize] = pos as u32;
        }
        let relabel = |row: &mut Row<F::Elem>| {
            for e in row.iter_mut() {
                e.0 = col_of[e.0 as usize];
            }
            row.sort_unstable_by_key(|e| e.0);
        };

        let mut pivots: Vec<Option<u32>> = vec![None; ncols];
        let mut rows: Vec<Row<F::Elem>> = Vec::with_capacity(lower_rows.len() + upper_rows.len());
        for mut r in lower_rows {
            relabel(&mut r);
            pivots[r[0].0 as usize] = Some(rows.len() as u32);
            rows.push(r);
        }
        let mut upper_lead = vec![false; ncols];
        for r in upper_rows.iter_mut() {
            relabel(r);
            upper_lead[r[0].0 as usize] = true;
        }
        upper_rows.sort_by_key(|r| (r[0].0, r.len()));

        let zero = field.zero();
        let mut acc: Vec<F::Elem> = vec![zero.clone(); ncols];
        let mut out = Vec::new();
        for (n, r) in upper_rows.into_iter().enumerate() {
            if n % 64 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
                return Err(self.budget_error());
            }
            let start = r[0].0 as usize;
            for (c, v) in r {
                acc[c as usize] = v;
            }
            let mut reduced: Row<F::Elem> = Vec::new();
            for c in start..ncols {
                if field.is_zero(&acc[c]) {
                    continue;
                }
                let v = std::mem::replace(&mut acc[c], zero.clone());
                match pivots[c] {
                    Some(pr) => {
                        let f = field.neg(&v);
                        for (cc, e) in &rows[pr as usize][1..] {
                            field.add_mul_assign(&mut acc[*cc as usize], &f, e);
                        }
                    }
                    None => reduced.push((c as u32, v)),
                }
            }
            if reduced.is_empty() {
                continue;
            }
            let inv = field.inv(&reduced[0].1)?;
            for e in reduced.iter_mut() {
                e.1 = field.mul(&e.1, &inv);
            }
            let lead = reduced[0].0 as usize;
            pivots[lead] = Some(rows.len() as u32);
            if all || !upper_lead[lead] {
                out.push(rows.len());
            }
            rows.push(reduced);
        }

        Ok(out
            .into_iter()
            .map(|k| {
                let terms = rows[k].iter().map(|(c, e)| (cols.mons[by_order[*c as usize] as usize], e.clone())).collect();
                MultiPoly::from_sorted(&self.ring, terms)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use crate::elim::{buchberger, buchberger_with, Algorithm, GbOptions};
    use crate::poly::{parse_poly_list, OrderKind, PolyRing};
    use crate::scalar::{PrimeField, Rationals};

    fn f4() -> GbOptions {
        GbOptions { algorithm: Algorithm::F4, ..GbOptions::default() }
    }

    #[test]
    fn agrees_with_buchberger_on_cyclic4() {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), &["a", "b", "c", "d"], OrderKind::DegRevLex).unwrap();
        let f = parse_poly_list(&r, "a+b+c+d\na*b+b*c+c*d+d*a\na*b*c+b*c*d+c*d*a+d*a*b\na*b*c*d-1").unwrap();
        let g = buchberger_with(&f, r.order(), &f4()).unwrap();
        let b = buchberger(&f, r.order(), false).unwrap();
        assert_eq!(g.generators(), b.generators());
        assert!(g.certificate().spairs_checked > 0);
    }

    #[test]
    fn textbook_lex_over_q() {
        let r = PolyRing::new(Rationals, &["x", "y"], OrderKind::Lex).unwrap();
        let f = parse_poly_list(&r, "x^2 - 1\nx*y - 1").unwrap();
        let g = buchberger_with(&f, r.order(), &f4()).unwrap();
        assert_eq!(g.generators(), &parse_poly_list(&r, "y^2 - 1\nx - y").unwrap()[..]);
    }

    #[test]
    fn unit_ideal() {
        let r = PolyRing::new(PrimeField::new(101).unwrap(), &["x", "y"], OrderKind::DegRevLex).unwrap();
        let f = parse_poly_list(&r, "x*y - 1\nx^2\ny^3 + x").unwrap();
        assert!(buchberger_with(&f, r.order(), &f4()).unwrap().is_unit_ideal());
    }

    #[test]
    fn refuses_cofactors() {
        let r = PolyRing::new(Rationals, &["x"], OrderKind::Lex).unwrap();
        let f = parse_poly_list(&r, "x").unwrap();
        let opts = GbOptions { extended: true, ..f4() };
        assert!(buchberger_with(&f, r.order(), &opts).is_err());
    }
}
