//! Multivariate gcd over a field by recursive subresultant remainder
//! sequences.
//!
//! Before recursing, a cheap univariate-image test tries to prove that the
//! gcd is constant: if `a(x, r)` and `b(x, r)` are coprime for some point `r`
//! that keeps both leading coefficients in `x` nonzero, the gcd has degree
//! zero in `x`. Coefficients are first sent to a word-size prime field when
//! the reduction map is defined on them; a gcd over the original field maps
//! to a common divisor of the same degree in `x`, so the bound still holds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{same_ring, Monomial, MultiPoly};
use crate::error::Result;
use crate::scalar::{Field, PrimeField};

/// Largest prime below 2^31, congruent to 1 mod 3.
const IMAGE_PRIME: u64 = 2_147_483_647;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> Result<MultiPoly<F>> {
    same_ring(a.ring(), b.ring())?;
    Ok(gcd_rec(a, b).monic())
}

/// Divides out every factor `f` shares with `d`, repeating until the gcd is
/// constant. Returns the reduced polynomial and the number of divisions.
pub fn strip_factor<F: Field>(f: &MultiPoly<F>, d: &MultiPoly<F>) -> Result<(MultiPoly<F>, usize)> {
    same_ring(f.ring(), d.ring())?;
    let mut f = f.clone();
    let mut steps = 0;
    loop {
        let g = gcd_rec(&f, d);
        if g.is_constant() {
            return Ok((f, steps));
        }
        f = f.exact_div(&g)?;
        steps += 1;
    }
}

fn monomial_content<F: Field>(p: &MultiPoly<F>) -> Monomial {
    let mut it = p.terms().iter();
    let first = match it.next() {
        Some(t) => t.0,
        None => return Monomial::one(),
    };
    it.fold(first, |acc, t| acc.gcd(&t.0))
}

fn strip_monomial<F: Field>(p: &MultiPoly<F>, m: &Monomial) -> MultiPoly<F> {
    if m.is_one() {
        return p.clone();
    }
    let terms = p
        .terms()
        .iter()
        .map(|(t, c)| (m.div_into(t).expect("monomial content divides every term"), c.clone()))
        .collect();
    MultiPoly::from_sorted(p.ring(), terms)
}

fn gcd_rec<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    let ring = a.ring();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(ring);
    }

    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let mono = ma.gcd(&mb);
    let a = strip_monomial(a, &ma);
    let b = strip_monomial(b, &mb);
    let with_mono = |g: MultiPoly<F>| {
        if mono.is_one() {
            g
        } else {
            g.mul_term(&mono, &ring.field().one())
        }
    };
    if a.is_constant() || b.is_constant() {
        return with_mono(MultiPoly::one(ring));
    }

    let sa = a.support();
    let sb = b.support();

    // A variable occurring in only one argument cannot occur in the gcd, so
    // the gcd divides each of that argument's coefficients in it.
    if let Some(&x) = sa.iter().find(|v| !sb.contains(v)) {
        return with_mono(fold_coefficients(&b, &a, x));
    }
    if let Some(&x) = sb.iter().find(|v| !sa.contains(v)) {
        return with_mono(fold_coefficients(&a, &b, x));
    }

    // Supports coincide here.
    let images = modular_images(&a, &b);
    let mut bounds = Vec::with_capacity(sa.len());
    for &x in &sa {
        let (da, db) = (a.degree_in(x) as usize, b.degree_in(x) as usize);
        let bound = images
            .as_ref()
            .and_then(|(ia, ib)| univariate_image_bound(ia, ib, x, da, db))
            .or_else(|| univariate_image_bound(&a, &b, x, da, db));
        bounds.push((x, bound));
    }
    if bounds.iter().all(|(_, bd)| *bd == Some(0)) {
        return with_mono(MultiPoly::one(ring));
    }

    // main variable: smallest degree among those the gcd may still involve
    let x = bounds
        .iter()
        .filter(|(_, bd)| *bd != Some(0))
        .map(|(x, _)| *x)
        .min_by_key(|&x| {
            let (da, db) = (a.degree_in(x), b.degree_in(x));
            (da.min(db), da.max(db))
        })
        .expect("some variable has a positive bound");

    // Orient so the smaller polynomial supplies the starting content.
    let (big, small) = if a.len() >= b.len() { (&a, &b) } else { (&b, &a) };
    let small_coeffs = small.coefficients_in(x);
    let small_content = content_of(&small_coeffs);
    let small_pp = if small_content.is_one() {
        small.clone()
    } else {
        small.exact_div(&small_content).expect("content divides")
    };
    // gcd of the two contents, folding the large polynomial's coefficients
    // into the small content.
    let mut c = small_content;
    if !c.is_one() {
        for coeff in sorted_by_size(big.coefficients_in(x)) {
            c = gcd_rec(&c, &coeff);
            if c.is_constant() {
                c = MultiPoly::one(ring);
                break;
            }
        }
    }

    let s = last_subresultant(big, &small_pp, x);
    let pp = if s.degree_in(x) == 0 {
        MultiPoly::one(ring)
    } else {
        let cont = content_of(&s.coefficients_in(x));
        if cont.is_one() {
            s.monic()
        } else {
            s.exact_div(&cont).expect("content divides").monic()
        }
    };
    with_mono(&c * &pp)
}

/// gcd(p, every nonzero coefficient of q in x).
fn fold_coefficients<F: Field>(p: &MultiPoly<F>, q: &MultiPoly<F>, x: usize) -> MultiPoly<F> {
    let mut g = p.clone();
    for c in sorted_by_size(q.coefficients_in(x)) {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(p.ring());
        }
    }
    g.monic()
}

fn sorted_by_size<F: Field>(v: Vec<MultiPoly<F>>) -> Vec<MultiPoly<F>> {
    let mut v: Vec<_> = v.into_iter().filter(|c| !c.is_zero()).collect();
    v.sort_by_key(|c| c.len());
    v
}

/// Monic gcd of a list of polynomials (the content of a polynomial given by
/// its coefficient list).
fn content_of<F: Field>(coeffs: &[MultiPoly<F>]) -> MultiPoly<F> {
    let v = sorted_by_size(coeffs.to_vec());
    let mut it = v.into_iter();
    let mut g = match it.next() {
        Some(c) => c.monic(),
        None => unreachable!("content of the zero polynomial"),
    };
    for c in it {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, &c);
    }
    if g.is_constant() {
        MultiPoly::one(g.ring())
    } else {
        g
    }
}

/// Images of `a` and `b` in `GF(IMAGE_PRIME)`, when the reduction map is
/// defined on every coefficient.
fn modular_images<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> Option<(MultiPoly<PrimeField>, MultiPoly<PrimeField>)> {
    let target = PrimeField::with_omega(IMAGE_PRIME).ok()?;
    let ring = a.ring().over(target);
    let image = |p: &MultiPoly<F>| {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| p.field().image_in(c, &target).map(|e| (*m, e)))
            .collect::<Option<Vec<_>>>()?;
        Some(MultiPoly::from_terms(&ring, terms))
    };
    Some((image(a)?, image(b)?))
}

/// Upper bound for the degree in `x` of the gcd of two polynomials whose
/// degrees in `x` are `da` and `db`, from univariate images of `a` and `b` at
/// a few pseudo-random points; `None` when no usable point was found.
fn univariate_image_bound<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, x: usize, da: usize, db: usize) -> Option<usize> {
    let field = a.field();
    let n = a.ring().nvars();
    let seed = 0x9e37_79b9_u64 ^ ((x as u64) << 32) ^ (a.len() as u64) ^ ((b.len() as u64) << 16);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 {
        let point: Vec<F::Elem> = (0..n).map(|_| field.from_i64(rng.gen_range(1..1_000_000))).collect();
        let ua = univariate_image(a, x, &point);
        let ub = univariate_image(b, x, &point);
        if ua.len() != da + 1 || ub.len() != db + 1 {
            continue;
        }
        return Some(univariate_gcd_degree(field, ua, ub));
    }
    None
}

/// Coefficients (low to high, trailing zeros trimmed) of `p` with every
/// variable but `x` evaluated at `point`.
fn univariate_image<F: Field>(p: &MultiPoly<F>, x: usize, point: &[F::Elem]) -> Vec<F::Elem> {
    let field = p.field();
    let n = p.ring().nvars();
    let d = p.degree_in(x) as usize;
    let mut out = vec![field.zero(); d + 1];
    let mut powers: Vec<Vec<F::Elem>> = point.iter().map(|v| vec![field.one(), v.clone()]).collect();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for v in 0..n {
            if v == x {
                continue;
            }
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
        let slot = &mut out[m.exp(x) as usize];
        *slot = field.add(slot, &t);
    }
    while out.len() > 1 && field.is_zero(out.last().unwrap()) {
        out.pop();
    }
    out
}

fn univariate_gcd_degree<F: Field>(field: &F, mut a: Vec<F::Elem>, mut b: Vec<F::Elem>) -> usize {
    fn trim<F: Field>(f: &F, v: &mut Vec<F::Elem>) {
        while v.last().is_some_and(|c| f.is_zero(c)) {
            v.pop();
        }
    }
    trim(field, &mut a);
    trim(field, &mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a <- a mod b
        let lb_inv = field.inv(b.last().unwrap()).expect("trimmed");
        while a.len() >= b.len() {
            let q = field.mul(a.last().unwrap(), &lb_inv);
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let t = field.mul(&q, bc);
                a[shift + i] = field.sub(&a[shift + i], &t);
            }
            a.pop();
            trim(field, &mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Last nonzero element of the subresultant remainder sequence of `a` and
/// `b` in `x`, with `b` of positive degree in `x`.
fn last_subresultant<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, x: usize) -> MultiPoly<F> {
    let ring = a.ring();
    let mut pa = a.coefficients_in(x);
    let mut pb = b.coefficients_in(x);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    let mut g = MultiPoly::one(ring);
    let mut h = MultiPoly::one(ring);
    loop {
        let delta = pa.len() - pb.len();
        let r = pseudo_remainder(&pa, &pb);
        if r.is_empty() {
            return MultiPoly::from_coefficients_in(ring, x, &pb);
        }
        if r.len() == 1 {
            return r[0].clone();
        }
        let divisor = &g * &h.pow(delta as u32);
        let next: Vec<_> = r
            .iter()
            .map(|c| c.exact_div(&divisor).expect("subresultant division is exact"))
            .collect();
        pa = std::mem::replace(&mut pb, next);
        g = pa.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// `lc(b)^(deg a - deg b + 1) · a  mod  b` on coefficient vectors (low to
/// high); the result is trimmed, empty for zero.
fn pseudo_remainder<F: Field>(a: &[MultiPoly<F>], b: &[MultiPoly<F>]) -> Vec<MultiPoly<F>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<MultiPoly<F>> = a.to_vec();
    let mut e = a.len() as i64 - b.len() as i64 + 1;
    let trim = |r: &mut Vec<MultiPoly<F>>| {
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    };
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&lr * bc);
        }
        debug_assert!(r.last().unwrap().is_zero());
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}
