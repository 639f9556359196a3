use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use dualnet::elim::{buchberger, buchberger_with, normal_form, resultant, Algorithm, GbOptions};
use dualnet::geom::{collinear3, cross, dot, isect, Collineation, ProjPoint};
use dualnet::groups::CayleyTable;
use dualnet::lame::{all_configurations, closure_chain, search_chain, validate_lame, CollinearTriple, LameConfig, TriplePoint};
use dualnet::netcfg::{alt4_det, build_alt4, build_c3c3, c3c3_constraints, ALT4_Y};
use dualnet::poly::{Monomial, MonomialOrder, MultiPoly, OrderKind, PolyRing};
use dualnet::scalar::{CycRat, CyclotomicField, Field, PrimeField, Rational, Rationals};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn cyc() -> impl Strategy<Value = CycRat> {
    (rational(), rational()).prop_map(|(a, b)| CycRat::new(a, b))
}

type Terms = Vec<([u16; 3], i64)>;

fn terms(max_terms: usize, max_exp: u16) -> impl Strategy<Value = Terms> {
    proptest::collection::vec((proptest::array::uniform3(0..=max_exp), -9i64..=9), 0..=max_terms)
}

fn poly_of<F: Field>(ring: &Arc<PolyRing<F>>, t: &Terms) -> MultiPoly<F> {
    let field = ring.field();
    MultiPoly::from_terms(
        ring,
        t.iter().map(|(e, c)| (Monomial::from_exps(e).unwrap(), field.from_i64(*c))).collect(),
    )
}

fn q_ring(kind: OrderKind) -> Arc<PolyRing<Rationals>> {
    PolyRing::new(Rationals, &["x", "y", "z"], kind).unwrap()
}

fn lms<F: Field>(g: &[MultiPoly<F>]) -> Vec<Monomial> {
    g.iter().map(|p| *p.leading_monomial().unwrap()).collect()
}

fn point_of<F: Field>(ring: &Arc<PolyRing<F>>, t: &[Terms; 3]) -> Option<ProjPoint<F>> {
    ProjPoint::new([poly_of(ring, &t[0]), poly_of(ring, &t[1]), poly_of(ring, &t[2])]).ok()
}

fn point_terms() -> impl Strategy<Value = [Terms; 3]> {
    [terms(3, 2), terms(3, 2), terms(3, 2)]
}

fn field_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
    prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
    prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
    prop_assert_eq!(f.add(a, b), f.add(b, a));
    prop_assert_eq!(f.mul(a, b), f.mul(b, a));
    if !f.is_zero(a) {
        prop_assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
    }
    Ok(())
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        field_axioms(&Rationals, &a, &b, &c)?;
        let s = &a + &b;
        prop_assert!(s.denom() > &0.into());
        prop_assert_eq!(num::Integer::gcd(s.numer(), s.denom()), if s.is_zero() { s.denom().clone() } else { 1.into() });
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        field_axioms(&CyclotomicField, &a, &b, &c)?;
    }

    #[test]
    fn conjugation_is_an_automorphism(a in cyc(), b in cyc(), r in rational()) {
        let f = CyclotomicField;
        prop_assert_eq!(f.mul(&a, &b).conj(), f.mul(&a.conj(), &b.conj()));
        prop_assert_eq!(f.add(&a, &b).conj(), f.add(&a.conj(), &b.conj()));
        let q = CycRat::from_rational(r);
        prop_assert_eq!(q.conj(), q);
    }

    #[test]
    fn prime_field_axioms(a in 0i64..32029, b in 0i64..32029, c in 0i64..32029) {
        let f = PrimeField::with_omega(32029).unwrap();
        field_axioms(&f, &f.elem(a), &f.elem(b), &f.elem(c))?;
        let w = f.omega().unwrap();
        prop_assert!(f.is_zero(&f.add(&f.add(&f.mul(&w, &w), &w), &f.one())));
    }

    #[test]
    fn polynomial_ring_axioms(a in terms(5, 3), b in terms(5, 3), c in terms(5, 3)) {
        for kind in [OrderKind::Lex, OrderKind::DegRevLex] {
            let r = q_ring(kind);
            let (p, q, s) = (poly_of(&r, &a), poly_of(&r, &b), poly_of(&r, &c));
            prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
            prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(a in terms(5, 3), b in terms(4, 2)) {
        let r = q_ring(OrderKind::DegRevLex);
        let (p, q) = (poly_of(&r, &a), poly_of(&r, &b));
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn leading_term_is_multiplicative(a in terms(5, 3), b in terms(5, 3)) {
        for kind in [OrderKind::Lex, OrderKind::DegRevLex] {
            let r = q_ring(kind);
            let (p, q) = (poly_of(&r, &a), poly_of(&r, &b));
            prop_assume!(!p.is_zero() && !q.is_zero());
            let lt = (&p * &q).leading_term().unwrap();
            prop_assert_eq!(lt, &p.leading_term().unwrap() * &q.leading_term().unwrap());
        }
    }

    #[test]
    fn display_parses_back(a in terms(6, 3)) {
        let r = PolyRing::new(CyclotomicField, &["x", "y", "z"], OrderKind::Lex).unwrap();
        let w = MultiPoly::constant(&r, CycRat::omega());
        let p = &poly_of(&r, &a) * &(&w + &MultiPoly::from_i64(&r, 2));
        prop_assert_eq!(dualnet::poly::parse_poly(&r, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in terms(5, 3), b in terms(5, 3), pt in proptest::array::uniform3(-5i64..5)) {
        let r = q_ring(OrderKind::DegRevLex);
        let (p, q) = (poly_of(&r, &a), poly_of(&r, &b));
        let pt: Vec<Rational> = pt.iter().map(|&v| Rational::from(v)).collect();
        let ev = |x: &MultiPoly<Rationals>| x.evaluate_at(&pt).unwrap();
        prop_assert_eq!(ev(&(&p * &q)), &ev(&p) * &ev(&q));
        prop_assert_eq!(ev(&(&p + &q)), &ev(&p) + &ev(&q));
    }
}

proptest! {
    #![proptest_config(cases(48))]

    #[test]
    fn random_bases_certify(a in terms(3, 2), b in terms(3, 2), c in terms(3, 2)) {
        let r = q_ring(OrderKind::DegRevLex);
        let f: Vec<_> = [&a, &b, &c].iter().map(|t| poly_of(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!f.is_empty());
        let gb = buchberger(&f, r.order(), true).unwrap();
        let cert = gb.certificate();
        prop_assert_eq!(cert.inputs_checked, f.len());
        prop_assert_eq!(cert.cofactor_rows_checked, gb.generators().len());
        for p in &f {
            prop_assert!(gb.contains(p).unwrap());
            let c = gb.express(p).unwrap().unwrap();
            let mut sum = MultiPoly::zero(&r);
            for (ci, fi) in c.iter().zip(gb.inputs()) {
                sum = &sum + &(ci * fi);
            }
            prop_assert_eq!(&sum, p);
        }
    }

    #[test]
    fn f4_matches_buchberger_mod_p(a in terms(4, 2), b in terms(4, 2), c in terms(4, 2)) {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), &["x", "y", "z"], OrderKind::DegRevLex).unwrap();
        let f: Vec<_> = [&a, &b, &c].iter().map(|t| poly_of(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!f.is_empty());
        let gb = buchberger(&f, r.order(), false).unwrap();
        let opts = GbOptions { algorithm: Algorithm::F4, ..GbOptions::default() };
        let f4 = buchberger_with(&f, r.order(), &opts).unwrap();
        prop_assert_eq!(gb.generators(), f4.generators());
    }

    #[test]
    fn leading_monomials_agree_across_primes(a in terms(3, 2), b in terms(3, 2)) {
        let r = q_ring(OrderKind::DegRevLex);
        let f: Vec<_> = [&a, &b].iter().map(|t| poly_of(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!f.is_empty());
        let over_q = lms(buchberger(&f, r.order(), false).unwrap().generators());
        for p in [32003u64, 32009, 32027] {
            let field = PrimeField::new(p).unwrap();
            let rp = r.over(field);
            let fp: Vec<_> = f.iter().map(|x| x.map_coefficients(&rp, |c| field.from_rational(c)).unwrap()).collect();
            let gp = buchberger(&fp, rp.order(), false).unwrap();
            prop_assert_eq!(lms(gp.generators()), over_q.clone(), "p = {}", p);
        }
    }

    #[test]
    fn resultant_lies_in_elimination_ideal(a in terms(3, 2), b in terms(3, 2)) {
        let r = PolyRing::new(Rationals, &["x", "y", "z"], OrderKind::Lex).unwrap();
        let (f, g) = (poly_of(&r, &a), poly_of(&r, &b));
        prop_assume!(f.degree_in(0) > 0 && g.degree_in(0) > 0);
        let res = resultant(&f, &g, 0).unwrap();
        prop_assert_eq!(res.degree_in(0), 0);
        let gb = buchberger(&[f, g], &MonomialOrder::lex(3), false).unwrap();
        prop_assert!(normal_form(&res, gb.generators()).is_zero());
    }

    #[test]
    fn cross_is_orthogonal(p in point_terms(), q in point_terms()) {
        let r = q_ring(OrderKind::DegRevLex);
        let (Some(p), Some(q)) = (point_of(&r, &p), point_of(&r, &q)) else { return Ok(()) };
        let c = cross(p.coords(), q.coords());
        prop_assert!(dot(&c, p.coords()).is_zero());
        prop_assert!(dot(&c, q.coords()).is_zero());
    }

    #[test]
    fn meet_lies_on_both_lines(pts in proptest::array::uniform4(point_terms())) {
        let r = q_ring(OrderKind::DegRevLex);
        let ps: Vec<_> = pts.iter().filter_map(|t| point_of(&r, t)).collect();
        prop_assume!(ps.len() == 4);
        let Ok(m) = isect(&ps[0], &ps[1], &ps[2], &ps[3]) else { return Ok(()) };
        prop_assert!(dot(m.coords(), &cross(ps[0].coords(), ps[1].coords())).is_zero());
        prop_assert!(dot(m.coords(), &cross(ps[2].coords(), ps[3].coords())).is_zero());
    }

    #[test]
    fn collinearity_is_alternating(pts in proptest::array::uniform3(point_terms())) {
        let r = q_ring(OrderKind::DegRevLex);
        let ps: Vec<_> = pts.iter().filter_map(|t| point_of(&r, t)).collect();
        prop_assume!(ps.len() == 3);
        let d = collinear3(&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(collinear3(&ps[1], &ps[0], &ps[2]), -d.clone());
        prop_assert_eq!(collinear3(&ps[1], &ps[2], &ps[0]), d.clone());
        prop_assert_eq!(collinear3(&ps[0], &ps[2], &ps[1]), -d);
    }

    #[test]
    fn collineations_compose(m1 in proptest::array::uniform3(point_terms()), m2 in proptest::array::uniform3(point_terms()), p in point_terms()) {
        let r = q_ring(OrderKind::DegRevLex);
        let rows = |m: &[[Terms; 3]; 3]| m.clone().map(|row| row.map(|t| poly_of(&r, &t)));
        let (Ok(a), Ok(b)) = (Collineation::new(rows(&m1)), Collineation::new(rows(&m2))) else { return Ok(()) };
        let Some(p) = point_of(&r, &p) else { return Ok(()) };
        let lhs = a.compose(&b).apply(&p);
        let rhs = a.apply(&b.apply(&p));
        if lhs.coords().iter().all(|c| !c.is_zero()) || rhs.coords().iter().any(|c| !c.is_zero()) {
            prop_assert!(lhs.proj_eq(&rhs));
        }
    }
}

#[test]
fn c3c3_constraints_have_degree_three_in_x_y() {
    let net = build_c3c3().unwrap();
    let sys = c3c3_constraints(&net).unwrap();
    let x = net.ring.var_index("x").unwrap();
    let y = net.ring.var_index("y").unwrap();
    for l in &sys.equations {
        assert_eq!(l.poly.degree_in_vars(&[x, y]), 3, "{}", l.name);
    }
}

#[test]
fn c3c3_beta_orbit_and_definitions() {
    let net = build_c3c3().unwrap();
    let beta = net.collineation("beta").unwrap();
    assert!(beta.pow(3).is_scalar());
    let p32 = net.point(3, 2).unwrap();
    assert!(beta.apply(&beta.apply(p32)).proj_eq(net.point(5, 2).unwrap()));
    for d in &net.definitions {
        let t = net.point(d.target.label, d.target.component).unwrap();
        let v: Vec<_> = d.via.iter().map(|q| net.point(q.label, q.component).unwrap()).collect();
        assert!(collinear3(t, v[0], v[1]).is_zero());
        assert!(collinear3(t, v[2], v[3]).is_zero());
    }
}

#[test]
fn alt4_definitions_and_nonzero_set() {
    let net = build_alt4().unwrap();
    for d in &net.definitions {
        let t = net.point(d.target.label, d.target.component).unwrap();
        let v: Vec<_> = d.via.iter().map(|q| net.point(q.label, q.component).unwrap()).collect();
        assert!(collinear3(t, v[0], v[1]).is_zero(), "{:?}", d);
        assert!(collinear3(t, v[2], v[3]).is_zero(), "{:?}", d);
    }
    assert_eq!(ALT4_Y.len(), 36);
    for (i, j, k) in ALT4_Y {
        assert!(!alt4_det(&net, i, j, k).unwrap().is_zero(), "d({i},{j},{k})");
    }
}

fn automorphisms(t: &CayleyTable) -> Vec<Vec<u32>> {
    let labels: Vec<u32> = t.labels().collect();
    let n = labels.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm over all relabelings
    let mut c = vec![0usize; n];
    let mut check = |perm: &[usize]| {
        let map = |l: u32| labels[perm[labels.iter().position(|&x| x == l).unwrap()]];
        if labels.iter().all(|&i| labels.iter().all(|&j| map(t.mul(i, j).unwrap()) == t.mul(map(i), map(j)).unwrap())) {
            out.push(labels.iter().map(|&l| map(l)).collect());
        }
    };
    check(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[test]
fn lame_validity_is_automorphism_invariant() {
    let t = CayleyTable::builtin("c2c4").unwrap();
    let labels: Vec<u32> = t.labels().collect();
    let autos = automorphisms(&t);
    assert!(autos.len() > 1);
    let configs = all_configurations(&t).unwrap();
    let map_line = |a: &[u32], l: &CollinearTriple| {
        let m = |x: u32| a[labels.iter().position(|&y| y == x).unwrap()];
        CollinearTriple { i: m(l.i), j: m(l.j), k: m(l.k) }
    };
    for a in &autos {
        for cfg in &configs {
            let mapped = LameConfig { left: cfg.left.map(|l| map_line(a, &l)), right: cfg.right.map(|l| map_line(a, &l)) };
            assert!(validate_lame(&mapped, &t).is_ok(), "{cfg:?} under {a:?}");
        }
    }
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn closure_is_monotone_and_search_replays(seed in proptest::collection::btree_set((1u32..=8, 1u8..=3), 6..14)) {
        let t = CayleyTable::builtin("c2c4").unwrap();
        let seed: BTreeSet<TriplePoint> = seed.into_iter().map(|(l, c)| TriplePoint::new(l, c)).collect();
        let goal = dualnet::lame::all_points(&t);
        let s = search_chain(&t, &seed, &goal).unwrap();
        prop_assert!(seed.is_subset(&s.known));
        let replay = closure_chain(&t, &seed, &s.chain).unwrap();
        prop_assert!(replay.failure.is_none());
        prop_assert_eq!(&replay.known, &s.known);
        let mut known = seed.clone();
        for step in &replay.steps {
            for p in &step.added {
                prop_assert!(known.insert(*p));
                prop_assert_eq!(replay.provenance.get(p), Some(&step.index));
            }
        }
        prop_assert_eq!(known, replay.known);
    }
}

#[test]
fn reports_are_deterministic() {
    use dualnet::verify::{verify_c2c4, verify_c3c3, C3c3Part, SeedChoice};
    let strip = |r: &dualnet::verify::VerificationReport| {
        r.checks.iter().map(|c| (c.name.clone(), c.status, c.detail.clone())).collect::<Vec<_>>()
    };
    let a = verify_c2c4(&SeedChoice::Corrected).unwrap();
    let b = verify_c2c4(&SeedChoice::Corrected).unwrap();
    assert_eq!(strip(&a), strip(&b));
    let a = verify_c3c3(C3c3Part::Uv).unwrap();
    let b = verify_c3c3(C3c3Part::Uv).unwrap();
    assert_eq!(strip(&a), strip(&b));
}
