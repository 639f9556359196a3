//! Exact checks over Q(ω) for the C3×C3 construction.

use std::sync::Arc;

use rand::Rng;

use crate::elim::{buchberger, resultant_named};
use crate::error::{Error, Result};
use crate::geom::idet;
use crate::netcfg::{build_c3c3, c3c3_constraints, ConstraintSystem, NetConstruction};
use crate::poly::{parse_poly, MultiPoly, OrderKind, PolyRing, RationalFunction};
use crate::scalar::{CycRat, CyclotomicField, Field};

use super::{fail, info, pass, residual_detail, rng, sign_relation, spot_check, verdict, Outcome, VerificationReport};

type Q = CyclotomicField;
type Poly = MultiPoly<Q>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum C3c3Part {
    Uv,
    Ab,
    Theorem,
    All,
}

impl std::str::FromStr for C3c3Part {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uv" => Ok(C3c3Part::Uv),
            "ab" => Ok(C3c3Part::Ab),
            "theorem" => Ok(C3c3Part::Theorem),
            "all" => Ok(C3c3Part::All),
            _ => Err(Error::Structural(format!("unknown part `{s}` (expected uv, ab, theorem or all)"))),
        }
    }
}

pub fn verify_c3c3(part: C3c3Part) -> Result<VerificationReport> {
    Ok(match part {
        C3c3Part::Uv => verify_c3c3_lemma_uv()?,
        C3c3Part::Ab => verify_c3c3_lemma_ab()?,
        C3c3Part::Theorem => verify_c3c3_theorem()?,
        C3c3Part::All => {
            let mut r = VerificationReport::new("c3c3");
            r.merge(verify_c3c3_lemma_uv()?);
            r.merge(verify_c3c3_lemma_ab()?);
            r.merge(verify_c3c3_theorem()?);
            r
        }
    })
}

fn setup() -> Result<(NetConstruction<Q>, ConstraintSystem<Q>)> {
    let net = build_c3c3()?;
    let sys = c3c3_constraints(&net)?;
    Ok((net, sys))
}

fn eq<'a>(sys: &'a ConstraintSystem<Q>, name: &str) -> Result<&'a Poly> {
    sys.equation(name).ok_or_else(|| Error::Structural(format!("missing equation {name}")))
}

/// One cleared-denominator identity `f6|s * den = sign * idet|s * num`.
struct UvIdentity {
    name: &'static str,
    /// Points of the concurrency determinant, `(label, component)`.
    det: [(u32, u8); 6],
    /// Substitution as `(variable, replacement)`.
    sub: (&'static str, &'static str),
    num: &'static str,
    den: &'static str,
    /// Sign relating the computed quotient to the printed one.
    expected_sign: i8,
}

const UV_IDENTITIES: [UvIdentity; 3] = [
    UvIdentity {
        name: "u=1",
        det: [(0, 2), (4, 3), (3, 2), (0, 3), (4, 2), (1, 3)],
        sub: ("u", "1"),
        num: "v - 1",
        den: "a*y - 1",
        expected_sign: 1,
    },
    UvIdentity {
        name: "v=1",
        det: [(0, 2), (5, 3), (1, 2), (3, 3), (3, 2), (0, 3)],
        sub: ("v", "1"),
        num: "u - 1",
        den: "(u*a - x)*b*y",
        expected_sign: -1,
    },
    UvIdentity {
        name: "u=v",
        det: [(0, 2), (3, 3), (1, 2), (4, 3), (3, 2), (0, 3)],
        sub: ("u", "v"),
        num: "v - 1",
        den: "(b - y)*a*x",
        expected_sign: -1,
    },
];

/// The three rational-function identities that force `u^3 = v^3 = 1`
/// to imply `u = v = 1` on the net.
pub fn verify_c3c3_lemma_uv() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("c3c3-lemma-uv");
    let (net, sys) = setup()?;
    let ring = net.ring.clone();
    let f6 = eq(&sys, "f6")?.clone();
    for id in &UV_IDENTITIES {
        let prepared = (|| -> Result<(Poly, Poly)> {
            let p = |(l, c): (u32, u8)| net.point(l, c);
            let d = idet(p(id.det[0])?, p(id.det[1])?, p(id.det[2])?, p(id.det[3])?, p(id.det[4])?, p(id.det[5])?);
            let v = ring.var_index(id.sub.0)?;
            let s = [(v, parse_poly(&ring, id.sub.1)?)];
            let lhs = &f6.compose(&s)? * &parse_poly(&ring, id.den)?;
            let rhs = &d.compose(&s)? * &parse_poly(&ring, id.num)?;
            Ok((lhs, rhs))
        })();
        let (lhs, rhs) = match prepared {
            Ok(x) => x,
            Err(e) => {
                report.push(format!("identity {}", id.name), fail(format!("error: {e}")), 0);
                continue;
            }
        };
        report.run(format!("spot {}", id.name), || {
            Ok(verdict(spot_check(&lhs, &rhs, id.expected_sign, 8)?, "8 random integer points"))
        });
        report.run(format!("identity {}", id.name), || {
            if rhs.is_zero() {
                return Ok(fail("concurrency determinant vanishes identically"));
            }
            Ok(match sign_relation(&lhs, &rhs) {
                Some(s) if s == id.expected_sign => pass(format!(
                    "f6 / det = {}({}) / ({}) exactly, residual 0",
                    if s < 0 { "-" } else { "" },
                    id.num,
                    id.den
                )),
                Some(s) => fail(format!("identity holds with sign {s}, expected {}", id.expected_sign)),
                None => fail(residual_detail(&(&lhs - &rhs))),
            })
        });
    }
    Ok(report)
}

/// Cofactor identity `Σ c_i g_i = t`, re-multiplied from scratch.
fn cofactor_residual(inputs: &[Poly], cofactors: &[Poly], t: &Poly) -> Result<Poly> {
    let mut acc = MultiPoly::zero(t.ring());
    for (c, g) in cofactors.iter().zip(inputs) {
        acc = acc.checked_add(&c.checked_mul(g)?)?;
    }
    acc.checked_sub(t)
}

/// Gröbner basis of `{f3..f8, a - w, b - 1}` with cofactors and the two
/// membership certificates.
pub fn verify_c3c3_lemma_ab() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("c3c3-lemma-ab");
    let (net, sys) = setup()?;
    let ring = net.ring.clone();
    let mut inputs: Vec<Poly> = sys.equations.iter().map(|l| l.poly.clone()).collect();
    inputs.push(parse_poly(&ring, "a - w")?);
    inputs.push(parse_poly(&ring, "b - 1")?);
    let targets = [
        ("T1", parse_poly(&ring, "18*x*v*(v - 1)*(v*x - y^2)*(v*x - w*y^2)")?),
        ("T2", parse_poly(&ring, "18*(v - 1)*(u*y^3 - v^2*x^3)")?),
    ];
    let mut gb = None;
    report.run("groebner basis", || {
        let g = buchberger(&inputs, ring.order(), true)?;
        let c = g.certificate();
        let detail = format!(
            "{} generators, lex(u,v,x,y,a,b); certified: {} S-pairs, {} inputs, {} cofactor rows reduce/re-multiply exactly",
            g.generators().len(),
            c.spairs_checked,
            c.inputs_checked,
            c.cofactor_rows_checked
        );
        let unit = g.is_unit_ideal();
        gb = Some(g);
        Ok(verdict(!unit, if unit { "ideal is the unit ideal".into() } else { detail }))
    });
    let Some(gb) = gb else {
        return Ok(report);
    };
    let mut integral = true;
    for (name, t) in &targets {
        report.run(format!("normal form {name}"), || {
            let r = gb.normal_form(t)?;
            Ok(verdict(r.is_zero(), residual_detail(&r)))
        });
        report.run(format!("cofactor identity {name}"), || {
            let Some(cof) = gb.express(t)? else {
                return Ok(fail("not a member"));
            };
            let moved: Vec<Poly> = gb.inputs().to_vec();
            let target = gb.adopt(t)?;
            let res = cofactor_residual(&moved, &cof, &target)?;
            let eighteen = CycRat::from_i64(18);
            integral &= cof.iter().all(|c| c.terms().iter().all(|(_, x)| (&eighteen * x).is_integral()));
            let degs: Vec<String> = cof.iter().map(|c| c.total_degree().to_string()).collect();
            Ok(verdict(
                res.is_zero(),
                format!("sum s_i f_i + p1 (a - w) + p2 (b - 1) = {name}; cofactor degrees [{}]; {}", degs.join(","), residual_detail(&res)),
            ))
        });
    }
    let (status, detail) = info(format!(
        "18 * cofactors {} coefficients in Z[w] (these cofactors come from this engine's basis and need not match any other system's)",
        if integral { "have" } else { "do not all have" }
    ));
    report.push("cofactors in Z[w]", (status, detail), 0);
    Ok(report)
}

const THEOREM_VARS: [&str; 6] = ["u", "v", "X", "Y", "a", "b"];

struct Theorem {
    ring: Arc<PolyRing<Q>>,
    f: Vec<Poly>,
}

impl Theorem {
    fn new() -> Result<Self> {
        let (_, sys) = setup()?;
        let ring = PolyRing::new(CyclotomicField, &THEOREM_VARS, OrderKind::Lex)?;
        // x, y become X, Y in the same positions
        let f = sys.equations.iter().map(|l| MultiPoly::from_terms(&ring, l.poly.terms().to_vec())).collect();
        Ok(Theorem { ring, f })
    }

    fn p(&self, s: &str) -> Result<Poly> {
        parse_poly(&self.ring, s)
    }

    /// `F3..F8`.
    fn big_f(&self, i: usize) -> &Poly {
        &self.f[i - 3]
    }

    fn rf(&self, num: &str, den: &str) -> Result<RationalFunction<Q>> {
        RationalFunction::new(self.p(num)?, self.p(den)?)
    }

    /// The action of beta on polynomials in X, Y.
    fn beta_code(&self) -> Result<Vec<(usize, RationalFunction<Q>)>> {
        Ok(vec![(2, self.rf("u*Y", "v*X")?), (3, self.rf("u", "X")?)])
    }

    fn beta_prose(&self) -> Result<Vec<(usize, RationalFunction<Q>)>> {
        Ok(vec![(2, self.rf("u", "Y")?), (3, self.rf("v*X", "Y")?)])
    }
}

fn is_term(p: &Poly) -> bool {
    p.len() == 1
}

/// Eigenvector checks: `beta(P) = lambda * P` for each `P` in `vecs`.
fn eigen_check(
    beta: &[(usize, RationalFunction<Q>)],
    vecs: &[(&str, Poly)],
    lambda: &RationalFunction<Q>,
) -> Result<Outcome> {
    // fast evaluation at random points first
    let mut rng = rng();
    let field = CyclotomicField;
    for _ in 0..4 {
        let pt: Vec<CycRat> = (0..6).map(|_| CycRat::from_i64(rng.gen_range(2..40))).collect();
        let mut image = pt.clone();
        for (v, rf) in beta {
            image[*v] = rf.evaluate_at(&pt)?;
        }
        let lam = lambda.evaluate_at(&pt)?;
        for (name, p) in vecs {
            if p.evaluate_at(&image)? != field.mul(&lam, &p.evaluate_at(&pt)?) {
                return Ok(fail(format!("{name}: random evaluation disagrees")));
            }
        }
    }
    for (name, p) in vecs {
        let img = p.substitute(beta)?;
        let want = RationalFunction::new(lambda.numer() * p, lambda.denom().clone())?;
        if !img.equals(&want)? {
            return Ok(fail(format!("{name} is not an eigenvector for {lambda}")));
        }
    }
    let names: Vec<&str> = vecs.iter().map(|(n, _)| *n).collect();
    Ok(pass(format!("{} eigenvectors with eigenvalue {lambda}", names.join(", "))))
}

pub fn verify_c3c3_theorem() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("c3c3-theorem");
    let th = Theorem::new()?;
    let f = |i| th.big_f(i);
    let w = th.p("w")?;
    let w2 = th.p("w^2")?;

    // (i) beta permutes {F3,F4,F5} and {F6,F7,F8} up to monomial factors
    report.run("(i) beta permutes F3..F5 and F6..F8", || {
        let beta = th.beta_code()?;
        let mut images = Vec::new();
        for group in [[3usize, 4, 5], [6, 7, 8]] {
            for &i in &group {
                let img = f(i).substitute(&beta)?;
                if !is_term(img.denom()) {
                    return Ok(fail(format!("F{i}: denominator {} is not a monomial", img.denom())));
                }
                let hit = group.iter().find_map(|&j| {
                    let q = img.numer().exact_div(f(j)).ok()?;
                    is_term(&q).then_some((j, q))
                });
                match hit {
                    Some((j, q)) => {
                        let g = q.leading_monomial().unwrap().gcd(img.denom().leading_monomial().unwrap());
                        let g = Poly::from_terms(&th.ring, vec![(g, CycRat::from_i64(1))]);
                        images.push((i, j, RationalFunction::new(q.exact_div(&g)?, img.denom().exact_div(&g)?)?))
                    }
                    None => return Ok(fail(format!("image of F{i} is not a monomial multiple of any F in its group"))),
                }
            }
        }
        let mut targets: Vec<usize> = images.iter().map(|t| t.1).collect();
        targets.sort_unstable();
        if targets != [3, 4, 5, 6, 7, 8] {
            return Ok(fail(format!("images are not a permutation: {targets:?}")));
        }
        let desc: Vec<String> = images.iter().map(|(i, j, m)| format!("F{i} -> ({m}) F{j}")).collect();
        Ok(pass(desc.join("; ")))
    });

    let e = [th.p("u*v*X + w^2*u*Y^2 + w*v*X^2*Y")?, th.p("v*X^2 + w^2*u*Y + w*Y^2*X")?];
    let eb = [th.p("u*v*X + w*u*Y^2 + w^2*v*X^2*Y")?, th.p("v*X^2 + w*u*Y + w^2*Y^2*X")?];
    let q = [&(&w * f(6)) - f(7), &(&w2 * f(3)) - f(4)];
    let qb = [&(&w2 * f(6)) - f(7), &(&w * f(3)) - f(4)];

    // (ii) eigenvectors
    let eig = |name: &str, bar: bool| -> Vec<(String, Poly)> {
        let (ev, qv) = if bar { (&eb, &qb) } else { (&e, &q) };
        vec![
            (format!("{name}E1"), ev[0].clone()),
            (format!("{name}E2"), ev[1].clone()),
            (format!("{name}Q1"), qv[0].clone()),
            (format!("{name}Q2"), qv[1].clone()),
        ]
    };
    let cases: [(&str, bool, bool, &str, &str); 4] = [
        ("(ii) eigenvectors, X' = u/Y, Y' = vX/Y", false, true, "w*u*v", "Y^3"),
        ("(ii) conjugate eigenvectors, X' = u/Y, Y' = vX/Y", true, true, "w^2*u*v", "Y^3"),
        ("(ii) eigenvectors, X' = uY/(vX), Y' = u/X", false, false, "w^2*u^2", "v*X^3"),
        ("(ii) conjugate eigenvectors, X' = uY/(vX), Y' = u/X", true, false, "w*u^2", "v*X^3"),
    ];
    for (name, bar, prose, ln, ld) in cases {
        report.run(name, || {
            let beta = if prose { th.beta_prose()? } else { th.beta_code()? };
            let vecs = eig(if bar { "bar" } else { "" }, bar);
            let refs: Vec<(&str, Poly)> = vecs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
            eigen_check(&beta, &refs, &th.rf(ln, ld)?)
        });
    }

    // (iii) Q = G E
    let g = [
        th.p("(w^2*b + a*b^2*w + a^2)*(w^2 + v*w + u)")?,
        th.p("(b^2*w + w^2*a + a^2*b)*(u*v + w^2*u + v*w)")?,
        th.p("w*(w^2*b + a*b^2*w + a^2)*(w + w^2*v + u)")?,
        th.p("(b^2*w + w^2*a + a^2*b)*(w*u + w^2*v + u*v)")?,
    ];
    let gb = [
        th.p("(w*b + w^2*a*b^2 + a^2)*(w + w^2*v + u)")?,
        th.p("(w*a + a^2*b + w^2*b^2)*(w*u + w^2*v + u*v)")?,
        th.p("w^2*(w*b + w^2*a*b^2 + a^2)*(w^2 + v*w + u)")?,
        th.p("(w*a + a^2*b + w^2*b^2)*(u*v + w^2*u + v*w)")?,
    ];
    let decomps: [(&str, &Poly, &Poly, &Poly, &Poly, &Poly); 4] = [
        ("Q1 = G11 E1 + G12 E2", &q[0], &g[0], &e[0], &g[1], &e[1]),
        ("Q2 = G21 E1 + G22 E2", &q[1], &g[2], &e[0], &g[3], &e[1]),
        ("barQ1 = barG11 barE1 + barG12 barE2", &qb[0], &gb[0], &eb[0], &gb[1], &eb[1]),
        ("barQ2 = barG21 barE1 + barG22 barE2", &qb[1], &gb[2], &eb[0], &gb[3], &eb[1]),
    ];
    for (name, lhs, g1, e1, g2, e2) in decomps {
        report.run(format!("(iii) {name}"), || {
            let rhs = &(g1 * e1) + &(g2 * e2);
            if !spot_check(lhs, &rhs, 1, 4)? {
                return Ok(fail("random evaluation disagrees"));
            }
            let r = lhs - &rhs;
            Ok(verdict(r.is_zero(), residual_detail(&r)))
        });
    }

    // (iv) resultants in X
    let res_cases: [(&str, &[Poly; 2], &str); 2] = [
        ("(iv) Res_X(E1, E2) = w^2 uvY(uv - Y^3)^2", &e, "w^2*u*v*Y*(u*v - Y^3)^2"),
        ("(iv) Res_X(barE1, barE2) = w uvY(uv - Y^3)^2", &eb, "w*u*v*Y*(u*v - Y^3)^2"),
    ];
    for (name, pair, want) in res_cases {
        report.run(name, || {
            let want = th.p(want)?;
            let r = resultant_named(&pair[0], &pair[1], "X")?;
            Ok(match sign_relation(&r, &want) {
                Some(1) => pass("exact"),
                Some(_) => pass("equal up to the unit -1"),
                None => fail(residual_detail(&(&r - &want))),
            })
        });
    }

    // (v) determinant factorizations
    let det_cases: [(&str, &[Poly; 4], &str); 2] = [
        (
            "(v) det G = (2 + w^2)(...)(u - v)(u - 1)(v - 1)",
            &g,
            "(2 + w^2)*(b^2*w + w^2*a + b*a^2)*(w*a*b^2 + w^2*b + a^2)*(u - v)*(u - 1)*(v - 1)",
        ),
        (
            "(v) det barG = (2 + w)(...)(u - v)(u - 1)(v - 1)",
            &gb,
            "(2 + w)*(a*w + b*a^2 + w^2*b^2)*(w*b + w^2*a*b^2 + a^2)*(u - v)*(u - 1)*(v - 1)",
        ),
    ];
    for (name, m, want) in det_cases {
        report.run(name, || {
            let d = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
            let r = &d - &th.p(want)?;
            Ok(verdict(r.is_zero(), residual_detail(&r)))
        });
    }

    // (vi) closing resultants of the a, b factors of the two determinants
    report.run("(vi) closing resultants in a and b", || {
        let a1 = th.p("(-b + a*b^2*w - w*b + a^2)*(-b^2*w + a + a*w - b*a^2)")?;
        let a2 = th.p("(-w*b + a*b^2 + a*b^2*w - a^2)*(a*w + b*a^2 - b^2 - b^2*w)")?;
        let p1 = th.p("(b^2*w + w^2*a + b*a^2)*(w*a*b^2 + w^2*b + a^2)")?;
        let p2 = th.p("(a*w + b*a^2 + w^2*b^2)*(w*b + w^2*a*b^2 + a^2)")?;
        let (s1, s2) = (sign_relation(&a1, &p1), sign_relation(&a2, &p2));
        if s1.is_none() || s2.is_none() {
            return Ok(fail("the resultant inputs are not the a,b-factors of det G and det barG"));
        }
        let mut parts = Vec::new();
        for (var, other) in [("a", "b"), ("b", "a")] {
            let r = resultant_named(&a1, &a2, var)?;
            let six = th.p(&format!("({other}^3 - 1)^6"))?;
            let quot = match r.exact_div(&six) {
                Ok(q) => q,
                Err(_) => return Ok(fail(format!("Res_{var} is not divisible by ({other}^3 - 1)^6"))),
            };
            let want = th.p(&format!("9*{other}^7"))?;
            match sign_relation(&quot, &want) {
                Some(s) => parts.push(format!(
                    "Res_{var} / ({other}^3 - 1)^6 = {}9{other}^7",
                    if s < 0 { "-" } else { "" }
                )),
                None => return Ok(fail(format!("Res_{var} / ({other}^3 - 1)^6 = {quot}"))),
            }
        }
        Ok(pass(format!(
            "{}; nonzero for a, b not cube roots of unity",
            parts.join("; ")
        )))
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    #[test]
    fn lemma_uv_passes() {
        let r = verify_c3c3_lemma_uv().unwrap();
        assert_eq!(r.overall, Status::Pass, "{r}");
        assert_eq!(r.checks.len(), 6);
    }

    #[test]
    fn part_names() {
        assert_eq!("theorem".parse::<C3c3Part>().unwrap(), C3c3Part::Theorem);
        assert!("x".parse::<C3c3Part>().is_err());
    }
}
