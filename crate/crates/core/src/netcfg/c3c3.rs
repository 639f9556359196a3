//! The C3×C3 construction over Q(ω)[u, v, x, y, a, b].
//!
//! Components 1, 2, 3 carry the cosets of the subgroup generated by the
//! order-three collineations `alpha` (cyclic coordinate shift) and `beta`.
//! Labels 0..=2 and 3..=5 index the two cosets.

use crate::error::Result;
use crate::geom::{idet, Collineation};
use crate::groups::CayleyTable;
use crate::poly::{parse_poly, OrderKind, PolyRing};
use crate::scalar::CyclotomicField;

use super::{ConstraintSystem, Labeled, NetConstruction};

/// Coordinates as printed for the construction, `(label, component, point)`.
pub const C3C3_PRINTED: [(u32, u8, &str); 15] = [
    (0, 1, "(1, 0, 0)"),
    (1, 1, "(0, 1, 0)"),
    (2, 1, "(0, 0, 1)"),
    (0, 3, "(a, b, 1)"),
    (1, 3, "(b, 1, a)"),
    (2, 3, "(1, a, b)"),
    (0, 2, "(b, b*a, a)"),
    (1, 2, "(a, b, b*a)"),
    (2, 2, "(b*a, a, b)"),
    (3, 2, "(x, y, 1)"),
    (4, 2, "(u, v*x, y)"),
    (5, 2, "(u*y, u*v, v*x)"),
    (3, 3, "(u*y, v*x*y, v*x)"),
    (4, 3, "(x*y, v*x, y)"),
    (5, 3, "(u*v*x, v*u*y, v*x*y)"),
];

pub const C3C3_VARS: [&str; 6] = ["u", "v", "x", "y", "a", "b"];

/// Builds the fifteen frame, coset and intersection points.
pub fn build_c3c3() -> Result<NetConstruction<CyclotomicField>> {
    let ring = PolyRing::new(CyclotomicField, &C3C3_VARS, OrderKind::Lex)?;
    let mut net = NetConstruction::new(ring.clone(), CayleyTable::builtin("c3c3")?);
    let m = |rows: [[&str; 3]; 3]| -> Result<Collineation<CyclotomicField>> {
        let mut out = Vec::new();
        for r in rows {
            out.push([parse_poly(&ring, r[0])?, parse_poly(&ring, r[1])?, parse_poly(&ring, r[2])?]);
        }
        Collineation::new(out.try_into().expect("three rows"))
    };
    let alpha = m([["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]])?;
    let beta = m([["0", "0", "u"], ["v", "0", "0"], ["0", "1", "0"]])?;
    // det(alpha) = 1, so the adjugate is the inverse
    let alpha_inv = alpha.adjugate();

    net.set(0, 1, net.parse_point("(1, 0, 0)")?);
    net.set(1, 1, net.parse_point("(0, 1, 0)")?);
    net.set(2, 1, net.parse_point("(0, 0, 1)")?);
    let p32 = net.parse_point("(x, y, 1)")?;
    let p42 = beta.apply(&p32);
    let p52 = beta.apply(&p42);
    net.set(3, 2, p32);
    net.set(4, 2, p42);
    net.set(5, 2, p52);
    let p03 = net.parse_point("(a, b, 1)")?;
    let p13 = alpha_inv.apply(&p03);
    let p23 = alpha_inv.apply(&p13);
    net.set(0, 3, p03);
    net.set(1, 3, p13);
    net.set(2, 3, p23);

    net.define((0, 2), [(0, 1), (0, 3), (1, 1), (1, 3)])?;
    net.define((1, 2), [(0, 1), (1, 3), (1, 1), (2, 3)])?;
    net.define((2, 2), [(0, 1), (2, 3), (1, 1), (0, 3)])?;
    net.define((3, 3), [(0, 1), (3, 2), (1, 1), (5, 2)])?;
    net.define((4, 3), [(0, 1), (4, 2), (1, 1), (3, 2)])?;
    net.define((5, 3), [(0, 1), (5, 2), (1, 1), (4, 2)])?;

    for v in C3C3_VARS {
        net.side_conditions.push(Labeled::new(v, parse_poly(&ring, v)?));
    }
    net.collineations.push(("alpha".into(), alpha));
    net.collineations.push(("beta".into(), beta));
    Ok(net)
}

/// The six concurrency conditions `f3..f8`. The first three have the
/// factor `a*b*v*x*y` removed.
pub fn c3c3_constraints(net: &NetConstruction<CyclotomicField>) -> Result<ConstraintSystem<CyclotomicField>> {
    let p = |l: u32, c: u8| net.point(l, c);
    let common = parse_poly(&net.ring, "a*b*v*x*y")?;
    let f3 = idet(p(0, 2)?, p(3, 3)?, p(1, 2)?, p(4, 3)?, p(2, 2)?, p(5, 3)?).exact_div(&common)?;
    let f4 = idet(p(0, 2)?, p(4, 3)?, p(1, 2)?, p(5, 3)?, p(2, 2)?, p(3, 3)?).exact_div(&common)?;
    let f5 = idet(p(0, 2)?, p(5, 3)?, p(1, 2)?, p(3, 3)?, p(2, 2)?, p(4, 3)?).exact_div(&common)?;
    let f6 = idet(p(3, 2)?, p(0, 3)?, p(4, 2)?, p(1, 3)?, p(5, 2)?, p(2, 3)?);
    let f7 = idet(p(3, 2)?, p(1, 3)?, p(4, 2)?, p(2, 3)?, p(5, 2)?, p(0, 3)?);
    let f8 = idet(p(3, 2)?, p(2, 3)?, p(4, 2)?, p(0, 3)?, p(5, 2)?, p(1, 3)?);
    Ok(ConstraintSystem {
        ring: net.ring.clone(),
        equations: vec![
            Labeled::new("f3", f3),
            Labeled::new("f4", f4),
            Labeled::new("f5", f5),
            Labeled::new("f6", f6),
            Labeled::new("f7", f7),
            Labeled::new("f8", f8),
        ],
        nonzeros: net.side_conditions.clone(),
        notes: vec!["f3, f4, f5 divided by a*b*v*x*y".into()],
    })
}
