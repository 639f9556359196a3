//! The Alt4 construction over Q[a, b, c, d1, ..., d6].
//!
//! Points `i_1, i_2, i_3` for the twelve group elements. The frame and the
//! `3_*`, `4_*` points depend on `a, b, c`; the remaining ones are obtained
//! by iterated intersections from four parameter points on the line at
//! `z = 1`.

use crate::error::{Error, Result};
use crate::geom::collinear3;
use crate::groups::CayleyTable;
use crate::lame::TriplePoint;
use crate::poly::{parse_poly, strip_factor, MultiPoly, OrderKind, PolyRing};
use crate::scalar::Rationals;

use super::{ConstraintSystem, Labeled, NetConstruction};

pub const ALT4_VARS: [&str; 9] = ["a", "b", "c", "d1", "d2", "d3", "d4", "d5", "d6"];

/// Triples `(i, j, k)` with `k != i*j` whose collinearity determinant is
/// assumed nonzero.
pub const ALT4_Y: [(u32, u32, u32); 36] = [
    (1, 2, 6),
    (9, 1, 10),
    (1, 10, 8),
    (5, 9, 2),
    (9, 5, 2),
    (1, 10, 2),
    (1, 3, 11),
    (1, 4, 12),
    (1, 5, 7),
    (9, 1, 12),
    (9, 5, 4),
    (5, 9, 4),
    (1, 5, 6),
    (1, 6, 11),
    (1, 9, 12),
    (1, 12, 4),
    (1, 5, 8),
    (1, 7, 3),
    (1, 7, 12),
    (5, 9, 3),
    (9, 1, 11),
    (1, 12, 7),
    (1, 9, 11),
    (5, 1, 6),
    (5, 1, 7),
    (1, 6, 2),
    (1, 3, 7),
    (1, 8, 4),
    (1, 11, 6),
    (5, 1, 8),
    (9, 5, 3),
    (1, 8, 10),
    (1, 11, 3),
    (1, 4, 8),
    (1, 9, 10),
    (1, 2, 10),
];

/// Printed coordinates of the points fixed before the iterated
/// intersections. `5_2` and `9_2` are their first (provisional) values.
pub const ALT4_PRINTED: [(u32, u8, &str); 18] = [
    (1, 1, "[1, 0, 0]"),
    (1, 2, "[0, 1, 0]"),
    (1, 3, "[1, -1, 0]"),
    (2, 1, "[0, 1, 1]"),
    (2, 2, "[1, 0, 1]"),
    (2, 3, "[0, 0, 1]"),
    (3, 1, "[a, b, c]"),
    (3, 2, "[a - 1, 1 + b, c]"),
    (3, 3, "[a, b + 1, c]"),
    (4, 1, "[a - 1, 1 + b, c - 1]"),
    (4, 2, "[a, b, c - 1]"),
    (4, 3, "[a - 1, b, c - 1]"),
    (5, 1, "[d1, d2, 1]"),
    (5, 2, "[d4 + d5 - d3, d3, 1]"),
    (5, 3, "[d1, d3, 1]"),
    (9, 1, "[d4, d5, 1]"),
    (9, 2, "[d1 + d2 - d6, d6, 1]"),
    (9, 3, "[d4, d6, 1]"),
];

type P = (u32, u8);

/// `target = via0 via1 ∩ via2 via3`, evaluated in this order.
const REDEFINITIONS: [(P, [P; 4]); 24] = [
    ((5, 1), [(9, 2), (1, 3), (1, 2), (5, 3)]),
    ((5, 2), [(9, 1), (1, 3), (1, 1), (5, 3)]),
    ((5, 3), [(5, 1), (1, 2), (1, 1), (5, 2)]),
    ((6, 1), [(9, 2), (4, 3), (2, 2), (5, 3)]),
    ((6, 2), [(9, 1), (2, 3), (4, 1), (5, 3)]),
    ((6, 3), [(5, 1), (2, 2), (4, 1), (5, 2)]),
    ((7, 1), [(9, 2), (2, 3), (3, 2), (5, 3)]),
    ((7, 2), [(9, 1), (3, 3), (2, 1), (5, 3)]),
    ((7, 3), [(5, 1), (3, 2), (2, 1), (5, 2)]),
    ((8, 1), [(9, 2), (3, 3), (4, 2), (5, 3)]),
    ((8, 2), [(9, 1), (4, 3), (3, 1), (5, 3)]),
    ((8, 3), [(5, 1), (4, 2), (3, 1), (5, 2)]),
    ((9, 1), [(5, 2), (1, 3), (1, 2), (9, 3)]),
    ((9, 2), [(5, 1), (1, 3), (1, 1), (9, 3)]),
    ((9, 3), [(9, 1), (1, 2), (1, 1), (9, 2)]),
    ((10, 1), [(5, 2), (3, 3), (2, 2), (9, 3)]),
    ((10, 2), [(5, 1), (2, 3), (3, 1), (9, 3)]),
    ((10, 3), [(9, 1), (2, 2), (3, 1), (9, 2)]),
    ((11, 1), [(5, 2), (4, 3), (3, 2), (9, 3)]),
    ((11, 2), [(5, 1), (3, 3), (4, 1), (9, 3)]),
    ((11, 3), [(9, 1), (3, 2), (4, 1), (9, 2)]),
    ((12, 1), [(5, 2), (2, 3), (4, 2), (9, 3)]),
    ((12, 2), [(5, 1), (4, 3), (2, 1), (9, 3)]),
    ((12, 3), [(9, 1), (4, 2), (2, 1), (9, 2)]),
];

/// Number of products `i*j` whose collinearity determinant is not
/// identically zero after construction.
pub const ALT4_EQUATION_COUNT: usize = 86;

pub fn build_alt4() -> Result<NetConstruction<Rationals>> {
    let ring = PolyRing::new(Rationals, &ALT4_VARS, OrderKind::DegRevLex)?;
    let mut net = NetConstruction::new(ring.clone(), CayleyTable::builtin("alt4")?);
    let fixed: [(u32, u8, &str); 12] = [
        (1, 1, "[1, 0, 0]"),
        (1, 2, "[0, 1, 0]"),
        (1, 3, "[1, -1, 0]"),
        (2, 1, "[0, 1, 1]"),
        (2, 2, "[1, 0, 1]"),
        (2, 3, "[0, 0, 1]"),
        (3, 1, "[a, b, c]"),
        (3, 3, "[a, 1 + b, c]"),
        (5, 1, "[d1, d2, 1]"),
        (5, 3, "[d1, d3, 1]"),
        (9, 1, "[d4, d5, 1]"),
        (9, 3, "[d4, d6, 1]"),
    ];
    for (l, c, s) in fixed {
        let p = net.parse_point(s)?;
        net.set(l, c, p);
    }
    let divided: [(P, [P; 4], &str); 4] = [
        ((3, 2), [(3, 1), (1, 3), (1, 1), (3, 3)], "c"),
        ((4, 2), [(3, 1), (2, 3), (2, 1), (3, 3)], "a"),
        ((4, 1), [(3, 2), (2, 3), (2, 2), (3, 3)], "1 + b"),
        ((4, 3), [(1, 1), (4, 2), (2, 1), (3, 2)], "1 + b - c"),
    ];
    for (t, via, d) in divided {
        net.define(t, via)?;
        let d = parse_poly(&ring, d)?;
        let p = net.point(t.0, t.1)?.divide(&d)?;
        net.points.insert(TriplePoint::new(t.0, t.1), p);
        net.side_conditions.push(Labeled::new(format!("divisor of {}_{}", t.0, t.1), d));
    }
    net.define((5, 2), [(1, 1), (5, 3), (9, 1), (1, 3)])?;
    net.define((9, 2), [(1, 1), (9, 3), (5, 1), (1, 3)])?;
    for (t, via) in REDEFINITIONS {
        net.define(t, via)?;
    }
    Ok(net)
}

/// Collinearity determinant of `i_1, j_2, k_3`.
pub fn alt4_det(net: &NetConstruction<Rationals>, i: u32, j: u32, k: u32) -> Result<MultiPoly<Rationals>> {
    Ok(collinear3(net.point(i, 1)?, net.point(j, 2)?, net.point(k, 3)?))
}

/// The 86 nonvanishing equations `det(i_1, j_2, (i*j)_3)`, each with every
/// factor it shares with a nonzero determinant from [`ALT4_Y`] removed.
pub fn alt4_constraints(net: &NetConstruction<Rationals>) -> Result<ConstraintSystem<Rationals>> {
    let mut nonzeros = Vec::with_capacity(ALT4_Y.len());
    for (i, j, k) in ALT4_Y {
        if net.table.mul(i, j)? == k {
            return Err(Error::Structural(format!("nonzero triple ({i},{j},{k}) is a product")));
        }
        let d = alt4_det(net, i, j, k)?;
        if d.is_zero() {
            return Err(Error::Structural(format!("nonzero triple ({i},{j},{k}) vanishes identically")));
        }
        nonzeros.push(Labeled::new(format!("d({i},{j},{k})"), d));
    }
    let mut equations = Vec::new();
    let mut stripped = 0usize;
    for i in 1..=12 {
        for j in 1..=12 {
            let k = net.table.mul(i, j)?;
            let mut f = alt4_det(net, i, j, k)?;
            if f.is_zero() {
                continue;
            }
            for n in &nonzeros {
                let (g, times) = strip_factor(&f, &n.poly)?;
                stripped += times;
                f = g;
            }
            equations.push(Labeled::new(format!("d({i},{j},{k})"), f));
        }
    }
    if equations.len() != ALT4_EQUATION_COUNT {
        return Err(Error::Structural(format!(
            "expected {ALT4_EQUATION_COUNT} nonvanishing equations, found {}",
            equations.len()
        )));
    }
    let mut all_nonzero = net.side_conditions.clone();
    all_nonzero.extend(nonzeros);
    Ok(ConstraintSystem {
        ring: net.ring.clone(),
        equations,
        nonzeros: all_nonzero,
        notes: vec![format!("{stripped} common factors with nonzero determinants removed")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_coordinates_match() {
        let net = build_alt4().unwrap();
        let rows = net.compare_printed(&ALT4_PRINTED).unwrap();
        assert!(rows.iter().all(|r| r.matches), "{rows:?}");
        assert_eq!(net.points.len(), 36);
        assert_eq!(net.definitions.len(), 4 + 2 + 24);
    }

    #[test]
    fn cayley_table_agrees() {
        let t = CayleyTable::builtin("alt4").unwrap();
        assert_eq!(t.mul(2, 5).unwrap(), 7);
        assert_eq!(t.mul(5, 9).unwrap(), 1);
        assert_eq!(t.mul(12, 12).unwrap(), 6);
    }
}
