//! The projective plane over a polynomial ring: points, joins, meets,
//! concurrency and collinearity determinants, collineations.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{parse_expr_at, MultiPoly, PolyRing};
use crate::scalar::Field;

/// Homogeneous coordinate triple (a point or a line).
pub type Vec3<F> = [MultiPoly<F>; 3];

/// Cross product; the join of two points or the meet of two lines.
pub fn cross<F: Field>(a: &Vec3<F>, b: &Vec3<F>) -> Vec3<F> {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot<F: Field>(a: &Vec3<F>, b: &Vec3<F>) -> MultiPoly<F> {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

/// Determinant of the 3×3 matrix with rows `r0, r1, r2`.
pub fn det3<F: Field>(r0: &Vec3<F>, r1: &Vec3<F>, r2: &Vec3<F>) -> MultiPoly<F> {
    dot(r0, &cross(r1, r2))
}

/// A point of the projective plane with polynomial coordinates, not all
/// zero. Equality up to scaling is [`ProjPoint::proj_eq`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint<F: Field> {
    coords: Vec3<F>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(coords: Vec3<F>) -> Result<Self> {
        crate::poly::same_ring(coords[0].ring(), coords[1].ring())?;
        crate::poly::same_ring(coords[0].ring(), coords[2].ring())?;
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Structural("point with all coordinates zero".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(ring: &Arc<PolyRing<F>>, c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(|x| MultiPoly::from_i64(ring, x)))
    }

    /// Parses `(e1, e2, e3)` or `[e1, e2, e3]` with each entry in the
    /// polynomial grammar.
    pub fn parse(ring: &Arc<PolyRing<F>>, src: &str) -> Result<Self> {
        let t = src.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
            .ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "expected (x, y, z)".into() })?;
        let parts = split_top_level(inner);
        if parts.len() != 3 {
            return Err(Error::Parse { line: 1, col: 1, msg: format!("expected 3 coordinates, found {}", parts.len()) });
        }
        let mut cs = Vec::with_capacity(3);
        for p in parts {
            cs.push(parse_expr_at(p, 1)?.to_poly(ring, 1)?);
        }
        let [x, y, z]: [MultiPoly<F>; 3] = cs.try_into().expect("three coordinates");
        Self::new([x, y, z])
    }

    pub fn coords(&self) -> &Vec3<F> {
        &self.coords
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.coords[0].ring()
    }

    /// Divides every coordinate exactly by `d`.
    pub fn divide(&self, d: &MultiPoly<F>) -> Result<Self> {
        let [x, y, z] = &self.coords;
        Self::new([x.exact_div(d)?, y.exact_div(d)?, z.exact_div(d)?])
    }

    pub fn scale(&self, s: &MultiPoly<F>) -> Result<Self> {
        let [x, y, z] = &self.coords;
        Self::new([x * s, y * s, z * s])
    }

    /// The three 2×2 minors of the stacked pair; all vanish iff the points
    /// agree up to scaling.
    pub fn minors(&self, other: &Self) -> Vec3<F> {
        cross(&self.coords, &other.coords)
    }

    pub fn proj_eq(&self, other: &Self) -> bool {
        self.minors(other).iter().all(|m| m.is_zero())
    }

    pub fn apply(&self, m: &Collineation<F>) -> Self {
        m.apply(self)
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Join of two points.
pub fn join<F: Field>(p: &ProjPoint<F>, q: &ProjPoint<F>) -> Vec3<F> {
    cross(&p.coords, &q.coords)
}

/// Meet of line `ab` with line `cd`.
pub fn isect<F: Field>(a: &ProjPoint<F>, b: &ProjPoint<F>, c: &ProjPoint<F>, d: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    let p = cross(&join(a, b), &join(c, d));
    if p.iter().all(|x| x.is_zero()) {
        return Err(Error::DegenerateIntersection);
    }
    Ok(ProjPoint { coords: p })
}

/// Determinant of the three joins `ab`, `cd`, `ef`; zero iff the lines are
/// concurrent.
pub fn idet<F: Field>(
    a: &ProjPoint<F>,
    b: &ProjPoint<F>,
    c: &ProjPoint<F>,
    d: &ProjPoint<F>,
    e: &ProjPoint<F>,
    f: &ProjPoint<F>,
) -> MultiPoly<F> {
    det3(&join(a, b), &join(c, d), &join(e, f))
}

/// Determinant of the stacked coordinates; zero iff collinear.
pub fn collinear3<F: Field>(p: &ProjPoint<F>, q: &ProjPoint<F>, r: &ProjPoint<F>) -> MultiPoly<F> {
    det3(&p.coords, &q.coords, &r.coords)
}

/// A projective linear map given by a 3×3 matrix (rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collineation<F: Field> {
    rows: [Vec3<F>; 3],
}

impl<F: Field> Collineation<F> {
    pub fn new(rows: [Vec3<F>; 3]) -> Result<Self> {
        if det3(&rows[0], &rows[1], &rows[2]).is_zero() {
            return Err(Error::Structural("singular collineation matrix".into()));
        }
        Ok(Collineation { rows })
    }

    pub fn identity(ring: &Arc<PolyRing<F>>) -> Self {
        let e = |i: usize, j: usize| MultiPoly::from_i64(ring, (i == j) as i64);
        Collineation { rows: [0, 1, 2].map(|i| [e(i, 0), e(i, 1), e(i, 2)]) }
    }

    pub fn rows(&self) -> &[Vec3<F>; 3] {
        &self.rows
    }

    pub fn det(&self) -> MultiPoly<F> {
        det3(&self.rows[0], &self.rows[1], &self.rows[2])
    }

    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        ProjPoint { coords: [0, 1, 2].map(|i| dot(&self.rows[i], &p.coords)) }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let col = |j: usize| [other.rows[0][j].clone(), other.rows[1][j].clone(), other.rows[2][j].clone()];
        let cols = [col(0), col(1), col(2)];
        Collineation { rows: [0, 1, 2].map(|i| [0, 1, 2].map(|j| dot(&self.rows[i], &cols[j]))) }
    }

    /// Inverse up to the scalar `det`: the adjugate.
    pub fn adjugate(&self) -> Self {
        let r = &self.rows;
        // columns of the adjugate are cross products of row pairs
        let c0 = cross(&r[1], &r[2]);
        let c1 = cross(&r[2], &r[0]);
        let c2 = cross(&r[0], &r[1]);
        let row = |i: usize| [c0[i].clone(), c1[i].clone(), c2[i].clone()];
        Collineation { rows: [row(0), row(1), row(2)] }
    }

    /// True iff the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let d = &self.rows[0][0];
        (0..3).all(|i| (0..3).all(|j| if i == j { &self.rows[i][j] == d } else { self.rows[i][j].is_zero() }))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity(self.rows[0][0].ring());
        for _ in 0..e {
            out = out.compose(self);
        }
        out
    }
}
