//! Symbolic dual 3-net constructions and their constraint systems.

mod alt4;
mod c3c3;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

pub use alt4::{alt4_constraints, alt4_det, build_alt4, ALT4_EQUATION_COUNT, ALT4_PRINTED, ALT4_VARS, ALT4_Y};
pub use c3c3::{build_c3c3, c3c3_constraints, C3C3_PRINTED, C3C3_VARS};

use crate::error::{Error, Result};
use crate::geom::{collinear3, Collineation, ProjPoint};
use crate::groups::CayleyTable;
use crate::lame::TriplePoint;
use crate::poly::{MultiPoly, PolyRing};
use crate::scalar::Field;

/// A polynomial with a provenance label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeled<F: Field> {
    pub name: String,
    pub poly: MultiPoly<F>,
}

impl<F: Field> Labeled<F> {
    pub fn new(name: impl Into<String>, poly: MultiPoly<F>) -> Self {
        Labeled { name: name.into(), poly }
    }
}

/// A point defined as the meet of the lines `via[0]via[1]` and
/// `via[2]via[3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Definition {
    pub target: TriplePoint,
    pub via: [TriplePoint; 4],
}

#[derive(Clone, Debug)]
pub struct NetConstruction<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub table: CayleyTable,
    /// Final coordinates of every constructed point.
    pub points: BTreeMap<TriplePoint, ProjPoint<F>>,
    /// First values of points that are later redefined.
    pub provisional: BTreeMap<TriplePoint, ProjPoint<F>>,
    /// Polynomials assumed nonzero by the construction (divisors and
    /// coordinate genericity).
    pub side_conditions: Vec<Labeled<F>>,
    pub collineations: Vec<(String, Collineation<F>)>,
    /// Intersection definitions in the order they were evaluated.
    pub definitions: Vec<Definition>,
}

impl<F: Field> NetConstruction<F> {
    pub(crate) fn new(ring: Arc<PolyRing<F>>, table: CayleyTable) -> Self {
        NetConstruction {
            ring,
            table,
            points: BTreeMap::new(),
            provisional: BTreeMap::new(),
            side_conditions: Vec::new(),
            collineations: Vec::new(),
            definitions: Vec::new(),
        }
    }

    pub fn point(&self, label: u32, component: u8) -> Result<&ProjPoint<F>> {
        let key = TriplePoint::new(label, component);
        self.points
            .get(&key)
            .ok_or_else(|| Error::Structural(format!("point {key} is not constructed")))
    }

    pub fn collineation(&self, name: &str) -> Result<&Collineation<F>> {
        self.collineations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::Structural(format!("no collineation `{name}`")))
    }

    pub(crate) fn set(&mut self, label: u32, component: u8, p: ProjPoint<F>) {
        let key = TriplePoint::new(label, component);
        if let Some(old) = self.points.insert(key, p) {
            self.provisional.entry(key).or_insert(old);
        }
    }

    pub(crate) fn parse_point(&self, s: &str) -> Result<ProjPoint<F>> {
        ProjPoint::parse(&self.ring, s)
    }

    /// Evaluates `target = via0 via1 ∩ via2 via3` with the current points
    /// and checks that the result lies on both lines.
    pub(crate) fn define(&mut self, target: (u32, u8), via: [(u32, u8); 4]) -> Result<()> {
        let via = via.map(|(l, c)| TriplePoint::new(l, c));
        let [p, q, r, s] = via.map(|k| self.points.get(&k).cloned());
        let (p, q, r, s) = match (p, q, r, s) {
            (Some(p), Some(q), Some(r), Some(s)) => (p, q, r, s),
            _ => return Err(Error::Structural(format!("definition of {}_{} uses an unknown point", target.0, target.1))),
        };
        let m = crate::geom::isect(&p, &q, &r, &s)?;
        if !collinear3(&m, &p, &q).is_zero() || !collinear3(&m, &r, &s).is_zero() {
            return Err(Error::Structural("intersection is off its defining lines".into()));
        }
        self.set(target.0, target.1, m);
        self.definitions.push(Definition { target: TriplePoint::new(target.0, target.1), via });
        Ok(())
    }
}

/// Outcome of comparing one constructed point against printed coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedMatch {
    pub point: TriplePoint,
    pub printed: String,
    pub computed: String,
    pub matches: bool,
}

impl<F: Field> NetConstruction<F> {
    /// Compares printed coordinates up to scaling (all 2×2 minors vanish).
    /// Redefined points are compared at their first value.
    pub fn compare_printed(&self, printed: &[(u32, u8, &str)]) -> Result<Vec<PrintedMatch>> {
        let mut out = Vec::with_capacity(printed.len());
        for &(l, c, s) in printed {
            let key = TriplePoint::new(l, c);
            let p = match self.provisional.get(&key) {
                Some(p) => p,
                None => self.point(l, c)?,
            };
            let q = self.parse_point(s)?;
            out.push(PrintedMatch { point: key, printed: s.to_string(), computed: p.to_string(), matches: p.proj_eq(&q) });
        }
        Ok(out)
    }
}

/// Equations that must vanish and polynomials that must not.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub equations: Vec<Labeled<F>>,
    pub nonzeros: Vec<Labeled<F>>,
    /// Free-form notes on how the equations were derived.
    pub notes: Vec<String>,
}

impl<F: Field> ConstraintSystem<F> {
    pub fn equation(&self, name: &str) -> Option<&MultiPoly<F>> {
        self.equations.iter().find(|l| l.name == name).map(|l| &l.poly)
    }

    /// Textual export: one polynomial per line preceded by a `#` line
    /// naming it. Nonzero conditions are listed as comments only, so the
    /// file parses back to exactly the equations.
    pub fn export(&self, title: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {title}");
        let _ = writeln!(out, "# ring: {}[{}]", self.ring.field().name(), self.ring.vars().join(","));
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        for l in &self.nonzeros {
            let _ = writeln!(out, "# nonzero {}: {}", l.name, l.poly);
        }
        for l in &self.equations {
            let _ = writeln!(out, "# {}", l.name);
            let _ = writeln!(out, "{}", l.poly);
        }
        out
    }
}
