//! Lamé configurations in a dual 3-net labelled by a quasigroup, and the
//! eight-of-nine closure they induce on points known to lie on a cubic.
//!
//! Everything here is combinatorial. Point `i_c` is element `i` of
//! component `c`; `{i_1, j_2, k_3}` is a line iff `i·j = k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::CayleyTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriplePoint {
    pub component: u8,
    pub label: u32,
}

impl TriplePoint {
    pub fn new(label: u32, component: u8) -> Self {
        TriplePoint { component, label }
    }
}

impl fmt::Display for TriplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.label, self.component)
    }
}

impl FromStr for TriplePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidLame(format!("`{s}` is not a point of the form label_component"));
        let (l, c) = s.trim().split_once('_').ok_or_else(bad)?;
        let label: u32 = l.trim().parse().map_err(|_| bad())?;
        let component: u8 = c.trim().parse().map_err(|_| bad())?;
        if !(1..=3).contains(&component) {
            return Err(Error::InvalidLame(format!("`{s}`: component must be 1, 2 or 3")));
        }
        Ok(TriplePoint { component, label })
    }
}

/// Parses a comma-separated point list such as `1_1,1_2,3_3`; repeated
/// points collapse.
pub fn parse_points(s: &str) -> Result<BTreeSet<TriplePoint>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

pub fn format_points(pts: &BTreeSet<TriplePoint>) -> String {
    pts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// The points `i_1, j_2, k_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CollinearTriple {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl CollinearTriple {
    pub fn points(&self) -> [TriplePoint; 3] {
        [TriplePoint::new(self.i, 1), TriplePoint::new(self.j, 2), TriplePoint::new(self.k, 3)]
    }

    pub fn holds(&self, t: &CayleyTable) -> Result<bool> {
        Ok(t.mul(self.i, self.j)? == self.k)
    }
}

impl fmt::Display for CollinearTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}_1,{}_2,{}_3}}", self.i, self.j, self.k)
    }
}

fn parse_triple(body: &str) -> Result<CollinearTriple> {
    let pts: Vec<TriplePoint> = body.split(',').map(str::parse).collect::<Result<_>>()?;
    let mut slot = [None; 3];
    for p in &pts {
        let s = &mut slot[p.component as usize - 1];
        if s.is_some() || pts.len() != 3 {
            return Err(Error::InvalidLame(format!(
                "{{{body}}} must contain one point of each component"
            )));
        }
        *s = Some(p.label);
    }
    match slot {
        [Some(i), Some(j), Some(k)] => Ok(CollinearTriple { i, j, k }),
        _ => Err(Error::InvalidLame(format!("{{{body}}} must contain one point of each component"))),
    }
}

/// Two triples of lines `ℓ1, ℓ2, ℓ3` and `r1, r2, r3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LameConfig {
    pub left: [CollinearTriple; 3],
    pub right: [CollinearTriple; 3],
}

impl LameConfig {
    /// All points on the six lines (nine for a valid configuration).
    pub fn points(&self) -> BTreeSet<TriplePoint> {
        self.left.iter().chain(&self.right).flat_map(|l| l.points()).collect()
    }

    /// Same configuration with lines sorted within each half and the
    /// halves ordered.
    pub fn canonical(&self) -> Self {
        let mut l = self.left;
        let mut r = self.right;
        l.sort();
        r.sort();
        if r < l {
            std::mem::swap(&mut l, &mut r);
        }
        LameConfig { left: l, right: r }
    }
}

impl fmt::Display for LameConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}+{} | {}+{}+{}",
            self.left[0], self.left[1], self.left[2], self.right[0], self.right[1], self.right[2]
        )
    }
}

impl FromStr for LameConfig {
    type Err = Error;

    /// Accepts the six `{…}` groups in order, with any separators; the
    /// first three are one triple of lines, the last three the other.
    fn from_str(s: &str) -> Result<Self> {
        let mut groups = Vec::new();
        let mut rest = s;
        while let Some(open) = rest.find('{') {
            let close = rest[open..]
                .find('}')
                .ok_or_else(|| Error::InvalidLame(format!("unbalanced braces in `{s}`")))?;
            groups.push(parse_triple(&rest[open + 1..open + close])?);
            rest = &rest[open + close + 1..];
        }
        if groups.len() != 6 {
            return Err(Error::InvalidLame(format!("expected 6 lines, found {} in `{s}`", groups.len())));
        }
        Ok(LameConfig {
            left: [groups[0], groups[1], groups[2]],
            right: [groups[3], groups[4], groups[5]],
        })
    }
}

/// Checks a configuration against a table and returns its grid:
/// `grid[a][b]` is the common point of `left[a]` and `right[b]`.
pub fn validate_lame(cfg: &LameConfig, t: &CayleyTable) -> Result<[[TriplePoint; 3]; 3]> {
    for line in cfg.left.iter().chain(&cfg.right) {
        for p in line.points() {
            if !t.contains(p.label) {
                return Err(Error::InvalidLame(format!("{cfg}: label {} not in table `{}`", p.label, t.name())));
            }
        }
        if !line.holds(t)? {
            return Err(Error::InvalidLame(format!(
                "{cfg}: {line} is not a line, since {}·{} = {}",
                line.i,
                line.j,
                t.mul(line.i, line.j)?
            )));
        }
    }
    let all: Vec<&CollinearTriple> = cfg.left.iter().chain(&cfg.right).collect();
    for a in 0..6 {
        for b in a + 1..6 {
            if all[a] == all[b] {
                return Err(Error::InvalidLame(format!("{cfg}: line {} repeated", all[a])));
            }
        }
    }
    let mut grid = [[TriplePoint::new(0, 1); 3]; 3];
    for (a, l) in cfg.left.iter().enumerate() {
        for (b, r) in cfg.right.iter().enumerate() {
            let lp: BTreeSet<_> = l.points().into_iter().collect();
            let common: Vec<_> = r.points().into_iter().filter(|p| lp.contains(p)).collect();
            if common.len() != 1 {
                return Err(Error::InvalidLame(format!(
                    "{cfg}: {l} and {r} share {} points, expected exactly 1",
                    common.len()
                )));
            }
            grid[a][b] = common[0];
        }
    }
    let pts = cfg.points();
    let gset: BTreeSet<_> = grid.iter().flatten().copied().collect();
    if pts.len() != 9 || gset != pts {
        return Err(Error::InvalidLame(format!(
            "{cfg}: the six lines carry {} points; the grid has {} distinct",
            pts.len(),
            gset.len()
        )));
    }
    Ok(grid)
}

/// One closure step that added a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureStep {
    pub index: usize,
    pub config: LameConfig,
    pub added: Vec<TriplePoint>,
}

/// A step where fewer than eight of the nine points were known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFailure {
    pub index: usize,
    pub config: LameConfig,
    pub missing: Vec<TriplePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOutcome {
    pub known: BTreeSet<TriplePoint>,
    pub steps: Vec<ClosureStep>,
    /// Which configuration forced each added point.
    pub provenance: BTreeMap<TriplePoint, usize>,
    pub failure: Option<ClosureFailure>,
}

fn check_seed(t: &CayleyTable, seed: &BTreeSet<TriplePoint>) -> Result<()> {
    for p in seed {
        if !t.contains(p.label) || !(1..=3).contains(&p.component) {
            return Err(Error::InvalidLame(format!("seed point {p} is not a point of the `{}` net", t.name())));
        }
    }
    Ok(())
}

/// Replays `chain` from `seed`. Each configuration must be valid; when at
/// least eight of its points are known the rest are added, otherwise the
/// replay stops and the failing step is reported.
pub fn closure_chain(t: &CayleyTable, seed: &BTreeSet<TriplePoint>, chain: &[LameConfig]) -> Result<ClosureOutcome> {
    check_seed(t, seed)?;
    let mut known = seed.clone();
    let mut steps = Vec::new();
    let mut provenance = BTreeMap::new();
    for (index, cfg) in chain.iter().enumerate() {
        validate_lame(cfg, t)?;
        let missing: Vec<_> = cfg.points().into_iter().filter(|p| !known.contains(p)).collect();
        if missing.len() > 1 {
            return Ok(ClosureOutcome {
                known,
                steps,
                provenance,
                failure: Some(ClosureFailure { index, config: *cfg, missing }),
            });
        }
        for p in &missing {
            known.insert(*p);
            provenance.insert(*p, index);
        }
        steps.push(ClosureStep { index, config: *cfg, added: missing });
    }
    Ok(ClosureOutcome { known, steps, provenance, failure: None })
}

/// All valid Lamé configurations of a quasigroup table, canonical and
/// sorted.
pub fn all_configurations(t: &CayleyTable) -> Result<Vec<LameConfig>> {
    let labels: Vec<u32> = t.labels().collect();
    let mut lines = Vec::new();
    for &i in &labels {
        for &j in &labels {
            lines.push(CollinearTriple { i, j, k: t.mul(i, j)? });
        }
    }
    let disjoint = |a: &CollinearTriple, b: &CollinearTriple| a.i != b.i && a.j != b.j && a.k != b.k;
    let mut out = BTreeSet::new();
    let n = lines.len();
    for x in 0..n {
        for y in x + 1..n {
            if !disjoint(&lines[x], &lines[y]) {
                continue;
            }
            for z in y + 1..n {
                let (a, b, c) = (&lines[x], &lines[y], &lines[z]);
                if !disjoint(a, c) || !disjoint(b, c) {
                    continue;
                }
                let left = [*a, *b, *c];
                let pts: BTreeSet<TriplePoint> = left.iter().flat_map(|l| l.points()).collect();
                let cands: Vec<&CollinearTriple> = lines
                    .iter()
                    .filter(|l| !left.contains(l) && l.points().iter().all(|p| pts.contains(p)))
                    .collect();
                for (p, r1) in cands.iter().enumerate() {
                    for (q, r2) in cands.iter().enumerate().skip(p + 1) {
                        if !disjoint(r1, r2) {
                            continue;
                        }
                        for r3 in cands.iter().skip(q + 1) {
                            if !disjoint(r1, r3) || !disjoint(r2, r3) {
                                continue;
                            }
                            let cfg = LameConfig { left, right: [**r1, **r2, **r3] };
                            if validate_lame(&cfg, t).is_ok() {
                                out.insert(cfg.canonical());
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Configurations that added points, replayable by [`closure_chain`].
    pub chain: Vec<LameConfig>,
    pub known: BTreeSet<TriplePoint>,
    pub reached_goal: bool,
    pub rounds: usize,
}

/// Breadth-first saturation: in each round every configuration with exactly
/// one unknown point contributes it (the first such configuration in
/// canonical order is recorded); stops at a fixpoint.
pub fn search_chain(t: &CayleyTable, seed: &BTreeSet<TriplePoint>, goal: &BTreeSet<TriplePoint>) -> Result<SearchOutcome> {
    check_seed(t, seed)?;
    let configs = all_configurations(t)?;
    let grids: Vec<BTreeSet<TriplePoint>> = configs.iter().map(|c| c.points()).collect();
    let mut known = seed.clone();
    let mut chain = Vec::new();
    let mut rounds = 0;
    loop {
        let mut added: BTreeMap<TriplePoint, usize> = BTreeMap::new();
        for (ci, g) in grids.iter().enumerate() {
            let mut unknown = g.iter().filter(|p| !known.contains(p));
            if let (Some(p), None) = (unknown.next(), unknown.next()) {
                added.entry(*p).or_insert(ci);
            }
        }
        if added.is_empty() {
            break;
        }
        rounds += 1;
        let mut used: Vec<usize> = added.values().copied().collect();
        used.sort_unstable();
        used.dedup();
        chain.extend(used.into_iter().map(|ci| configs[ci]));
        known.extend(added.into_keys());
    }
    let reached_goal = goal.is_subset(&known);
    Ok(SearchOutcome { chain, known, reached_goal, rounds })
}

/// Line-oriented certificate: an optional `SEED p,p,…` line followed by
/// `LAME …` lines; `#` starts a comment.
pub fn format_certificate(seed: Option<&BTreeSet<TriplePoint>>, chain: &[LameConfig]) -> String {
    let mut out = String::new();
    if let Some(s) = seed {
        out.push_str(&format!("SEED {}\n", format_points(s)));
    }
    for c in chain {
        out.push_str(&format!("LAME {c}\n"));
    }
    out
}

#[allow(clippy::type_complexity)]
pub fn parse_certificate(text: &str) -> Result<(Option<BTreeSet<TriplePoint>>, Vec<LameConfig>)> {
    let mut seed = None;
    let mut chain = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let wrap = |e: Error| Error::Parse { line: ln + 1, col: 1, msg: e.to_string() };
        if let Some(rest) = body.strip_prefix("SEED") {
            seed = Some(parse_points(rest).map_err(wrap)?);
        } else if let Some(rest) = body.strip_prefix("LAME") {
            chain.push(rest.parse().map_err(wrap)?);
        } else {
            return Err(Error::Parse { line: ln + 1, col: 1, msg: "expected a SEED or LAME line".into() });
        }
    }
    Ok((seed, chain))
}

/// The C2×C4 chain in the order it is argued: four configurations `U1..U4`,
/// six that add `5_1, 7_1, 2_2, 4_2, 6_3, 8_3`, and six that finish.
pub const C2C4_CHAIN: [(&str, &str); 16] = [
    ("U1", "{1_1,1_2,1_3},{3_1,5_2,7_3},{6_1,7_2,3_3}+{1_1,7_2,7_3},{3_1,1_2,3_3},{6_1,5_2,1_3}"),
    ("U2", "{1_1,3_2,3_3},{3_1,7_2,5_3},{6_1,5_2,1_3}+{1_1,5_2,5_3},{3_1,3_2,1_3},{6_1,7_2,3_3}"),
    ("U3", "{1_1,1_2,1_3},{3_1,7_2,5_3},{8_1,5_2,3_3}+{1_1,5_2,5_3},{3_1,1_2,3_3},{8_1,7_2,1_3}"),
    ("U4", "{1_1,3_2,3_3},{3_1,5_2,7_3},{8_1,7_2,1_3}+{1_1,7_2,7_3},{3_1,3_2,1_3},{8_1,5_2,3_3}"),
    ("M1", "{1_1,5_2,5_3},{3_1,1_2,3_3},{5_1,3_2,7_3}+{1_1,3_2,3_3},{3_1,5_2,7_3},{5_1,1_2,5_3}"),
    ("M2", "{1_1,1_2,1_3},{3_1,5_2,7_3},{7_1,3_2,5_3}+{1_1,5_2,5_3},{3_1,3_2,1_3},{7_1,1_2,7_3}"),
    ("M3", "{1_1,5_2,5_3},{6_1,7_2,3_3},{8_1,2_2,7_3}+{1_1,7_2,7_3},{6_1,2_2,5_3},{8_1,5_2,3_3}"),
    ("M4", "{1_1,5_2,5_3},{6_1,4_2,7_3},{8_1,7_2,1_3}+{1_1,7_2,7_3},{6_1,5_2,1_3},{8_1,4_2,5_3}"),
    ("M5", "{1_1,1_2,1_3},{6_1,7_2,3_3},{8_1,3_2,6_3}+{1_1,3_2,3_3},{6_1,1_2,6_3},{8_1,7_2,1_3}"),
    ("M6", "{1_1,1_2,1_3},{6_1,3_2,8_3},{8_1,5_2,3_3}+{1_1,3_2,3_3},{6_1,5_2,1_3},{8_1,1_2,8_3}"),
    ("F1", "{1_1,1_2,1_3},{2_1,5_2,6_3},{6_1,2_2,5_3}+{1_1,5_2,5_3},{2_1,2_2,1_3},{6_1,1_2,6_3}"),
    ("F2", "{3_1,1_2,3_3},{4_1,7_2,6_3},{6_1,2_2,5_3}+{3_1,7_2,5_3},{4_1,2_2,3_3},{6_1,1_2,6_3}"),
    ("F3", "{1_1,5_2,5_3},{7_1,6_2,3_3},{8_1,3_2,6_3}+{1_1,6_2,6_3},{7_1,3_2,5_3},{8_1,5_2,3_3}"),
    ("F4", "{1_1,8_2,8_3},{5_1,3_2,7_3},{6_1,7_2,3_3}+{1_1,7_2,7_3},{5_1,8_2,3_3},{6_1,3_2,8_3}"),
    ("F5", "{1_1,1_2,1_3},{7_1,7_2,2_3},{8_1,2_2,7_3}+{1_1,2_2,2_3},{7_1,1_2,7_3},{8_1,7_2,1_3}"),
    ("F6", "{3_1,2_2,4_3},{5_1,1_2,5_3},{6_1,7_2,3_3}+{3_1,1_2,3_3},{5_1,7_2,4_3},{6_1,2_2,5_3}"),
];

/// The seed as printed, `7_2` listed twice (eight distinct points).
pub const C2C4_SEED_LITERAL: &str = "1_1,1_2,1_3,3_1,7_2,7_3,6_1,7_2,3_3";
/// The printed seed with its repeated `7_2` replaced by `5_3`.
pub const C2C4_SEED_CORRECTED: &str = "1_1,1_2,1_3,3_1,7_2,7_3,6_1,5_3,3_3";
/// The printed seed with `3_1,7_2,7_3` read as the line `3_1,5_2,7_3`;
/// this is the point set of `U1` itself.
pub const C2C4_SEED_U1_GRID: &str = "1_1,1_2,1_3,3_1,5_2,7_3,6_1,7_2,3_3";

pub fn c2c4_chain() -> Vec<(&'static str, LameConfig)> {
    C2C4_CHAIN.iter().map(|(n, s)| (*n, s.parse().expect("builtin configuration parses"))).collect()
}

/// Every point of a net with labels from `t`.
pub fn all_points(t: &CayleyTable) -> BTreeSet<TriplePoint> {
    t.labels().flat_map(|l| (1..=3).map(move |c| TriplePoint::new(l, c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2c4() -> CayleyTable {
        CayleyTable::builtin("c2c4").unwrap()
    }

    #[test]
    fn u1_grid() {
        let (_, u1) = c2c4_chain()[0];
        let g = validate_lame(&u1, &c2c4()).unwrap();
        let pts: BTreeSet<_> = g.iter().flatten().copied().collect();
        assert_eq!(pts, parse_points("1_1,3_1,6_1,1_2,5_2,7_2,1_3,7_3,3_3").unwrap());
    }

    #[test]
    fn all_listed_configurations_are_valid() {
        for (name, c) in c2c4_chain() {
            validate_lame(&c, &c2c4()).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn broken_line_is_rejected() {
        let bad: LameConfig = "{1_1,1_2,1_3},{3_1,7_2,7_3},{6_1,7_2,3_3}+{1_1,7_2,7_3},{3_1,1_2,3_3},{6_1,5_2,1_3}"
            .parse()
            .unwrap();
        let e = validate_lame(&bad, &c2c4()).unwrap_err();
        assert!(e.to_string().contains("{3_1,7_2,7_3} is not a line"), "{e}");
        assert!("{1_1,1_2}+{}".parse::<LameConfig>().is_err());
        assert!("{1_1,1_2,2_2},{1_1,1_2,1_3}".parse::<LameConfig>().is_err());
    }

    #[test]
    fn empty_chain_keeps_seed() {
        let seed = parse_points(C2C4_SEED_CORRECTED).unwrap();
        let out = closure_chain(&c2c4(), &seed, &[]).unwrap();
        assert_eq!(out.known, seed);
        assert!(out.failure.is_none());
    }

    #[test]
    fn builtin_chain_closes_from_corrected_seed() {
        let t = c2c4();
        let seed = parse_points(C2C4_SEED_CORRECTED).unwrap();
        let chain: Vec<_> = c2c4_chain().into_iter().map(|(_, c)| c).collect();
        let out = closure_chain(&t, &seed, &chain).unwrap();
        assert!(out.failure.is_none(), "{:?}", out.failure);
        assert_eq!(out.known, all_points(&t));
        assert_eq!(out.steps[0].added, vec![TriplePoint::new(5, 2)]);
        assert_eq!(out.steps[1].added, vec![TriplePoint::new(3, 2)]);
    }

    #[test]
    fn literal_and_grid_seeds_stall() {
        let t = c2c4();
        let chain: Vec<_> = c2c4_chain().into_iter().map(|(_, c)| c).collect();
        let lit = parse_points(C2C4_SEED_LITERAL).unwrap();
        assert_eq!(lit.len(), 8);
        let out = closure_chain(&t, &lit, &chain).unwrap();
        assert_eq!(out.failure.as_ref().unwrap().index, 1);
        let grid = parse_points(C2C4_SEED_U1_GRID).unwrap();
        let out = closure_chain(&t, &grid, &chain).unwrap();
        assert_eq!(out.failure.as_ref().unwrap().index, 1);
        let s = search_chain(&t, &grid, &all_points(&t)).unwrap();
        assert!(!s.reached_goal);
        assert_eq!(s.known, grid);
    }

    #[test]
    fn search_finds_replayable_chain() {
        let t = c2c4();
        let seed = parse_points(C2C4_SEED_CORRECTED).unwrap();
        let goal = all_points(&t);
        let s = search_chain(&t, &seed, &goal).unwrap();
        assert!(s.reached_goal);
        let replay = closure_chain(&t, &seed, &s.chain).unwrap();
        assert!(replay.failure.is_none());
        assert_eq!(replay.known, goal);
        let cert = format_certificate(Some(&seed), &s.chain);
        let (seed2, chain2) = parse_certificate(&cert).unwrap();
        assert_eq!(seed2.as_ref(), Some(&seed));
        assert_eq!(chain2, s.chain);
    }

    #[test]
    fn c3_single_grid() {
        let t = CayleyTable::builtin("c3").unwrap();
        let cfgs = all_configurations(&t).unwrap();
        assert!(!cfgs.is_empty());
        let full = all_points(&t);
        for cfg in &cfgs {
            assert_eq!(cfg.points(), full);
        }
        for drop in &full {
            let mut seed = full.clone();
            seed.remove(drop);
            let s = search_chain(&t, &seed, &full).unwrap();
            assert!(s.reached_goal);
        }
    }

    #[test]
    fn certificate_line_format() {
        let (_, u1) = c2c4_chain()[0];
        assert_eq!(
            format_certificate(None, &[u1]),
            "LAME {1_1,1_2,1_3}+{3_1,5_2,7_3}+{6_1,7_2,3_3} | {1_1,7_2,7_3}+{3_1,1_2,3_3}+{6_1,5_2,1_3}\n"
        );
    }
}
