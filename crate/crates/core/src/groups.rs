//! Cayley tables and their structural checks.

use std::fmt;

use crate::error::{Error, Result};

/// An `n×n` multiplication table on labels `base..base+n`.
///
/// The C3×C3 table uses labels `0..=8`; every other builtin uses `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    name: String,
    base: u32,
    n: usize,
    // zero-based entries
    cells: Vec<u32>,
}

const C3: [[u32; 3]; 3] = [[1, 2, 3], [2, 3, 1], [3, 1, 2]];

const C3C3: [[u32; 9]; 9] = [
    [0, 1, 2, 3, 4, 5, 6, 7, 8],
    [1, 2, 0, 4, 5, 3, 7, 8, 6],
    [2, 0, 1, 5, 3, 4, 8, 6, 7],
    [3, 4, 5, 6, 7, 8, 0, 1, 2],
    [4, 5, 3, 7, 8, 6, 1, 2, 0],
    [5, 3, 4, 8, 6, 7, 2, 0, 1],
    [6, 7, 8, 0, 1, 2, 3, 4, 5],
    [7, 8, 6, 1, 2, 0, 4, 5, 3],
    [8, 6, 7, 2, 0, 1, 5, 3, 4],
];

const C2C4: [[u32; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, 1, 4, 3, 6, 5, 8, 7],
    [3, 4, 1, 2, 7, 8, 5, 6],
    [4, 3, 2, 1, 8, 7, 6, 5],
    [5, 6, 7, 8, 2, 1, 4, 3],
    [6, 5, 8, 7, 1, 2, 3, 4],
    [7, 8, 5, 6, 4, 3, 2, 1],
    [8, 7, 6, 5, 3, 4, 1, 2],
];

const ALT4: [[u32; 12]; 12] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
    [2, 1, 4, 3, 7, 8, 5, 6, 12, 11, 10, 9],
    [3, 4, 1, 2, 8, 7, 6, 5, 10, 9, 12, 11],
    [4, 3, 2, 1, 6, 5, 8, 7, 11, 12, 9, 10],
    [5, 6, 7, 8, 9, 10, 11, 12, 1, 2, 3, 4],
    [6, 5, 8, 7, 11, 12, 9, 10, 4, 3, 2, 1],
    [7, 8, 5, 6, 12, 11, 10, 9, 2, 1, 4, 3],
    [8, 7, 6, 5, 10, 9, 12, 11, 3, 4, 1, 2],
    [9, 10, 11, 12, 1, 2, 3, 4, 5, 6, 7, 8],
    [10, 9, 12, 11, 3, 4, 1, 2, 8, 7, 6, 5],
    [11, 12, 9, 10, 4, 3, 2, 1, 6, 5, 8, 7],
    [12, 11, 10, 9, 2, 1, 4, 3, 7, 8, 5, 6],
];

pub const BUILTIN_NAMES: [&str; 4] = ["c3", "c3c3", "c2c4", "alt4"];

/// Outcome of [`CayleyTable::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub latin_square: std::result::Result<(), String>,
    pub identity: std::result::Result<u32, String>,
    pub associative: std::result::Result<(), String>,
}

impl TableReport {
    pub fn is_group(&self) -> bool {
        self.latin_square.is_ok() && self.identity.is_ok() && self.associative.is_ok()
    }
}

impl CayleyTable {
    /// Builds a table from rows of labels; labels must lie in
    /// `base..base+n`.
    pub fn from_rows(name: &str, base: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidTable(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
            }
            for (j, &v) in r.iter().enumerate() {
                if v < base || (v - base) as usize >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry ({}, {}) = {v} outside {base}..{}",
                        i + 1,
                        j + 1,
                        base as usize + n - 1
                    )));
                }
                cells.push(v - base);
            }
        }
        Ok(CayleyTable { name: name.to_string(), base, n, cells })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        fn rows<const N: usize>(t: &[[u32; N]; N]) -> Vec<Vec<u32>> {
            t.iter().map(|r| r.to_vec()).collect()
        }
        match name {
            "c3" => Self::from_rows(name, 1, &rows(&C3)),
            "c3c3" => Self::from_rows(name, 0, &rows(&C3C3)),
            "c2c4" => Self::from_rows(name, 1, &rows(&C2C4)),
            "alt4" => Self::from_rows(name, 1, &rows(&ALT4)),
            _ => Err(Error::InvalidTable(format!(
                "unknown builtin table `{name}` (known: {})",
                BUILTIN_NAMES.join(", ")
            ))),
        }
    }

    /// Parses a whitespace-separated `n×n` integer grid (`#` comments
    /// allowed). Labels are 0-based if a 0 occurs, 1-based otherwise. The
    /// table must be a Latin square.
    pub fn parse_grid(name: &str, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for tok in body.split_whitespace() {
                let v: u32 = tok.parse().map_err(|_| Error::Parse {
                    line: ln + 1,
                    col: raw.find(tok).map_or(1, |c| c + 1),
                    msg: format!("`{tok}` is not a nonnegative integer"),
                })?;
                row.push(v);
            }
            rows.push(row);
        }
        let base = if rows.iter().flatten().any(|&v| v == 0) { 0 } else { 1 };
        let t = Self::from_rows(name, base, &rows)?;
        if let Err(e) = t.validate().latin_square {
            return Err(Error::InvalidTable(e));
        }
        Ok(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Smallest label.
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n as u32).map(move |i| i + self.base)
    }

    pub fn contains(&self, label: u32) -> bool {
        label >= self.base && ((label - self.base) as usize) < self.n
    }

    fn idx(&self, label: u32) -> Result<usize> {
        if self.contains(label) {
            Ok((label - self.base) as usize)
        } else {
            Err(Error::InvalidTable(format!("label {label} out of range for `{}`", self.name)))
        }
    }

    pub fn mul(&self, i: u32, j: u32) -> Result<u32> {
        let (a, b) = (self.idx(i)?, self.idx(j)?);
        Ok(self.mul0(a, b) as u32 + self.base)
    }

    fn mul0(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b] as usize
    }

    /// The unique `j` with `i·j = k`, for a Latin square.
    pub fn left_div(&self, i: u32, k: u32) -> Result<Option<u32>> {
        let (a, c) = (self.idx(i)?, self.idx(k)?);
        Ok((0..self.n).find(|&b| self.mul0(a, b) == c).map(|b| b as u32 + self.base))
    }

    /// The unique `i` with `i·j = k`, for a Latin square.
    pub fn right_div(&self, j: u32, k: u32) -> Result<Option<u32>> {
        let (b, c) = (self.idx(j)?, self.idx(k)?);
        Ok((0..self.n).find(|&a| self.mul0(a, b) == c).map(|a| a as u32 + self.base))
    }

    pub fn validate(&self) -> TableReport {
        let n = self.n;
        let mut latin = Ok(());
        'outer: for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let (r, c) = (self.mul0(i, j), self.mul0(j, i));
                if row[r] {
                    latin = Err(format!("row {} repeats {}", i as u32 + self.base, r as u32 + self.base));
                    break 'outer;
                }
                if col[c] {
                    latin = Err(format!("column {} repeats {}", i as u32 + self.base, c as u32 + self.base));
                    break 'outer;
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| self.mul0(e, x) == x && self.mul0(x, e) == x))
            .map(|e| e as u32 + self.base)
            .ok_or_else(|| "no identity element".to_string());
        let mut associative = Ok(());
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.mul0(a, b);
                for c in 0..n {
                    if self.mul0(ab, c) != self.mul0(a, self.mul0(b, c)) {
                        associative = Err(format!(
                            "({0}·{1})·{2} ≠ {0}·({1}·{2})",
                            a as u32 + self.base,
                            b as u32 + self.base,
                            c as u32 + self.base
                        ));
                        break 'assoc;
                    }
                }
            }
        }
        TableReport { latin_square: latin, identity, associative }
    }

    /// Element orders in label order; requires a group.
    pub fn element_orders(&self) -> Result<Vec<u32>> {
        let report = self.validate();
        let e = report.identity.map_err(Error::InvalidTable)?;
        let e0 = (e - self.base) as usize;
        let mut out = Vec::with_capacity(self.n);
        for x in 0..self.n {
            let mut p = x;
            let mut k = 1;
            while p != e0 {
                p = self.mul0(p, x);
                k += 1;
                if k > self.n as u32 {
                    return Err(Error::InvalidTable("element of unbounded order".into()));
                }
            }
            out.push(k);
        }
        Ok(out)
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = (self.base as usize + self.n - 1).to_string().len();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| format!("{:>w$}", self.mul0(i, j) as u32 + self.base))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_entries() {
        let c2c4 = CayleyTable::builtin("c2c4").unwrap();
        assert_eq!(c2c4.mul(5, 5).unwrap(), 2);
        let alt4 = CayleyTable::builtin("alt4").unwrap();
        assert_eq!(alt4.mul(5, 9).unwrap(), 1);
        assert_eq!(alt4.mul(9, 5).unwrap(), 1);
        assert_eq!(alt4.mul(5, 2).unwrap(), 6);
        let c3c3 = CayleyTable::builtin("c3c3").unwrap();
        assert_eq!(c3c3.mul(3, 3).unwrap(), 6);
        assert_eq!(c3c3.mul(5, 7).unwrap(), 0);
        assert!(c3c3.mul(9, 0).is_err());
        assert!(CayleyTable::builtin("s3").is_err());
    }

    #[test]
    fn builtins_are_groups() {
        for name in BUILTIN_NAMES {
            let t = CayleyTable::builtin(name).unwrap();
            let r = t.validate();
            assert!(r.is_group(), "{name}: {r:?}");
            assert_eq!(r.identity.unwrap(), t.base());
        }
    }

    #[test]
    fn alt4_orders() {
        let mut o = CayleyTable::builtin("alt4").unwrap().element_orders().unwrap();
        o.sort();
        assert_eq!(o, vec![1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn broken_tables() {
        let t = CayleyTable::from_rows("bad", 1, &[vec![1, 2], vec![2, 2]]).unwrap();
        assert!(t.validate().latin_square.is_err());
        assert!(CayleyTable::parse_grid("bad", "1 2\n2 2\n").is_err());
        assert!(CayleyTable::parse_grid("bad", "1 2\n2\n").is_err());
        // a Latin square without associativity
        let q = CayleyTable::from_rows("q", 0, &[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap();
        let r = q.validate();
        assert!(r.latin_square.is_ok() && !r.is_group());
    }

    #[test]
    fn grid_round_trip() {
        let t = CayleyTable::builtin("c3c3").unwrap();
        let back = CayleyTable::parse_grid("c3c3", &t.to_string()).unwrap();
        assert_eq!(back, t);
        let t = CayleyTable::builtin("alt4").unwrap();
        assert_eq!(CayleyTable::parse_grid("alt4", &format!("# alt4\n{t}")).unwrap(), t);
    }
}
