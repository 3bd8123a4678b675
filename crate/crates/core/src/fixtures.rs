//! Reference data shipped with the crate.
//!
//! Every fixture is embedded at build time; a [`FixtureSet`] can replace any
//! of them with a file of the same name from a directory.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::arith::{lambda_embed, CycloNum, Field};
use crate::epw::Sextic;
use crate::groebner::{parse_ideal, GroebnerError, IdealText};
use crate::hermitian::{HermMatrix, HermitianError};
use crate::polytext::{default_names, parse_polynomial, ParseError};

pub const SEXTIC: &str = include_str!("../fixtures/sextic.txt");
pub const HPRIME: &str = include_str!("../fixtures/hprime.txt");
pub const MAT10: &str = include_str!("../fixtures/mat10.txt");
pub const X3: &str = include_str!("../fixtures/x3.txt");
pub const X5: &str = include_str!("../fixtures/x5.txt");
pub const SIXFOLD: &str = include_str!("../fixtures/sixfold.txt");
pub const QUADRIC: &str = include_str!("../fixtures/quadric.txt");
pub const CHAR_TABLE: &str = include_str!("../fixtures/char_table.txt");
pub const FIXED_POINTS: &str = include_str!("../fixtures/fixed_points.txt");

/// File names and embedded contents.
pub const EMBEDDED: [(&str, &str); 9] = [
    ("sextic.txt", SEXTIC),
    ("hprime.txt", HPRIME),
    ("mat10.txt", MAT10),
    ("x3.txt", X3),
    ("x5.txt", X5),
    ("sixfold.txt", SIXFOLD),
    ("quadric.txt", QUADRIC),
    ("char_table.txt", CHAR_TABLE),
    ("fixed_points.txt", FIXED_POINTS),
];

/// The printed sextic in `x0…x5`.
pub fn sextic() -> Result<Sextic, ParseError> {
    parse_polynomial(SEXTIC, &default_names(6))
}

pub fn hprime() -> Result<HermMatrix, HermitianError> {
    HermMatrix::parse(HPRIME)
}

/// The printed Gram matrix on the second exterior power.
pub fn mat10() -> Result<HermMatrix, HermitianError> {
    HermMatrix::parse(MAT10)
}

pub fn x3() -> Result<IdealText, GroebnerError> {
    parse_ideal(X3)
}

pub fn x5() -> Result<IdealText, GroebnerError> {
    parse_ideal(X5)
}

pub fn sixfold() -> Result<IdealText, GroebnerError> {
    parse_ideal(SIXFOLD)
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("{name}: {message}")]
    Malformed { name: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn malformed(name: &str, message: impl ToString) -> FixtureError {
    FixtureError::Malformed { name: name.to_string(), message: message.to_string() }
}

/// Raw fixture texts keyed by file name.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    texts: BTreeMap<String, String>,
}

impl Default for FixtureSet {
    fn default() -> Self {
        FixtureSet::embedded()
    }
}

impl FixtureSet {
    pub fn embedded() -> Self {
        FixtureSet { texts: EMBEDDED.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect() }
    }

    /// Embedded fixtures with any same-named files in `dir` taking precedence.
    pub fn with_dir(dir: &Path) -> Result<Self, FixtureError> {
        let mut set = FixtureSet::embedded();
        if !dir.is_dir() {
            return Err(FixtureError::Io {
                path: dir.display().to_string(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
            });
        }
        for (name, _) in EMBEDDED {
            let path = dir.join(name);
            if path.exists() {
                let text = std::fs::read_to_string(&path)
                    .map_err(|source| FixtureError::Io { path: path.display().to_string(), source })?;
                set.texts.insert(name.to_string(), text);
            }
        }
        Ok(set)
    }

    /// Replaces one fixture text.
    pub fn set(&mut self, name: &str, text: impl Into<String>) {
        self.texts.insert(name.to_string(), text.into());
    }

    pub fn text(&self, name: &str) -> &str {
        self.texts.get(name).map(String::as_str).unwrap_or("")
    }

    /// Parses every fixture.
    pub fn load(&self) -> Result<Fixtures, FixtureError> {
        let ideal = |name: &str| parse_ideal(self.text(name)).map_err(|e| malformed(name, e));
        let herm = |name: &str| HermMatrix::parse(self.text(name)).map_err(|e| malformed(name, e));
        Ok(Fixtures {
            sextic: parse_polynomial(self.text("sextic.txt"), &default_names(6)).map_err(|e| malformed("sextic.txt", e))?,
            hprime: herm("hprime.txt")?,
            mat10: herm("mat10.txt")?,
            x3: ideal("x3.txt")?,
            x5: ideal("x5.txt")?,
            sixfold: ideal("sixfold.txt")?,
            quadric: ideal("quadric.txt")?,
            char_table: CharTable::parse(self.text("char_table.txt")).map_err(|e| malformed("char_table.txt", e))?,
            fixed_points: FixedPointTable::parse(self.text("fixed_points.txt"))
                .map_err(|e| malformed("fixed_points.txt", e))?,
        })
    }
}

/// Parsed reference data.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub sextic: Sextic,
    pub hprime: HermMatrix,
    pub mat10: HermMatrix,
    pub x3: IdealText,
    pub x5: IdealText,
    pub sixfold: IdealText,
    pub quadric: IdealText,
    pub char_table: CharTable,
    pub fixed_points: FixedPointTable,
}

impl Fixtures {
    pub fn embedded() -> Self {
        FixtureSet::embedded().load().expect("embedded fixtures parse")
    }
}

/// `key: v1 v2 …` lines, `#` comments dropped.
fn keyed_lines(src: &str) -> Result<Vec<(String, Vec<String>)>, String> {
    let mut out = Vec::new();
    for (n, line) in src.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("").trim();
        if code.is_empty() {
            continue;
        }
        let (key, rest) = code.split_once(':').ok_or_else(|| format!("line {}: expected `key: values`", n + 1))?;
        out.push((key.trim().to_string(), rest.split_whitespace().map(str::to_string).collect()));
    }
    Ok(out)
}

fn numbers<T: std::str::FromStr>(key: &str, vals: &[String]) -> Result<Vec<T>, String> {
    vals.iter().map(|v| v.parse().map_err(|_| format!("{key}: bad entry `{v}`"))).collect()
}

/// Expected characters on the conjugacy classes.
#[derive(Clone, Debug, PartialEq)]
pub struct CharTable {
    pub classes: Vec<String>,
    pub sizes: Vec<usize>,
    pub orders: Vec<u32>,
    /// Character name and values, one per class.
    pub rows: Vec<(String, Vec<CycloNum>)>,
}

impl CharTable {
    /// Entries are integers, `l` for `(−1 + √−11)/2`, or `lb` for its conjugate.
    pub fn parse(src: &str) -> Result<CharTable, String> {
        let mut classes = None;
        let mut sizes = None;
        let mut orders = None;
        let mut rows = Vec::new();
        let lambda = lambda_embed();
        for (key, vals) in keyed_lines(src)? {
            match key.as_str() {
                "classes" => classes = Some(vals),
                "sizes" => sizes = Some(numbers(&key, &vals)?),
                "orders" => orders = Some(numbers(&key, &vals)?),
                _ => {
                    let row = vals
                        .iter()
                        .map(|v| match v.as_str() {
                            "l" => Ok(lambda.clone()),
                            "lb" => Ok(lambda.conj()),
                            _ => v.parse::<i64>().map(CycloNum::from_i64).map_err(|_| format!("{key}: bad entry `{v}`")),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push((key, row));
                }
            }
        }
        let classes: Vec<String> = classes.ok_or("missing `classes:` line")?;
        let sizes: Vec<usize> = sizes.ok_or("missing `sizes:` line")?;
        let orders: Vec<u32> = orders.ok_or("missing `orders:` line")?;
        let n = classes.len();
        if sizes.len() != n || orders.len() != n || rows.iter().any(|(_, r)| r.len() != n) {
            return Err(format!("every row needs {n} entries"));
        }
        Ok(CharTable { classes, sizes, orders, rows })
    }
}

/// A fixed-point count: finitely many points, or a locus of some dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedCount {
    Points(usize),
    Dimension(usize),
}

impl FixedCount {
    fn parse(s: &str) -> Option<FixedCount> {
        match s.strip_prefix("dim") {
            Some(d) => d.parse().ok().map(FixedCount::Dimension),
            None => s.parse().ok().map(FixedCount::Points),
        }
    }
}

impl std::fmt::Display for FixedCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FixedCount::Points(n) => write!(f, "{n}"),
            FixedCount::Dimension(d) => write!(f, "dim{d}"),
        }
    }
}

/// Fixed-point counts by element order on the surface and the sextic.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointTable {
    pub orders: Vec<u32>,
    pub surface: Vec<FixedCount>,
    pub fourfold: Vec<FixedCount>,
}

impl FixedPointTable {
    pub fn parse(src: &str) -> Result<FixedPointTable, String> {
        let mut map: BTreeMap<String, Vec<String>> = keyed_lines(src)?.into_iter().collect();
        let mut take = |k: &str| map.remove(k).ok_or(format!("missing `{k}:` line"));
        let orders: Vec<u32> = numbers("order", &take("order")?)?;
        let counts = |k: &str, vals: Vec<String>| -> Result<Vec<FixedCount>, String> {
            if vals.len() != orders.len() {
                return Err(format!("{k}: expected {} entries", orders.len()));
            }
            vals.iter().map(|v| FixedCount::parse(v).ok_or(format!("{k}: bad entry `{v}`"))).collect()
        };
        let surface = counts("surface", take("surface")?)?;
        let fourfold = counts("fourfold", take("fourfold")?)?;
        Ok(FixedPointTable { orders, surface, fourfold })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_parse() {
        let f = Fixtures::embedded();
        assert_eq!(f.char_table.classes.len(), 8);
        assert_eq!(f.char_table.rows.len(), 4);
        assert_eq!(f.fixed_points.surface[4], FixedCount::Dimension(1));
        assert_eq!(f.fixed_points.fourfold[1], FixedCount::Points(8));
        assert_eq!(f.quadric.polys.len(), 1);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(CharTable::parse("classes: 1 c\nsizes: 1\norders: 1 11").is_err());
        assert!(CharTable::parse("classes: 1\nsizes: 1\norders: 1\nchi0: q").is_err());
        assert!(FixedPointTable::parse("order: 2\nsurface: dimx\nfourfold: 1").is_err());
        let mut set = FixtureSet::embedded();
        set.set("x3.txt", "x01*x02");
        assert!(matches!(set.load(), Err(FixtureError::Malformed { name, .. }) if name == "x3.txt"));
    }
}
