//! The shipped catalog of coprime 3-partition types admissible for proper
//! primitive groups, parsed from `data/primitive_types.tbl`.
//!
//! Each non-comment line is `id | degree | types | constraints`. The parser
//! accepts only the degree patterns, type templates and constraint phrases
//! listed in [`DegreePattern`] and [`Constraint`]; anything else is a
//! [`Error::TableParse`]. [`Table::render`] reproduces the source text.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, prime_power, q_set};
use crate::partitions::{projective_triple, Partition};

pub const TABLE_SOURCE: &str = include_str!("../../data/primitive_types.tbl");
pub const FORMAT_VERSION: u32 = 1;

const TWO_POWER_TYPE: &str = "[2,2^(a-1)-1,2^(a-1)-1]";
const PRIME_POWER_TYPE: &str = "[1,(p^a-1)/2,(p^a-1)/2]";
const PRIME_SQUARE_TYPE: &str = "[1,p-1,p(p-1)]";
const PROJECTIVE_TYPE: &str = "[(q^d1-1)/(q-1),(q^d2-1)/(q-1),(q^d1-1)(q^d2-1)/(q-1)]";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreePattern {
    Literal(u64),
    /// `2^a`
    TwoPower,
    /// `p^a`
    PrimePower,
    /// `p^2`
    PrimeSquare,
    /// `(q^d-1)/(q-1)`
    Projective,
}

impl DegreePattern {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "2^a" => DegreePattern::TwoPower,
            "p^a" => DegreePattern::PrimePower,
            "p^2" => DegreePattern::PrimeSquare,
            "(q^d-1)/(q-1)" => DegreePattern::Projective,
            _ => DegreePattern::Literal(s.parse().ok().filter(|&n: &u64| n >= 3)?),
        })
    }

    fn template(self) -> Option<&'static str> {
        match self {
            DegreePattern::Literal(_) => None,
            DegreePattern::TwoPower => Some(TWO_POWER_TYPE),
            DegreePattern::PrimePower => Some(PRIME_POWER_TYPE),
            DegreePattern::PrimeSquare => Some(PRIME_SQUARE_TYPE),
            DegreePattern::Projective => Some(PROJECTIVE_TYPE),
        }
    }

    fn params(self) -> &'static [&'static str] {
        match self {
            DegreePattern::Literal(_) => &[],
            DegreePattern::TwoPower => &["a"],
            DegreePattern::PrimePower => &["p", "a"],
            DegreePattern::PrimeSquare => &["p"],
            DegreePattern::Projective => &["q", "d", "d1", "d2"],
        }
    }
}

impl fmt::Display for DegreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreePattern::Literal(n) => write!(f, "{n}"),
            DegreePattern::TwoPower => f.write_str("2^a"),
            DegreePattern::PrimePower => f.write_str("p^a"),
            DegreePattern::PrimeSquare => f.write_str("p^2"),
            DegreePattern::Projective => f.write_str("(q^d-1)/(q-1)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// `name>=k` for a named exponent parameter.
    AtLeast(&'static str, u64),
    POdd,
    QPrimePower,
    QOddPrimePower,
    DSum,
    DSumEven,
    CoprimeSplit,
    QOddWhenDOdd,
}

impl Constraint {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "p odd" => Constraint::POdd,
            "q prime power" => Constraint::QPrimePower,
            "q odd prime power" => Constraint::QOddPrimePower,
            "d=d1+d2" => Constraint::DSum,
            "d=d1+d2 even" => Constraint::DSumEven,
            "gcd(d1,d2)=1" => Constraint::CoprimeSplit,
            "q odd when d odd" => Constraint::QOddWhenDOdd,
            _ => {
                let (name, k) = s.split_once(">=")?;
                let name = ["a", "d1", "d2"].into_iter().find(|&p| p == name)?;
                Constraint::AtLeast(name, k.parse().ok()?)
            }
        })
    }

    fn param(&self) -> &'static str {
        match self {
            Constraint::AtLeast(name, _) => name,
            Constraint::POdd => "p",
            Constraint::QPrimePower | Constraint::QOddPrimePower | Constraint::QOddWhenDOdd => "q",
            Constraint::DSum | Constraint::DSumEven | Constraint::CoprimeSplit => "d1",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::AtLeast(name, k) => write!(f, "{name}>={k}"),
            Constraint::POdd => f.write_str("p odd"),
            Constraint::QPrimePower => f.write_str("q prime power"),
            Constraint::QOddPrimePower => f.write_str("q odd prime power"),
            Constraint::DSum => f.write_str("d=d1+d2"),
            Constraint::DSumEven => f.write_str("d=d1+d2 even"),
            Constraint::CoprimeSplit => f.write_str("gcd(d1,d2)=1"),
            Constraint::QOddWhenDOdd => f.write_str("q odd when d odd"),
        }
    }
}

/// A catalog row instantiated for one degree: `params` identify the
/// instance within the row (see [`TableRow::instances`]).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimitiveEntry {
    pub row: String,
    pub params: Vec<u64>,
}

impl fmt::Display for PrimitiveEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(u64::to_string).collect();
        write!(f, "{}:{}", self.row, params.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub id: String,
    pub table: u8,
    pub degree: DegreePattern,
    /// Literal types in written order; empty for parametric rows.
    pub literal_types: Vec<Partition>,
    pub constraints: Vec<Constraint>,
}

impl TableRow {
    fn has(&self, c: &Constraint) -> bool {
        self.constraints.contains(c)
    }

    fn at_least(&self, name: &str) -> u64 {
        self.constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::AtLeast(p, k) if *p == name => Some(*k),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Every instance of this row at degree `n`, in a fixed order.
    ///
    /// Parameters: literal rows `[index]` (1-based), `2^a` rows `[a]`,
    /// `p^a` rows `[p, a]`, `p^2` rows `[p]`, projective rows `[q, d1, d2]`
    /// with `d1 <= d2`.
    pub fn instances(&self, n: u64) -> Result<Vec<(PrimitiveEntry, Partition)>> {
        let entry = |params: Vec<u64>| PrimitiveEntry { row: self.id.clone(), params };
        let mut out = Vec::new();
        match self.degree {
            DegreePattern::Literal(m) => {
                if m == n {
                    for (i, p) in self.literal_types.iter().enumerate() {
                        out.push((entry(vec![i as u64 + 1]), p.clone()));
                    }
                }
            }
            DegreePattern::TwoPower => {
                if let Some((2, a)) = prime_power(n) {
                    if a as u64 >= self.at_least("a").max(2) {
                        let h = (1u64 << (a - 1)) - 1;
                        out.push((entry(vec![a as u64]), Partition::new(vec![2, h, h])?));
                    }
                }
            }
            DegreePattern::PrimePower => {
                if let Some((p, a)) = prime_power(n) {
                    let odd_ok = p % 2 == 1 || !self.has(&Constraint::POdd);
                    if odd_ok && a as u64 >= self.at_least("a").max(1) && n % 2 == 1 {
                        let h = (n - 1) / 2;
                        out.push((entry(vec![p, a as u64]), Partition::new(vec![1, h, h])?));
                    }
                }
            }
            DegreePattern::PrimeSquare => {
                if let Some((p, 2)) = prime_power(n) {
                    if p % 2 == 1 || !self.has(&Constraint::POdd) {
                        out.push((entry(vec![p]), Partition::new(vec![1, p - 1, p * (p - 1)])?));
                    }
                }
            }
            DegreePattern::Projective => {
                for rep in q_set(n)? {
                    let (q, d) = (rep.q, rep.d);
                    if self.has(&Constraint::QOddPrimePower) && q % 2 == 0 {
                        continue;
                    }
                    if self.has(&Constraint::DSumEven) && d % 2 == 1 {
                        continue;
                    }
                    if self.has(&Constraint::QOddWhenDOdd) && d % 2 == 1 && q % 2 == 0 {
                        continue;
                    }
                    let lo1 = self.at_least("d1").max(1) as u32;
                    let lo2 = self.at_least("d2").max(1) as u32;
                    for d1 in lo1..=d / 2 {
                        let d2 = d - d1;
                        if d2 < lo2 || (self.has(&Constraint::CoprimeSplit) && gcd(d1 as u64, d2 as u64) != 1) {
                            continue;
                        }
                        out.push((entry(vec![q, d1 as u64, d2 as u64]), projective_triple(q, d1, d2)?));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let types = match self.degree.template() {
            Some(t) => t.to_string(),
            None => {
                let v: Vec<String> = self.literal_types.iter().map(render_literal).collect();
                v.join(" ")
            }
        };
        let constraints = if self.constraints.is_empty() {
            "-".to_string()
        } else {
            let v: Vec<String> = self.constraints.iter().map(Constraint::to_string).collect();
            v.join("; ")
        };
        format!("{} | {} | {} | {}", self.id, self.degree, types, constraints)
    }
}

/// Literal types are written in non-decreasing order, as in the source.
fn render_literal(p: &Partition) -> String {
    let v: Vec<String> = p.terms().iter().rev().map(u64::to_string).collect();
    format!("[{}]", v.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Line {
    Comment(String),
    Row(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub version: u32,
    pub rows: Vec<TableRow>,
    lines: Vec<Line>,
}

impl Table {
    pub fn parse(src: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut lines = Vec::new();
        let mut version = None;
        let mut ids = BTreeSet::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let err = |reason: String| Error::TableParse { line, reason };
            if raw.trim().is_empty() || raw.starts_with('#') {
                if let Some(v) = raw.strip_prefix("# format-version:") {
                    version = Some(v.trim().parse::<u32>().map_err(|e| err(format!("bad version: {e}")))?);
                }
                lines.push(Line::Comment(raw.to_string()));
                continue;
            }
            let row = parse_row(raw).map_err(err)?;
            if !ids.insert(row.id.clone()) {
                return Err(err(format!("duplicate row id {}", row.id)));
            }
            if row.render() != raw {
                return Err(err("row is not in canonical form".into()));
            }
            lines.push(Line::Row(rows.len()));
            rows.push(row);
        }
        let version = version.ok_or(Error::TableParse { line: 0, reason: "missing format-version".into() })?;
        if version != FORMAT_VERSION {
            return Err(Error::TableParse { line: 0, reason: format!("unsupported format-version {version}") });
        }
        Ok(Table { version, rows, lines })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            match l {
                Line::Comment(c) => out.push_str(c),
                Line::Row(i) => out.push_str(&self.rows[*i].render()),
            }
            out.push('\n');
        }
        out
    }

    pub fn row(&self, id: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// The rows that apply to degree `n`: table 1 when `n` is even,
    /// table 2 when odd.
    pub fn rows_for(&self, n: u64) -> impl Iterator<Item = &TableRow> {
        let table = if n.is_multiple_of(2) { 1 } else { 2 };
        self.rows.iter().filter(move |r| r.table == table)
    }

    /// Every catalogued instance at degree `n`.
    pub fn instances(&self, n: u64) -> Result<Vec<(PrimitiveEntry, Partition)>> {
        let mut out = Vec::new();
        for row in self.rows_for(n) {
            out.extend(row.instances(n)?);
        }
        Ok(out)
    }

    /// The partition an entry stands for at degree `n`.
    pub fn resolve(&self, entry: &PrimitiveEntry, n: u64) -> Result<Partition> {
        let row = self
            .row(&entry.row)
            .ok_or_else(|| Error::Domain(format!("no table row {}", entry.row)))?;
        let table = if n.is_multiple_of(2) { 1 } else { 2 };
        if row.table != table {
            return Err(Error::Domain(format!("row {} does not apply to degree {n}", entry.row)));
        }
        row.instances(n)?
            .into_iter()
            .find(|(e, _)| e == entry)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::Domain(format!("entry {entry} does not instantiate at degree {n}")))
    }
}

fn parse_row(raw: &str) -> std::result::Result<TableRow, String> {
    let fields: Vec<&str> = raw.split(" | ").collect();
    let [id, degree, types, constraints] = fields[..] else {
        return Err(format!("expected 4 fields separated by ' | ', found {}", fields.len()));
    };
    let (table, _) = id
        .split_once('.')
        .and_then(|(t, r)| Some((t.parse::<u8>().ok()?, r.parse::<u32>().ok()?)))
        .filter(|(t, _)| *t == 1 || *t == 2)
        .ok_or_else(|| format!("bad row id {id:?}"))?;
    let degree = DegreePattern::parse(degree).ok_or_else(|| format!("unknown degree pattern {degree:?}"))?;
    let literal_types = match degree {
        DegreePattern::Literal(n) => {
            if n % 2 != u64::from(table == 2) {
                return Err(format!("degree {n} has the wrong parity for table {table}"));
            }
            let mut out = Vec::new();
            for tok in types.split(' ') {
                let p: Partition = tok.parse().map_err(|e| format!("bad type {tok:?}: {e}"))?;
                if p.n() != n || p.len() != 3 || !p.is_coprime() {
                    return Err(format!("{tok} is not a coprime 3-partition of {n}"));
                }
                out.push(p);
            }
            out
        }
        _ => {
            if Some(types) != degree.template() {
                return Err(format!("type template {types:?} does not match degree pattern {degree}"));
            }
            Vec::new()
        }
    };
    let constraints = if constraints == "-" {
        Vec::new()
    } else {
        constraints
            .split("; ")
            .map(|c| {
                let k = Constraint::parse(c).ok_or_else(|| format!("unknown constraint {c:?}"))?;
                if degree.params().contains(&k.param()) {
                    Ok(k)
                } else {
                    Err(format!("constraint {c:?} does not apply to degree pattern {degree}"))
                }
            })
            .collect::<std::result::Result<Vec<_>, String>>()?
    };
    Ok(TableRow { id: id.to_string(), table, degree, literal_types, constraints })
}

/// The shipped table, parsed once.
pub fn shipped() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| Table::parse(TABLE_SOURCE).expect("shipped table parses"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_table_round_trips() {
        let t = shipped();
        assert_eq!(t.version, 1);
        assert_eq!(t.rows.len(), 11);
        assert_eq!(t.render(), TABLE_SOURCE);
    }

    #[test]
    fn rejects_unknown_vocabulary() {
        let head = "# format-version: 1\n";
        let bad = [
            "1.1 | 10 | [1,3,6] | q even",
            "1.1 | 10 | [1,3,5] | -",
            "1.1 | 11 | [1,3,7] | -",
            "1.9 | 2^a | [2,2^a-1,1] | a>=2",
            "1.1 | 2^a | [2,2^(a-1)-1,2^(a-1)-1] | p odd",
            "3.1 | 10 | [1,3,6] | -",
            "1.1 | 10 | [1,3,6]",
            "1.1 | 10 | [6,3,1] | -",
        ];
        for row in bad {
            let e = Table::parse(&format!("{head}{row}\n")).unwrap_err();
            assert!(matches!(e, Error::TableParse { line: 2, .. }), "{row}: {e}");
        }
        assert!(Table::parse("1.1 | 10 | [1,3,6] | -\n").is_err());
        assert!(Table::parse("# format-version: 2\n").is_err());
        let dup = format!("{head}1.1 | 10 | [1,3,6] | -\n1.1 | 10 | [1,1,8] | -\n");
        assert!(Table::parse(&dup).is_err());
    }

    #[test]
    fn literal_order_is_kept() {
        let r = shipped().row("2.2").unwrap();
        let shown: Vec<String> = r.literal_types.iter().map(render_literal).collect();
        assert_eq!(shown, ["[1,5,5]", "[2,3,6]", "[1,2,8]"]);
    }

    #[test]
    fn resolving_entries() {
        let t = shipped();
        let e = PrimitiveEntry { row: "2.7".into(), params: vec![5, 1, 2] };
        assert_eq!(t.resolve(&e, 31).unwrap(), Partition::new(vec![24, 6, 1]).unwrap());
        let excluded = PrimitiveEntry { row: "2.7".into(), params: vec![2, 2, 3] };
        assert!(t.resolve(&excluded, 31).is_err());
        let wrong_table = PrimitiveEntry { row: "1.1".into(), params: vec![1] };
        assert!(t.resolve(&wrong_table, 11).is_err());
        assert_eq!(t.resolve(&wrong_table, 10).unwrap(), Partition::new(vec![6, 3, 1]).unwrap());
    }
}
