//! The JSON table file format.
//!
//! ```json
//! {
//!   "name": "S3",
//!   "missing": "row",
//!   "rows": [["1", "1", "1"], ["2", "0", "-1"]],
//!   "orders": [1, 2, 3],
//!   "powermaps": {"2": [1, 1, 3], "3": [1, 2, 1]}
//! }
//! ```
//!
//! Entries are cyclotomic literals, power map indices are 1-based, and
//! `missing` may be omitted when the matrix shape decides it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{CycloError, Cyclotomic};
use crate::table::{CharacterTable, ClassMeta, Matrix, Missing, PartialTable, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none", deserialize_with = "missing_field")]
    pub missing: Option<Missing>,
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub powermaps: Option<BTreeMap<u64, Vec<usize>>>,
}

fn missing_field<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<Missing>, D::Error> {
    let s = Option::<String>::deserialize(d)?;
    match s.as_deref() {
        None => Ok(None),
        Some("row") => Ok(Some(Missing::Row)),
        Some("column") => Ok(Some(Missing::Column)),
        Some(other) => Err(serde::de::Error::custom(format!(
            "missing must be \"row\" or \"column\", not {other:?}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Full(CharacterTable),
    Partial(PartialTable),
}

impl Parsed {
    pub fn into_full(self) -> Result<CharacterTable, IoError> {
        match self {
            Parsed::Full(t) => Ok(t),
            Parsed::Partial(p) => Err(IoError::DimensionMismatch(format!(
                "expected a complete table, found one missing a {}",
                missing_name(p.missing())
            ))),
        }
    }

    pub fn into_partial(self) -> Result<PartialTable, IoError> {
        match self {
            Parsed::Partial(p) => Ok(p),
            Parsed::Full(_) => {
                Err(IoError::DimensionMismatch("expected a partial table, found a square one".into()))
            }
        }
    }
}

fn missing_name(m: Missing) -> &'static str {
    match m {
        Missing::Row => "row",
        Missing::Column => "column",
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Byte offset of the opening quote of the `index`-th string inside the `rows` array.
fn locate_row_string(text: &str, index: usize) -> Option<usize> {
    let key = text.find("\"rows\"")?;
    let bytes = text.as_bytes();
    let mut pos = key + "\"rows\"".len();
    let mut seen = 0;
    let mut depth = 0usize;
    while pos < bytes.len() {
        match bytes[pos] {
            b'[' => depth += 1,
            b']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return None;
                }
            }
            b'"' if depth >= 2 => {
                if seen == index {
                    return Some(pos);
                }
                seen += 1;
                pos += 1;
                while pos < bytes.len() && bytes[pos] != b'"' {
                    if bytes[pos] == b'\\' {
                        pos += 1;
                    }
                    pos += 1;
                }
            }
            _ => {}
        }
        pos += 1;
    }
    None
}

fn parse_entries(text: &str, file: &TableFile) -> Result<Matrix, IoError> {
    let mut index = 0;
    let mut out = Vec::with_capacity(file.rows.len());
    for row in &file.rows {
        let mut parsed = Vec::with_capacity(row.len());
        for lit in row {
            match lit.parse::<Cyclotomic>() {
                Ok(v) => parsed.push(v),
                Err(CycloError::Parse { offset, message }) => {
                    let (line, column) = locate_row_string(text, index)
                        .map(|q| line_col(text, q + 1 + offset))
                        .unwrap_or((0, 0));
                    return Err(IoError::Parse {
                        line,
                        column,
                        message: format!("in literal {lit:?}: {message}"),
                    });
                }
                Err(e) => {
                    return Err(IoError::Parse { line: 0, column: 0, message: e.to_string() });
                }
            }
            index += 1;
        }
        out.push(parsed);
    }
    Ok(out)
}

impl TableFile {
    fn meta(&self) -> Result<ClassMeta, IoError> {
        let powermaps = match &self.powermaps {
            None => None,
            Some(maps) => {
                let mut out = BTreeMap::new();
                for (p, map) in maps {
                    let zero_based = map
                        .iter()
                        .map(|&j| {
                            j.checked_sub(1).ok_or_else(|| {
                                IoError::DimensionMismatch(format!("power map {p} uses index 0; indices are 1-based"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    out.insert(*p, zero_based);
                }
                Some(out)
            }
        };
        Ok(ClassMeta { orders: self.orders.clone(), powermaps })
    }

    fn from_meta(name: &str, m: &Matrix, missing: Option<Missing>, meta: &ClassMeta) -> TableFile {
        TableFile {
            name: name.to_string(),
            missing,
            rows: m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            orders: meta.orders.clone(),
            powermaps: meta
                .powermaps
                .as_ref()
                .map(|maps| maps.iter().map(|(p, v)| (*p, v.iter().map(|j| j + 1).collect())).collect()),
        }
    }
}

/// Parse a table file, inferring whether a row or a column is missing from the shape.
pub fn parse(text: &str) -> Result<Parsed, IoError> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let rows = file.rows.len();
    let cols = file.rows.first().map_or(0, Vec::len);
    if let Some(i) = file.rows.iter().position(|r| r.len() != cols) {
        return Err(IoError::DimensionMismatch(format!(
            "row {} has {} entries, row 1 has {cols}",
            i + 1,
            file.rows[i].len()
        )));
    }
    let shape = match (file.missing, rows, cols) {
        (None | Some(Missing::Row), 0, _) => Some((Missing::Row, 1)),
        (None, r, c) if r == c => None,
        (None | Some(Missing::Row), r, c) if c == r + 1 => Some((Missing::Row, c)),
        (None | Some(Missing::Column), r, c) if r == c + 1 => Some((Missing::Column, r)),
        (m, r, c) => {
            return Err(IoError::DimensionMismatch(match m {
                Some(m) => format!("a {r}x{c} matrix cannot be a table missing a {}", missing_name(m)),
                None => format!("a {r}x{c} matrix is neither square nor one row or column short"),
            }))
        }
    };
    let entries = parse_entries(text, &file)?;
    let meta = file.meta()?;
    match shape {
        None => Ok(Parsed::Full(CharacterTable::new(file.name, entries)?.with_meta(meta)?)),
        Some((missing, k)) => Ok(Parsed::Partial(PartialTable::new(file.name, entries, missing, k, meta)?)),
    }
}

fn render(file: &TableFile) -> String {
    let mut items = vec![format!("  \"name\": {}", serde_json::to_string(&file.name).expect("string"))];
    if let Some(m) = file.missing {
        items.push(format!("  \"missing\": \"{}\"", missing_name(m)));
    }
    let rows: Vec<String> = file
        .rows
        .iter()
        .map(|r| format!("    {}", serde_json::to_string(r).expect("strings")).replace("\",\"", "\", \""))
        .collect();
    if rows.is_empty() {
        items.push("  \"rows\": []".into());
    } else {
        items.push(format!("  \"rows\": [\n{}\n  ]", rows.join(",\n")));
    }
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    if let Some(orders) = &file.orders {
        items.push(format!("  \"orders\": [{}]", list(orders)));
    }
    if let Some(maps) = &file.powermaps {
        let body: Vec<String> = maps
            .iter()
            .map(|(p, v)| {
                let v: Vec<u64> = v.iter().map(|&j| j as u64).collect();
                format!("\"{p}\": [{}]", list(&v))
            })
            .collect();
        items.push(format!("  \"powermaps\": {{{}}}", body.join(", ")));
    }
    format!("{{\n{}\n}}\n", items.join(",\n"))
}

/// Serialize a complete table in canonical row and column order.
pub fn serialize(t: &CharacterTable) -> String {
    let c = t.canonical();
    render(&TableFile::from_meta(&c.name, c.entries(), None, &c.meta))
}

pub fn serialize_partial(p: &PartialTable) -> String {
    render(&TableFile::from_meta(&p.name, p.entries(), Some(p.missing()), &p.meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_m9_fixture() {
        let t = parse(fixtures::CORPUS.iter().find(|(n, _)| *n == "m9").unwrap().1)
            .unwrap()
            .into_full()
            .unwrap();
        assert_eq!(t.k(), 6);
        assert_eq!(t.meta.powermaps.as_ref().unwrap()[&2], vec![0, 1, 0, 2, 2, 2]);
    }

    #[test]
    fn partial_from_missing_row() {
        let p = fixtures::puzzle("m9_partial").into_partial().unwrap();
        assert_eq!(p.missing(), Missing::Row);
        assert_eq!(p.k(), 6);
        let text = serialize_partial(&p);
        assert_eq!(parse(&text).unwrap(), Parsed::Partial(p));
    }

    #[test]
    fn dimension_errors() {
        let bad = r#"{"name": "x", "missing": "row", "rows": [["1","1"],["1","1"],["1","1"]]}"#;
        assert!(matches!(parse(bad), Err(IoError::DimensionMismatch(_))));
        let ragged = r#"{"name": "x", "rows": [["1","1"],["1"]]}"#;
        assert!(matches!(parse(ragged), Err(IoError::DimensionMismatch(_))));
        let col = r#"{"name": "x", "rows": [["1","1"],["1","1"],["1","1"]]}"#;
        assert_eq!(parse(col).unwrap().into_partial().unwrap().missing(), Missing::Column);
        let oob = r#"{"name": "x", "rows": [["1"]], "powermaps": {"2": [2]}}"#;
        assert!(matches!(parse(oob), Err(IoError::Table(TableError::DimensionMismatch(_)))));
        let zero = r#"{"name": "x", "rows": [["1"]], "powermaps": {"2": [0]}}"#;
        assert!(matches!(parse(zero), Err(IoError::DimensionMismatch(_))));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let text = "{\n  \"name\": \"x\",\n  \"rows\": [\n    [\"1\", \"2*E(\"]\n  ]\n}\n";
        match parse(text) {
            Err(IoError::Parse { line, column, .. }) => assert_eq!((line, column), (4, 16)),
            other => panic!("{other:?}"),
        }
        match parse("{\"name\": 3}") {
            Err(IoError::Parse { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse(r#"{"name": "x", "missing": "both", "rows": []}"#),
            Err(IoError::Parse { .. })
        ));
    }

    #[test]
    fn serialization_is_idempotent() {
        for (name, text) in fixtures::CORPUS {
            let t = parse(text).unwrap().into_full().unwrap();
            let once = serialize(&t);
            let again = serialize(&parse(&once).unwrap().into_full().unwrap());
            assert_eq!(once, again, "{name}");
            assert_eq!(parse(&once).unwrap(), Parsed::Full(t), "{name}");
        }
    }

    #[test]
    fn literal_normal_forms_in_output() {
        let t = fixtures::corpus_table("C4");
        let text = serialize(&t);
        assert!(text.contains("\"E(4)\""));
        assert!(text.contains("\"-1\""));
        assert!(!text.contains("E(2)"));
    }

    #[test]
    fn empty_partial_is_k1() {
        let p = parse(r#"{"name": "1", "missing": "row", "rows": []}"#).unwrap().into_partial().unwrap();
        assert_eq!(p.k(), 1);
    }
}
