//! Character tables, partial tables and the class statistics derived from them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::Cyclotomic;

pub type Matrix = Vec<Vec<Cyclotomic>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("no column qualifies as the identity column")]
    NoIdentityColumn,
    #[error("insufficient class data: {0}")]
    InsufficientData(String),
    #[error("inconsistent class data: {0}")]
    InconsistentData(String),
    #[error("column {column} is not a duplicate of the identity column")]
    NotDuplicate { column: usize },
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Optional per-class metadata. Power map indices are 0-based.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassMeta {
    pub orders: Option<Vec<u64>>,
    pub powermaps: Option<BTreeMap<u64, Vec<usize>>>,
}

impl ClassMeta {
    pub fn check(&self, k: usize) -> Result<(), TableError> {
        if let Some(orders) = &self.orders {
            if orders.len() != k {
                return Err(TableError::DimensionMismatch(format!(
                    "{} element orders for {k} classes",
                    orders.len()
                )));
            }
            if orders.iter().any(|&o| o == 0) {
                return Err(TableError::InconsistentData("element order 0".into()));
            }
        }
        if let Some(maps) = &self.powermaps {
            for (p, map) in maps {
                if !is_prime(*p) {
                    return Err(TableError::InconsistentData(format!("power map key {p} is not a prime")));
                }
                if map.len() != k {
                    return Err(TableError::DimensionMismatch(format!(
                        "power map {p} has {} entries for {k} classes",
                        map.len()
                    )));
                }
                if let Some(bad) = map.iter().find(|&&j| j >= k) {
                    return Err(TableError::DimensionMismatch(format!(
                        "power map {p} refers to class {} of {k}",
                        bad + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reorder classes so that new class `i` is old class `perm[i]`.
    fn permuted(&self, perm: &[usize]) -> ClassMeta {
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        ClassMeta {
            orders: self.orders.as_ref().map(|o| perm.iter().map(|&j| o[j]).collect()),
            powermaps: self.powermaps.as_ref().map(|maps| {
                maps.iter()
                    .map(|(p, map)| (*p, perm.iter().map(|&j| inverse[map[j]]).collect()))
                    .collect()
            }),
        }
    }
}

/// A square matrix of irreducible character values, rows = characters, columns = classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub name: String,
    entries: Matrix,
    pub meta: ClassMeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Missing {
    Row,
    Column,
}

/// A character table with exactly one row or one column removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTable {
    pub name: String,
    entries: Matrix,
    missing: Missing,
    /// Metadata for all `k` classes of the complete table. When a column is
    /// missing, its class comes last.
    pub meta: ClassMeta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub group_order: u64,
    pub centralizer_orders: Vec<u64>,
    pub class_sizes: Vec<u64>,
    pub identity_column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureGap {
    Closed,
    /// The given row whose complex conjugate is absent.
    Unmatched(usize),
}

fn to_u64(v: &BigInt, what: &str) -> Result<u64, TableError> {
    v.to_u64()
        .filter(|&x| x > 0)
        .ok_or_else(|| TableError::InvalidTable(format!("{what} {v} is not a positive machine integer")))
}

/// `|x| <= bound` for a positive integer bound; `None` when the comparison
/// cannot be certified.
fn within_modulus(x: &Cyclotomic, bound: &BigInt) -> Option<bool> {
    let bound_r = BigRational::from_integer(bound.clone());
    if let Some(r) = x.as_rational() {
        return Some(r.abs() <= bound_r);
    }
    if x.coeff_l1() <= bound_r {
        return Some(true);
    }
    let slack = Cyclotomic::from_bigint(bound * bound) - x.abs_squared();
    slack.real_sign().map(|s| s != Ordering::Less)
}

/// All columns that can be the identity: positive integer entries that dominate
/// every entry of their row in absolute value. Returned indices are ascending.
pub fn identify_identity_column(m: &[Vec<Cyclotomic>]) -> Result<Vec<usize>, TableError> {
    let cols = m.first().map_or(0, Vec::len);
    if cols == 0 {
        return Err(TableError::NoIdentityColumn);
    }
    let mut found = Vec::new();
    'cols: for t in 0..cols {
        for row in m {
            match row[t].as_integer() {
                Some(v) if v.is_positive() => {
                    for x in row {
                        if within_modulus(x, &v) != Some(true) {
                            continue 'cols;
                        }
                    }
                }
                _ => continue 'cols,
            }
        }
        found.push(t);
    }
    if found.is_empty() {
        Err(TableError::NoIdentityColumn)
    } else {
        Ok(found)
    }
}

pub fn is_all_ones(row: &[Cyclotomic]) -> bool {
    row.iter().all(Cyclotomic::is_one)
}

pub(crate) fn column(m: &[Vec<Cyclotomic>], j: usize) -> impl Iterator<Item = &Cyclotomic> {
    m.iter().map(move |row| &row[j])
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// p-part of n.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&d| d * d != n).collect();
    out.extend(upper);
    out
}

impl CharacterTable {
    pub fn new(name: impl Into<String>, entries: Matrix) -> Result<Self, TableError> {
        let k = entries.len();
        if k == 0 {
            return Err(TableError::DimensionMismatch("empty table".into()));
        }
        if let Some(row) = entries.iter().find(|r| r.len() != k) {
            return Err(TableError::DimensionMismatch(format!(
                "row of length {} in a table with {k} rows",
                row.len()
            )));
        }
        Ok(CharacterTable { name: name.into(), entries, meta: ClassMeta::default() })
    }

    pub fn with_meta(mut self, meta: ClassMeta) -> Result<Self, TableError> {
        meta.check(self.k())?;
        self.meta = meta;
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i]
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        column(&self.entries, j).cloned().collect()
    }

    pub fn identity_column(&self) -> Result<usize, TableError> {
        identify_identity_column(&self.entries).map(|c| c[0])
    }

    /// Sum of squared degrees.
    pub fn group_order(&self) -> Result<u64, TableError> {
        let id = self.identity_column()?;
        let total: Cyclotomic = column(&self.entries, id).map(|d| d * d).sum();
        match total.as_integer() {
            Some(v) => to_u64(&v, "group order"),
            None => Err(TableError::InvalidTable(format!("sum of squared degrees {total} is not an integer"))),
        }
    }

    /// Column norms, which are the centralizer orders of a genuine table.
    pub fn centralizer_orders(&self) -> Result<Vec<u64>, TableError> {
        let order = self.group_order()?;
        (0..self.k())
            .map(|j| {
                let norm: Cyclotomic = column(&self.entries, j).map(Cyclotomic::abs_squared).sum();
                let v = norm.as_integer().ok_or_else(|| {
                    TableError::InvalidTable(format!("norm {norm} of column {} is not an integer", j + 1))
                })?;
                let c = to_u64(&v, "centralizer order")?;
                if order % c != 0 {
                    return Err(TableError::InvalidTable(format!(
                        "centralizer order {c} of column {} does not divide {order}",
                        j + 1
                    )));
                }
                Ok(c)
            })
            .collect()
    }

    pub fn class_data(&self) -> Result<ClassData, TableError> {
        let group_order = self.group_order()?;
        let centralizer_orders = self.centralizer_orders()?;
        let class_sizes: Vec<u64> = centralizer_orders.iter().map(|c| group_order / c).collect();
        let identity_column = self.identity_column()?;
        if class_sizes.iter().sum::<u64>() != group_order || class_sizes[identity_column] != 1 {
            return Err(TableError::InvalidTable("class sizes do not sum to the group order".into()));
        }
        Ok(ClassData { group_order, centralizer_orders, class_sizes, identity_column })
    }

    /// Number of degree-1 characters.
    pub fn linear_count(&self) -> Result<usize, TableError> {
        let id = self.identity_column()?;
        Ok(column(&self.entries, id).filter(|d| d.is_one()).count())
    }

    fn orders_from_powermaps(&self, group_order: u64, identity: usize) -> Result<Vec<u64>, TableError> {
        let maps = self
            .meta
            .powermaps
            .as_ref()
            .ok_or_else(|| TableError::InsufficientData("no element orders or power maps".into()))?;
        for p in prime_divisors(group_order) {
            if !maps.contains_key(&p) {
                return Err(TableError::InsufficientData(format!("power map for prime {p} is missing")));
            }
        }
        for (p, map) in maps {
            if map[identity] != identity {
                return Err(TableError::InconsistentData(format!(
                    "power map {p} does not fix the identity class"
                )));
            }
        }
        let apply = |n: u64, c: usize| -> usize {
            let mut c = c;
            let mut n = n;
            for p in prime_divisors(n) {
                while n % p == 0 {
                    c = maps[&p][c];
                    n /= p;
                }
            }
            c
        };
        let divs = divisors(group_order);
        (0..self.k())
            .map(|c| {
                divs.iter()
                    .copied()
                    .find(|&n| apply(n, c) == identity)
                    .ok_or_else(|| {
                        TableError::InconsistentData(format!("power maps never send class {} to 1", c + 1))
                    })
            })
            .collect()
    }

    /// Element orders of the classes, checked against the table, or derived from power maps.
    pub fn element_orders(&self) -> Result<Vec<u64>, TableError> {
        let class_data = self.class_data()?;
        let id = class_data.identity_column;
        let derived = match &self.meta.powermaps {
            Some(_) => Some(self.orders_from_powermaps(class_data.group_order, id)),
            None => None,
        };
        let Some(orders) = &self.meta.orders else {
            return derived.unwrap_or_else(|| {
                Err(TableError::InsufficientData("no element orders or power maps".into()))
            });
        };
        if orders[id] != 1 {
            return Err(TableError::InconsistentData("identity class does not have order 1".into()));
        }
        for (j, &o) in orders.iter().enumerate() {
            if j != id && o == 1 {
                return Err(TableError::InconsistentData(format!("class {} has order 1", j + 1)));
            }
            if class_data.centralizer_orders[j] % o != 0 {
                return Err(TableError::InconsistentData(format!(
                    "order {o} of class {} does not divide its centralizer order {}",
                    j + 1,
                    class_data.centralizer_orders[j]
                )));
            }
            if let Some(x) = column(&self.entries, j).find(|x| o % x.conductor() as u64 != 0) {
                return Err(TableError::InconsistentData(format!(
                    "value {x} in class {} of order {o} lies outside Q(E({o}))",
                    j + 1
                )));
            }
        }
        match derived {
            Some(Ok(d)) if &d != orders => Err(TableError::InconsistentData(format!(
                "power maps give orders {d:?}, stored orders are {orders:?}"
            ))),
            _ => Ok(orders.clone()),
        }
    }

    /// Canonical order: identity column first, rows by degree ascending and
    /// then lexicographically descending on approximate values.
    pub fn canonical(&self) -> CharacterTable {
        let k = self.k();
        let mut perm: Vec<usize> = (0..k).collect();
        if let Ok(id) = self.identity_column() {
            perm.remove(id);
            perm.insert(0, id);
        }
        let entries: Matrix = self
            .entries
            .iter()
            .map(|row| perm.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let mut rows: Vec<(Vec<(f64, f64)>, Vec<Cyclotomic>)> =
            entries.into_iter().map(|row| (row.iter().map(Cyclotomic::approx).collect(), row)).collect();
        rows.sort_by(|(ka, ra), (kb, rb)| {
            let da = ra[0].as_rational();
            let db = rb[0].as_rational();
            da.cmp(&db)
                .then_with(|| {
                    for (x, y) in ka.iter().zip(kb) {
                        let o = y.0.total_cmp(&x.0).then_with(|| y.1.total_cmp(&x.1));
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                    Ordering::Equal
                })
                .then_with(|| {
                    let sa: Vec<String> = ra.iter().map(ToString::to_string).collect();
                    let sb: Vec<String> = rb.iter().map(ToString::to_string).collect();
                    sa.cmp(&sb)
                })
        });
        CharacterTable {
            name: self.name.clone(),
            entries: rows.into_iter().map(|(_, r)| r).collect(),
            meta: self.meta.permuted(&perm),
        }
    }

    pub fn delete_row(&self, i: usize) -> PartialTable {
        let mut entries = self.entries.clone();
        entries.remove(i);
        PartialTable {
            name: format!("{} minus row {}", self.name, i + 1),
            entries,
            missing: Missing::Row,
            meta: self.meta.clone(),
        }
    }

    pub fn delete_column(&self, j: usize) -> PartialTable {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        PartialTable {
            name: format!("{} minus column {}", self.name, j + 1),
            entries,
            missing: Missing::Column,
            meta: self.meta.permuted(&(0..self.k()).filter(|&c| c != j).chain([j]).collect::<Vec<_>>()),
        }
    }
}

impl PartialTable {
    /// `k` is the size of the complete table.
    pub fn new(
        name: impl Into<String>,
        entries: Matrix,
        missing: Missing,
        k: usize,
        meta: ClassMeta,
    ) -> Result<Self, TableError> {
        if k == 0 {
            return Err(TableError::DimensionMismatch("k must be at least 1".into()));
        }
        let (rows, cols) = match missing {
            Missing::Row => (k - 1, k),
            Missing::Column => (k, k - 1),
        };
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(TableError::DimensionMismatch(format!(
                "a table missing a {} needs a {rows}x{cols} matrix",
                match missing {
                    Missing::Row => "row",
                    Missing::Column => "column",
                }
            )));
        }
        meta.check(k)?;
        Ok(PartialTable { name: name.into(), entries, missing, meta })
    }

    pub fn missing(&self) -> Missing {
        self.missing
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Size of the complete table.
    pub fn k(&self) -> usize {
        match self.missing {
            Missing::Row => self.entries.len() + 1,
            Missing::Column => self.entries.len(),
        }
    }

    /// Rows whose complex conjugate is not among the given rows.
    pub fn conjugate_closure_gap(&self) -> Result<ClosureGap, TableError> {
        if self.missing != Missing::Row {
            return Err(TableError::MalformedInput("closure check needs a table missing a row".into()));
        }
        let mut counts: HashMap<&[Cyclotomic], usize> = HashMap::new();
        for row in &self.entries {
            *counts.entry(row.as_slice()).or_default() += 1;
        }
        let mut seen: HashMap<&[Cyclotomic], usize> = HashMap::new();
        let mut unmatched = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            let conj: Vec<Cyclotomic> = row.iter().map(Cyclotomic::conjugate).collect();
            if conj == *row {
                continue;
            }
            let available = counts.get(conj.as_slice()).copied().unwrap_or(0);
            let used = seen.entry(row.as_slice()).or_default();
            *used += 1;
            if *used > available {
                unmatched.push(i);
            }
        }
        match unmatched.as_slice() {
            [] => Ok(ClosureGap::Closed),
            [i] => Ok(ClosureGap::Unmatched(*i)),
            _ => Err(TableError::MalformedInput(format!(
                "{} rows lack their complex conjugate",
                unmatched.len()
            ))),
        }
    }

    /// Delete duplicate column `r` of a table missing a row, giving the table of G/N.
    pub fn quotient_table(&self, r: usize) -> Result<CharacterTable, TableError> {
        if self.missing != Missing::Row {
            return Err(TableError::MalformedInput("quotient needs a table missing a row".into()));
        }
        let k = self.k();
        if r >= k {
            return Err(TableError::NotDuplicate { column: r });
        }
        let id = identify_identity_column(&self.entries)?[0];
        if r == id || column(&self.entries, r).ne(column(&self.entries, id)) {
            return Err(TableError::NotDuplicate { column: r });
        }
        let entries: Matrix = self
            .entries
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != r).map(|(_, x)| x.clone()).collect())
            .collect();
        let reindex = |j: usize| if j > r { j - 1 } else { j };
        let project = |j: usize| reindex(if j == r { id } else { j });
        let powermaps = self.meta.powermaps.as_ref().map(|maps| {
            maps.iter()
                .map(|(p, map)| {
                    let remapped = (0..k).filter(|&j| j != r).map(|j| project(map[j])).collect();
                    (*p, remapped)
                })
                .collect()
        });
        let mut quotient = CharacterTable::new(format!("{} / N", self.name), entries)?
            .with_meta(ClassMeta { orders: None, powermaps })?;
        if quotient.meta.powermaps.is_some() {
            if let Ok(orders) = quotient.element_orders() {
                quotient.meta.orders = Some(orders);
            }
        }
        Ok(quotient)
    }

    /// The given column or row sums used by the row solver.
    pub fn gamma(&self, s: usize, t: usize) -> Cyclotomic {
        self.entries.iter().map(|row| &row[s] * &row[t].conjugate()).sum()
    }
}

/// Rational integer value of a list of entries, if all are integers.
pub fn integer_vector(v: &[Cyclotomic]) -> Option<Vec<BigInt>> {
    v.iter().map(Cyclotomic::as_integer).collect()
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn z(v: i64) -> Cyclotomic {
        Cyclotomic::from_integer(v)
    }

    fn int_matrix(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| z(v)).collect()).collect()
    }

    #[test]
    fn group_orders() {
        let m9 = fixtures::corpus_table("M9");
        assert_eq!(m9.group_order().unwrap(), 72);
        let trivial = CharacterTable::new("1", int_matrix(&[&[1]])).unwrap();
        assert_eq!(trivial.group_order().unwrap(), 1);
        let c2 = CharacterTable::new("C2", int_matrix(&[&[1, 1], &[1, -1]])).unwrap();
        assert_eq!(c2.group_order().unwrap(), 2);
    }

    #[test]
    fn centralizers() {
        let m9 = fixtures::corpus_table("M9");
        assert_eq!(m9.centralizer_orders().unwrap(), vec![72, 9, 8, 4, 4, 4]);
        let i1 = fixtures::puzzle_table("puzzle_i1");
        assert_eq!(i1.centralizer_orders().unwrap(), vec![24, 4, 4, 4, 12, 8]);
        let trivial = CharacterTable::new("1", int_matrix(&[&[1]])).unwrap();
        assert_eq!(trivial.centralizer_orders().unwrap(), vec![1]);
        let data = m9.class_data().unwrap();
        assert_eq!(data.class_sizes, vec![1, 8, 9, 18, 18, 18]);
    }

    #[test]
    fn identity_column_detection() {
        let m9 = fixtures::corpus_table("M9");
        assert_eq!(identify_identity_column(m9.entries()).unwrap(), vec![0]);
        let partial = m9.delete_row(5);
        assert_eq!(identify_identity_column(partial.entries()).unwrap(), vec![0, 1]);
        assert_eq!(identify_identity_column(&int_matrix(&[&[1]])).unwrap(), vec![0]);
        assert_eq!(
            identify_identity_column(&int_matrix(&[&[1, -1], &[-2, 1]])),
            Err(TableError::NoIdentityColumn)
        );
        // dominance with irrational entries: (1+sqrt5)/2 exceeds 1
        let a5 = fixtures::corpus_table("A5");
        assert_eq!(identify_identity_column(a5.entries()).unwrap(), vec![0]);
    }

    #[test]
    fn element_orders_from_powermaps() {
        let m9 = fixtures::corpus_table("M9");
        let mut bare = m9.clone();
        bare.meta.orders = None;
        assert_eq!(bare.element_orders().unwrap(), vec![1, 3, 2, 4, 4, 4]);
        let c2 = CharacterTable::new("C2", int_matrix(&[&[1, 1], &[1, -1]]))
            .unwrap()
            .with_meta(ClassMeta { orders: Some(vec![1, 2]), powermaps: None })
            .unwrap();
        assert_eq!(c2.element_orders().unwrap(), vec![1, 2]);
        let none = CharacterTable::new("C2", int_matrix(&[&[1, 1], &[1, -1]])).unwrap();
        assert!(matches!(none.element_orders(), Err(TableError::InsufficientData(_))));
        let mut wrong = m9.clone();
        wrong.meta.orders = Some(vec![1, 3, 2, 4, 4, 2]);
        assert!(matches!(wrong.element_orders(), Err(TableError::InconsistentData(_))));
        let mut bad_div = m9.clone();
        bad_div.meta.orders = Some(vec![1, 3, 2, 4, 4, 8]);
        bad_div.meta.powermaps = None;
        assert!(matches!(bad_div.element_orders(), Err(TableError::InconsistentData(_))));
    }

    #[test]
    fn stored_orders_agree_with_powermaps_on_fixtures() {
        for t in fixtures::corpus() {
            let mut bare = t.clone();
            bare.meta.orders = None;
            assert_eq!(bare.element_orders().unwrap(), t.element_orders().unwrap(), "{}", t.name);
        }
    }

    #[test]
    fn quotient_of_m9_partial_is_q8() {
        let m9 = fixtures::corpus_table("M9");
        let partial = m9.delete_row(5);
        let q = partial.quotient_table(1).unwrap();
        assert_eq!(q.k(), 5);
        assert_eq!(q.group_order().unwrap(), 8);
        assert_eq!(q.element_orders().unwrap(), vec![1, 2, 4, 4, 4]);
        assert!(crate::checks::validate(&q).passed);
        assert_eq!(partial.quotient_table(0), Err(TableError::NotDuplicate { column: 0 }));
        assert_eq!(partial.quotient_table(2), Err(TableError::NotDuplicate { column: 2 }));
    }

    #[test]
    fn closure_gap() {
        let i = Cyclotomic::e(4);
        let rows = vec![
            vec![z(1), z(1), z(1), z(1)],
            vec![z(1), z(-1), i.clone(), -&i],
            vec![z(1), z(1), z(-1), z(-1)],
        ];
        let p = PartialTable::new("C4", rows, Missing::Row, 4, ClassMeta::default()).unwrap();
        assert_eq!(p.conjugate_closure_gap().unwrap(), ClosureGap::Unmatched(1));
        let m9 = fixtures::corpus_table("M9").delete_row(5);
        assert_eq!(m9.conjugate_closure_gap().unwrap(), ClosureGap::Closed);
        let one = PartialTable::new("C2", int_matrix(&[&[1, 1]]), Missing::Row, 2, ClassMeta::default()).unwrap();
        assert_eq!(one.conjugate_closure_gap().unwrap(), ClosureGap::Closed);
        let rows = vec![vec![z(1), z(1), z(1)], vec![z(1), Cyclotomic::e(3), Cyclotomic::e(3)], vec![z(1), i.clone(), i]];
        let two = PartialTable::new("bad", rows, Missing::Row, 3, ClassMeta::default());
        assert!(matches!(two, Err(TableError::DimensionMismatch(_))));
    }

    #[test]
    fn class_sizes_sum_on_fixtures() {
        for t in fixtures::corpus() {
            let data = t.class_data().unwrap();
            assert_eq!(data.class_sizes.iter().sum::<u64>(), data.group_order, "{}", t.name);
            assert_eq!(data.class_sizes[data.identity_column], 1);
        }
    }

    #[test]
    fn fixtures_are_canonical() {
        for t in fixtures::corpus() {
            assert_eq!(t.canonical(), t, "{}", t.name);
        }
    }

    #[test]
    fn helpers() {
        assert_eq!(p_part(72, 2), 8);
        assert_eq!(p_part(72, 3), 9);
        assert_eq!(p_part(72, 5), 1);
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }
}
