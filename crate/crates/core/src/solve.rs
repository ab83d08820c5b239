//! Completing a character table from which one row or one column was deleted.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::checks::{prime_power_base, sylow2_abelianization_index, sylow_is_cyclic, validate, Sylow2Index, ValidationReport};
use crate::cyclo::{CycloError, Cyclotomic};
use crate::table::{
    identify_identity_column, is_all_ones, p_part, prime_divisors, CharacterTable, ClosureGap, Matrix, Missing,
    PartialTable, TableError,
};

/// Which branch of the two-class analysis fixed the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// An odd Sylow subgroup of the quotient is not cyclic.
    #[serde(rename = "2.1")]
    OddNonCyclic,
    #[serde(rename = "cyclicSylow2")]
    CyclicSylow2,
    /// `|P:P'| > 4`.
    #[serde(rename = "2.2")]
    LargeAbelianization,
    /// `|P:P'| = 4` and `|G/N|_2 = 4`.
    #[serde(rename = "2.3-small")]
    SmallSylow,
    /// `|P:P'| = 4` and `|G/N|_2 >= 8`.
    #[serde(rename = "2.3-large")]
    LargeSylow,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::OddNonCyclic => "2.1",
            Branch::CyclicSylow2 => "cyclicSylow2",
            Branch::LargeAbelianization => "2.2",
            Branch::SmallSylow => "2.3-small",
            Branch::LargeSylow => "2.3-large",
        })
    }
}

/// How the vector was obtained. Class and row indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum CaseTrace {
    /// The table has a single class.
    Degenerate,
    ColumnGeneric,
    /// Two trivial-looking rows; the answer is `(1, -1, 0, ..., 0)` up to row order.
    ColumnTwoOnesSpecial { rows: (usize, usize) },
    RowTrivialMissing,
    RowConjugateShortcut { row: usize },
    RowCase1 {
        s: usize,
        t: usize,
        gamma_1s: Cyclotomic,
        gamma_1t: Cyclotomic,
        gamma_st: Cyclotomic,
        d_squared: u64,
    },
    RowCase2 {
        r: usize,
        quotient_order: u64,
        branch: Branch,
        p: Option<u64>,
        e: u64,
        n_order: u64,
        d: u64,
        sylow2_index: Option<Sylow2Index>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub vector: Vec<Cyclotomic>,
    pub trace: CaseTrace,
    pub validation: ValidationReport,
    #[serde(skip)]
    pub completed: CharacterTable,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveHints {
    /// `|P:P'|` for a Sylow 2-subgroup P of the quotient by the two-class kernel.
    pub sylow2_abelianization: Option<u64>,
}

/// A completion the solver could not rule out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub branch: Branch,
    /// The value of `|P:P'|` this reading assumes.
    pub assumes: String,
    pub d: u64,
    pub vector: Vec<Cyclotomic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("not one row or column short of a character table: {0}")]
    InvalidPartial(String),
    #[error("|P:P'| is undecided; {} completions remain (supply a hint)", candidates.len())]
    NeedsHint { candidates: Vec<Candidate> },
    #[error("insufficient class data: {0}")]
    InsufficientData(String),
    #[error("the given columns are linearly dependent")]
    RankDeficient,
    #[error("the orthogonal complement does not give a character column: {0}")]
    NotCompletable(String),
    #[error("{0} rows look trivial; at most two can")]
    MoreThanTwoOnesRows(usize),
}

impl From<TableError> for SolveError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::InsufficientData(m) => SolveError::InsufficientData(m),
            other => SolveError::InvalidPartial(other.to_string()),
        }
    }
}

impl From<CycloError> for SolveError {
    fn from(e: CycloError) -> Self {
        SolveError::InvalidPartial(e.to_string())
    }
}

/// Exact integer square root, `None` if `n` is not a square.
pub fn int_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// `Σ_i c_is · conj(c_it)` over the given rows.
pub fn gamma(c: &PartialTable, s: usize, t: usize) -> Cyclotomic {
    c.gamma(s, t)
}

fn positive_u64(x: &Cyclotomic) -> Option<u64> {
    x.as_integer().and_then(|v| v.to_u64()).filter(|&v| v > 0)
}

fn invalid(msg: impl Into<String>) -> SolveError {
    SolveError::InvalidPartial(msg.into())
}

fn with_row(c: &PartialTable, row: &[Cyclotomic]) -> Result<CharacterTable, TableError> {
    let mut entries = c.entries().clone();
    entries.push(row.to_vec());
    CharacterTable::new(c.name.clone(), entries)?.with_meta(c.meta.clone())
}

fn with_column(c: &PartialTable, col: &[Cyclotomic]) -> Result<CharacterTable, TableError> {
    let entries: Matrix = c
        .entries()
        .iter()
        .zip(col)
        .map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect())
        .collect();
    CharacterTable::new(c.name.clone(), entries)?.with_meta(c.meta.clone())
}

fn finish(completed: CharacterTable, vector: Vec<Cyclotomic>, trace: CaseTrace) -> Result<SolveOutcome, ValidationReport> {
    let validation = validate(&completed);
    if validation.passed {
        Ok(SolveOutcome { vector, trace, validation, completed })
    } else {
        Err(validation)
    }
}

fn describe(report: &ValidationReport) -> String {
    report
        .violations
        .first()
        .map_or_else(|| "validation failed".into(), |v| format!("{} violated at {}", v.rule, v.location))
}

/// Nullspace of `a` (rows are equations) when it is one-dimensional.
fn null_vector(mut a: Vec<Vec<Cyclotomic>>, unknowns: usize) -> Result<Vec<Cyclotomic>, SolveError> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].inverse()?;
        a[row] = a[row].iter().map(|x| x * &inv).collect();
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    if pivots.len() + 1 != unknowns {
        return Err(SolveError::RankDeficient);
    }
    let free = (0..unknowns).find(|c| !pivots.contains(c)).expect("one free column");
    let mut w = vec![Cyclotomic::zero(); unknowns];
    w[free] = Cyclotomic::one();
    for (i, &p) in pivots.iter().enumerate() {
        w[p] = -&a[i][free];
    }
    Ok(w)
}

/// Recover the deleted column of a table missing one class.
pub fn solve_missing_column(c: &PartialTable) -> Result<SolveOutcome, SolveError> {
    if c.missing() != Missing::Column {
        return Err(invalid("the table is missing a row, not a column"));
    }
    let k = c.k();
    if k == 1 {
        let vector = vec![Cyclotomic::one()];
        let completed = with_column(c, &vector)?;
        return finish(completed, vector, CaseTrace::Degenerate)
            .map_err(|r| SolveError::NotCompletable(describe(&r)));
    }
    let rows = c.entries();
    let equations: Vec<Vec<Cyclotomic>> = (0..k - 1).map(|s| rows.iter().map(|r| r[s].clone()).collect()).collect();
    let w = null_vector(equations, k)?;

    let ones: Vec<usize> = (0..k).filter(|&i| is_all_ones(&rows[i])).collect();
    let (vector, trace) = match ones[..] {
        [] => return Err(SolveError::NotCompletable("no row is trivial on the given classes".into())),
        [i] => {
            if w[i].is_zero() {
                return Err(SolveError::NotCompletable(format!("the complement vanishes on the trivial row {}", i + 1)));
            }
            let scale = w[i].inverse()?;
            let vector: Vec<Cyclotomic> = w.iter().map(|x| (x * &scale).conjugate()).collect();
            (vector, CaseTrace::ColumnGeneric)
        }
        [i, j] => {
            let proportional =
                (0..k).all(|l| if l == i { true } else if l == j { (&w[j] + &w[i]).is_zero() } else { w[l].is_zero() });
            if w[i].is_zero() || !proportional {
                return Err(SolveError::NotCompletable(
                    "two trivial-looking rows but the complement is not their difference".into(),
                ));
            }
            let mut vector = vec![Cyclotomic::zero(); k];
            vector[i] = Cyclotomic::one();
            vector[j] = Cyclotomic::from_integer(-1);
            (vector, CaseTrace::ColumnTwoOnesSpecial { rows: (i + 1, j + 1) })
        }
        _ => return Err(SolveError::MoreThanTwoOnesRows(ones.len())),
    };

    if let Some(bad) = vector.iter().position(|x| !x.is_algebraic_integer()) {
        return Err(SolveError::NotCompletable(format!("entry {} = {} is not an algebraic integer", bad + 1, vector[bad])));
    }
    let norm: Cyclotomic = vector.iter().map(Cyclotomic::abs_squared).sum();
    let Some(norm) = positive_u64(&norm) else {
        return Err(SolveError::NotCompletable(format!("column norm {norm} is not a positive integer")));
    };
    let completed = with_column(c, &vector).map_err(|e| SolveError::NotCompletable(e.to_string()))?;
    let order = completed.group_order().map_err(|e| SolveError::NotCompletable(e.to_string()))?;
    if order % norm != 0 {
        return Err(SolveError::NotCompletable(format!("column norm {norm} does not divide |G| = {order}")));
    }
    finish(completed, vector, trace).map_err(|r| SolveError::NotCompletable(describe(&r)))
}

/// Recover the deleted row of a table missing one character.
pub fn solve_missing_row(c: &PartialTable, hints: SolveHints) -> Result<SolveOutcome, SolveError> {
    if c.missing() != Missing::Row {
        return Err(invalid("the table is missing a column, not a row"));
    }
    let k = c.k();
    let rows = c.entries();
    let fail = |r: ValidationReport| invalid(describe(&r));

    if k == 1 || !rows.iter().any(|r| is_all_ones(r)) {
        let vector = vec![Cyclotomic::one(); k];
        let trace = if k == 1 { CaseTrace::Degenerate } else { CaseTrace::RowTrivialMissing };
        return finish(with_row(c, &vector)?, vector, trace).map_err(fail);
    }

    if let ClosureGap::Unmatched(i) = c.conjugate_closure_gap()? {
        let vector: Vec<Cyclotomic> = rows[i].iter().map(Cyclotomic::conjugate).collect();
        return finish(with_row(c, &vector)?, vector, CaseTrace::RowConjugateShortcut { row: i + 1 }).map_err(fail);
    }

    let ids = identify_identity_column(rows)?;
    let id = ids[0];
    let others: Vec<usize> = (0..k).filter(|&j| j != id).collect();
    let g1: Vec<Cyclotomic> = (0..k).map(|s| c.gamma(id, s)).collect();

    // Case 1: some gamma_st with s, t away from the identity is nonzero.
    let mut first = None;
    for (a, &s) in others.iter().enumerate() {
        for &t in &others[a + 1..] {
            let gst = c.gamma(s, t);
            if gst.is_zero() {
                continue;
            }
            let d2 = -(&g1[s].conjugate() * &g1[t]).div(&gst)?;
            match &first {
                None => first = Some((s, t, gst, d2)),
                Some((s0, t0, _, d0)) if *d0 != d2 => {
                    return Err(invalid(format!(
                        "d^2 is {d0} from classes ({},{}) but {d2} from ({},{})",
                        s0 + 1,
                        t0 + 1,
                        s + 1,
                        t + 1
                    )))
                }
                Some(_) => {}
            }
        }
    }
    if let Some((s, t, gst, d2)) = first {
        if ids.len() > 1 {
            return Err(invalid("several identity candidates although the pair sums do not all vanish"));
        }
        let d2v = positive_u64(&d2).ok_or_else(|| invalid(format!("d^2 = {d2} is not a positive integer")))?;
        let d = int_sqrt(d2v).ok_or_else(|| invalid(format!("d^2 = {d2v} is not a square")))?;
        let vector = row_from_gamma(k, id, d, &g1, |_| true)?;
        let trace = CaseTrace::RowCase1 {
            s: s + 1,
            t: t + 1,
            gamma_1s: g1[s].clone(),
            gamma_1t: g1[t].clone(),
            gamma_st: gst,
            d_squared: d2v,
        };
        return finish(with_row(c, &vector)?, vector, trace).map_err(fail);
    }

    // Case 2: the missing character lives on the identity and one class r.
    let support: Vec<usize> = others.iter().copied().filter(|&s| !g1[s].is_zero()).collect();
    let r = match support[..] {
        [r] => r,
        [] => return Err(invalid("every class sum with the identity vanishes")),
        _ => return Err(invalid(format!("{} classes pair nontrivially with the identity", support.len()))),
    };
    let h = positive_u64(&g1[id]).ok_or_else(|| invalid("the sum of squared degrees is not a positive integer"))?;
    let quotient = c.quotient_table(r)?;
    if quotient.group_order()? != h {
        return Err(invalid("the quotient table has the wrong order"));
    }

    let plan = case2_plan(&quotient, h, hints)?;
    let mut survivors = Vec::new();
    for option in &plan.options {
        let vector = row_from_gamma(k, id, option.d, &g1, |s| s == r);
        let checked = vector.map_err(|e| e.to_string()).and_then(|v| {
            let n = case2_normal_order(h, option)?;
            let completed = with_row(c, &v).map_err(|e| e.to_string())?;
            let report = validate(&completed);
            if report.passed {
                Ok((v, n, completed, report))
            } else {
                Err(describe(&report))
            }
        });
        match checked {
            Ok(ok) => survivors.push((option, ok)),
            Err(reason) if plan.options.len() == 1 => return Err(invalid(reason)),
            Err(_) => {}
        }
    }
    match survivors.len() {
        0 => Err(invalid("no reading of |P:P'| gives a consistent completion")),
        1 => {
            let (option, (vector, n, completed, validation)) = survivors.pop().expect("one survivor");
            let trace = CaseTrace::RowCase2 {
                r: r + 1,
                quotient_order: h,
                branch: option.branch,
                p: option.p.or_else(|| prime_power_base(n)),
                e: option.e,
                n_order: n,
                d: option.d,
                sylow2_index: plan.index,
            };
            Ok(SolveOutcome { vector, trace, validation, completed })
        }
        _ => Err(SolveError::NeedsHint {
            candidates: survivors
                .into_iter()
                .map(|(o, (vector, ..))| Candidate { branch: o.branch, assumes: o.assumes.clone(), d: o.d, vector })
                .collect(),
        }),
    }
}

/// `χ(1) = d` and `χ(g_s) = -conj(γ_1s)/d` on the classes selected by `keep`, zero elsewhere.
fn row_from_gamma(
    k: usize,
    id: usize,
    d: u64,
    g1: &[Cyclotomic],
    keep: impl Fn(usize) -> bool,
) -> Result<Vec<Cyclotomic>, SolveError> {
    let d_r = BigRational::from_integer(BigInt::from(d));
    (0..k)
        .map(|s| {
            if s == id {
                Ok(Cyclotomic::from_integer(d as i64))
            } else if keep(s) {
                Ok((-g1[s].conjugate()).div_rational(&d_r)?)
            } else {
                Ok(Cyclotomic::zero())
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Case2Option {
    branch: Branch,
    p: Option<u64>,
    e: u64,
    d: u64,
    assumes: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Case2Plan {
    index: Option<Sylow2Index>,
    options: Vec<Case2Option>,
}

/// Sylow facts about the quotient that steer the two-class analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
struct QuotientFacts {
    order: u64,
    odd_noncyclic: bool,
    sylow2_cyclic: bool,
    index: Option<Sylow2Index>,
}

fn case2_plan(quotient: &CharacterTable, h: u64, hints: SolveHints) -> Result<Case2Plan, SolveError> {
    let mut odd_noncyclic = false;
    for q in prime_divisors(h).into_iter().filter(|&q| q != 2) {
        if !sylow_is_cyclic(quotient, q)? {
            odd_noncyclic = true;
            break;
        }
    }
    let sylow2_cyclic = !odd_noncyclic && sylow_is_cyclic(quotient, 2)?;
    let index = if odd_noncyclic || sylow2_cyclic {
        None
    } else {
        Some(sylow2_abelianization_index(quotient, hints.sylow2_abelianization)?)
    };
    plan_from_facts(&QuotientFacts { order: h, odd_noncyclic, sylow2_cyclic, index })
}

fn plan_from_facts(f: &QuotientFacts) -> Result<Case2Plan, SolveError> {
    let h = f.order;
    let two = p_part(h, 2);
    let one = |o: Case2Option| Ok(Case2Plan { index: f.index.clone(), options: vec![o] });
    if f.odd_noncyclic {
        let p = prime_divisors(h)
            .into_iter()
            .find(|&p| {
                let part = p_part(h, p);
                part > h / part
            })
            .ok_or_else(|| invalid(format!("no prime p has |G/N|_p > |G/N|_p' for |G/N| = {h}")))?;
        let e = int_sqrt(p_part(h, p)).ok_or_else(|| invalid(format!("|G/N|_{p} is not a square")))?;
        return one(Case2Option { branch: Branch::OddNonCyclic, p: Some(p), e, d: h / e, assumes: String::new() });
    }
    if f.sylow2_cyclic {
        return one(Case2Option { branch: Branch::CyclicSylow2, p: None, e: 1, d: h, assumes: String::new() });
    }
    let large = || {
        int_sqrt(two).map(|e| Case2Option {
            branch: Branch::LargeAbelianization,
            p: Some(2),
            e,
            d: h / e,
            assumes: "|P:P'| > 4".into(),
        })
    };
    let four = || {
        let assumes = "|P:P'| = 4".to_string();
        if two == 4 {
            Case2Option { branch: Branch::SmallSylow, p: Some(2), e: 2, d: h / 2, assumes }
        } else {
            Case2Option { branch: Branch::LargeSylow, p: None, e: 1, d: h, assumes }
        }
    };
    match f.index.as_ref().expect("sylow 2 index is computed for non-cyclic Sylow 2-subgroups") {
        Sylow2Index::Exact { index, .. } if *index > 4 => {
            one(large().ok_or_else(|| invalid(format!("|G/N|_2 = {two} is not a square")))?)
        }
        Sylow2Index::GreaterThanFour { .. } => {
            one(large().ok_or_else(|| invalid(format!("|G/N|_2 = {two} is not a square")))?)
        }
        Sylow2Index::Exact { index: 4, .. } => one(four()),
        Sylow2Index::Exact { index, .. } => {
            Err(invalid(format!("|P:P'| = {index} is impossible for a non-cyclic Sylow 2-subgroup")))
        }
        Sylow2Index::Undecidable => {
            Ok(Case2Plan { index: f.index.clone(), options: large().into_iter().chain([four()]).collect() })
        }
    }
}

/// `|N| = 1 + d²/|G/N|`, which must be a power of `p` (a prime power when `p` is
/// open) with `|N| - 1` dividing `|G/N|`.
fn case2_normal_order(h: u64, o: &Case2Option) -> Result<u64, String> {
    let d2 = o.d * o.d;
    if d2 % h != 0 {
        return Err(format!("d^2 = {d2} is not a multiple of |G/N| = {h}"));
    }
    let n = 1 + d2 / h;
    let base = prime_power_base(n).ok_or_else(|| format!("|N| = {n} is not a prime power"))?;
    if o.p.is_some_and(|p| p != base) {
        return Err(format!("|N| = {n} is not a power of {}", o.p.unwrap_or_default()));
    }
    if h % (n - 1) != 0 {
        return Err(format!("|N| - 1 = {} does not divide |G/N| = {h}", n - 1));
    }
    Ok(n)
}

impl SolveOutcome {
    /// `d = χ(1)` for row outcomes, read at the identity class of the completed table.
    pub fn degree(&self) -> Option<BigInt> {
        let id = self.completed.identity_column().ok()?;
        self.vector.get(id)?.as_integer().filter(|d| d.is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::Strategy;
    use crate::fixtures;

    fn ints(v: &[i64]) -> Vec<Cyclotomic> {
        v.iter().map(|&x| Cyclotomic::from_integer(x)).collect()
    }

    #[test]
    fn gamma_on_m9_partial() {
        let p = fixtures::puzzle("m9_partial").into_partial().unwrap();
        assert_eq!(gamma(&p, 0, 0), Cyclotomic::from_integer(8));
        assert_eq!(gamma(&p, 0, 1), Cyclotomic::from_integer(8));
        assert_eq!(gamma(&p, 1, 2), Cyclotomic::zero());
    }

    #[test]
    fn m9_row_is_the_degree_eight_character() {
        let p = fixtures::puzzle("m9_partial").into_partial().unwrap();
        let out = solve_missing_row(&p, SolveHints::default()).unwrap();
        assert_eq!(out.vector, ints(&[8, -1, 0, 0, 0, 0]));
        match out.trace.clone() {
            CaseTrace::RowCase2 { r, quotient_order, branch, p, e, n_order, d, sylow2_index } => {
                assert_eq!((r, quotient_order, branch, e, n_order, d), (2, 8, Branch::LargeSylow, 1, 9, 8));
                assert_eq!(p, Some(3));
                assert_eq!(sylow2_index, Some(Sylow2Index::Exact { index: 4, strategy: Strategy::S1 }));
            }
            other => panic!("{other:?}"),
        }
        assert!(out.validation.passed);
        assert_ne!(out.degree(), Some(4.into()));
    }

    #[test]
    fn s3_sign_row_by_case_one() {
        let s3 = fixtures::corpus_table("S3");
        let sign = (0..3).find(|&i| s3.row(i).iter().any(|x| *x == Cyclotomic::from_integer(-1)) && s3.row(i)[0].is_one());
        let i = sign.unwrap();
        let out = solve_missing_row(&s3.delete_row(i), SolveHints::default()).unwrap();
        assert_eq!(out.vector, s3.row(i));
        match out.trace {
            CaseTrace::RowCase1 { d_squared, gamma_st, .. } => {
                assert_eq!(d_squared, 1);
                assert_eq!(gamma_st, Cyclotomic::one());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn s3_sign_row_trace_values() {
        let text = r#"{"name": "S3 minus sign", "rows": [["1","1","1"],["2","-1","0"]]}"#;
        let p = crate::io::parse(text).unwrap().into_partial().unwrap();
        let out = solve_missing_row(&p, SolveHints::default()).unwrap();
        assert_eq!(out.vector, ints(&[1, 1, -1]));
        assert_eq!(
            out.trace,
            CaseTrace::RowCase1 {
                s: 2,
                t: 3,
                gamma_1s: Cyclotomic::from_integer(-1),
                gamma_1t: Cyclotomic::one(),
                gamma_st: Cyclotomic::one(),
                d_squared: 1,
            }
        );
    }

    #[test]
    fn conjugate_shortcut_on_c4() {
        let c4 = fixtures::corpus_table("C4");
        let i = (0..4).find(|&i| c4.row(i)[1] == -Cyclotomic::e(4)).unwrap();
        let out = solve_missing_row(&c4.delete_row(i), SolveHints::default()).unwrap();
        assert_eq!(out.vector, c4.row(i));
        assert!(matches!(out.trace, CaseTrace::RowConjugateShortcut { .. }));
    }

    #[test]
    fn trivial_row_and_degenerate_cases() {
        let text = r#"{"name": "C2 minus trivial", "rows": [["1","-1"]]}"#;
        let p = crate::io::parse(text).unwrap().into_partial().unwrap();
        let out = solve_missing_row(&p, SolveHints::default()).unwrap();
        assert_eq!(out.vector, ints(&[1, 1]));
        assert_eq!(out.trace, CaseTrace::RowTrivialMissing);

        let empty = crate::io::parse(r#"{"name": "1", "missing": "row", "rows": []}"#).unwrap().into_partial().unwrap();
        let out = solve_missing_row(&empty, SolveHints::default()).unwrap();
        assert_eq!((out.vector, out.trace), (ints(&[1]), CaseTrace::Degenerate));

        let col = crate::io::parse(r#"{"name": "1", "missing": "column", "rows": [[]]}"#).unwrap().into_partial().unwrap();
        let out = solve_missing_column(&col).unwrap();
        assert_eq!((out.vector, out.trace), (ints(&[1]), CaseTrace::Degenerate));
    }

    #[test]
    fn column_special_case_on_s3() {
        let p = fixtures::puzzle("s3_minus_transposition").into_partial().unwrap();
        let out = solve_missing_column(&p).unwrap();
        assert_eq!(out.vector, ints(&[1, -1, 0]));
        assert_eq!(out.trace, CaseTrace::ColumnTwoOnesSpecial { rows: (1, 2) });
    }

    #[test]
    fn m9_column_two() {
        let m9 = fixtures::corpus_table("M9");
        let out = solve_missing_column(&m9.delete_column(1)).unwrap();
        assert_eq!(out.vector, ints(&[1, 1, 1, 1, 2, -1]));
        assert_eq!(out.trace, CaseTrace::ColumnGeneric);
    }

    #[test]
    fn rank_deficient_columns() {
        let text = r#"{"name": "x", "missing": "column", "rows": [["1","1"],["1","1"],["1","1"]]}"#;
        let p = crate::io::parse(text).unwrap().into_partial().unwrap();
        assert_eq!(solve_missing_column(&p), Err(SolveError::RankDeficient));
    }

    #[test]
    fn undecided_index_offers_both_completions() {
        let p = fixtures::puzzle("hint_gl23").into_partial().unwrap();
        match solve_missing_row(&p, SolveHints::default()) {
            Err(SolveError::NeedsHint { candidates }) => {
                let ds: Vec<(Branch, u64)> = candidates.iter().map(|c| (c.branch, c.d)).collect();
                assert_eq!(ds, vec![(Branch::LargeAbelianization, 12), (Branch::LargeSylow, 48)]);
            }
            other => panic!("{other:?}"),
        }
        let four = solve_missing_row(&p, SolveHints { sylow2_abelianization: Some(4) }).unwrap();
        assert_eq!(four.vector[0], Cyclotomic::from_integer(48));
        assert_eq!(four.vector[1], Cyclotomic::from_integer(-1));
        let eight = solve_missing_row(&p, SolveHints { sylow2_abelianization: Some(8) }).unwrap();
        assert_eq!(eight.vector[..2], ints(&[12, -4])[..]);
        match eight.trace {
            CaseTrace::RowCase2 { n_order, p, .. } => assert_eq!((n_order, p), (4, Some(2))),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            solve_missing_row(&p, SolveHints { sylow2_abelianization: Some(2) }),
            Err(SolveError::InvalidPartial(_))
        ));
    }

    #[test]
    fn missing_metadata_is_reported() {
        let m9 = fixtures::corpus_table("M9");
        let mut p = m9.delete_row(5);
        p.meta = Default::default();
        assert!(matches!(solve_missing_row(&p, SolveHints::default()), Err(SolveError::InsufficientData(_))));
    }

    #[test]
    fn branch_arithmetic() {
        let facts = |order, odd_noncyclic, sylow2_cyclic, index| QuotientFacts { order, odd_noncyclic, sylow2_cyclic, index };
        let plan = plan_from_facts(&facts(72, true, false, None)).unwrap();
        assert_eq!(plan.options[0].d, 24);
        assert_eq!((plan.options[0].p, plan.options[0].e), (Some(3), 3));
        assert_eq!(case2_normal_order(72, &plan.options[0]), Ok(9));
        assert!(plan_from_facts(&facts(24, true, false, None)).is_err());

        let plan = plan_from_facts(&facts(3, false, true, None)).unwrap();
        assert_eq!((plan.options[0].branch, plan.options[0].d), (Branch::CyclicSylow2, 3));
        assert_eq!(case2_normal_order(3, &plan.options[0]), Ok(4));

        let gt4 = Some(Sylow2Index::GreaterThanFour { lower_bound: 16, strategy: Strategy::S2 });
        let plan = plan_from_facts(&facts(16 * 15, false, false, gt4)).unwrap();
        assert_eq!((plan.options[0].branch, plan.options[0].d), (Branch::LargeAbelianization, 60));
        assert_eq!(case2_normal_order(240, &plan.options[0]), Ok(16));

        let four = Some(Sylow2Index::Exact { index: 4, strategy: Strategy::S1 });
        let plan = plan_from_facts(&facts(4, false, false, four)).unwrap();
        assert_eq!((plan.options[0].branch, plan.options[0].d), (Branch::SmallSylow, 2));
        assert_eq!(case2_normal_order(4, &plan.options[0]), Ok(2));
    }

    #[test]
    fn int_sqrt_values() {
        assert_eq!(int_sqrt(81), Some(9));
        assert_eq!(int_sqrt(8), None);
        assert_eq!(int_sqrt(1), Some(1));
        assert_eq!(int_sqrt(u64::MAX), None);
    }

    #[test]
    fn malformed_row_partials() {
        let text = r#"{"name": "x", "rows": [["1","1","1"],["1","1","1"]]}"#;
        let p = crate::io::parse(text).unwrap().into_partial().unwrap();
        assert!(matches!(solve_missing_row(&p, SolveHints::default()), Err(SolveError::InvalidPartial(_))));
        let wrong = fixtures::puzzle("s3_minus_transposition").into_partial().unwrap();
        assert!(solve_missing_row(&wrong, SolveHints::default()).is_err());
    }
}
