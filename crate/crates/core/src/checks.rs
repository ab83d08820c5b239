//! Formal table validation, Sylow queries on a table, and pseudo-table detection.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::table::{
    identify_identity_column, is_all_ones, p_part, prime_divisors, CharacterTable, TableError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    ColumnOrthogonality,
    RowOrthogonality,
    Degree,
    TrivialRow,
    Integrality,
    CentralizerOrder,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::ColumnOrthogonality => "column-orthogonality",
            Rule::RowOrthogonality => "row-orthogonality",
            Rule::Degree => "degree",
            Rule::TrivialRow => "trivial-row",
            Rule::Integrality => "integrality",
            Rule::CentralizerOrder => "centralizer-order",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    /// 1-based positions, e.g. "entry (6,2)" or "columns (1,3)".
    pub location: String,
    /// Difference between the computed and the required value, when one exists.
    pub defect: Option<Cyclotomic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport { passed: violations.is_empty(), violations }
    }
}

/// Check the orthogonality, integrality and degree axioms of a character table.
pub fn validate(t: &CharacterTable) -> ValidationReport {
    let k = t.k();
    let m = t.entries();
    let mut out = Vec::new();
    let mut push = |rule, location: String, defect: Option<Cyclotomic>| {
        out.push(Violation { rule, location, defect })
    };

    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_algebraic_integer() {
                push(Rule::Integrality, format!("entry ({},{})", i + 1, j + 1), Some(x.clone()));
            }
        }
    }

    if !m.iter().any(|row| is_all_ones(row)) {
        push(Rule::TrivialRow, "no row of ones".into(), None);
    }

    let id = match identify_identity_column(m) {
        Ok(c) => c[0],
        Err(_) => {
            push(Rule::Degree, "no dominating column of positive integers".into(), None);
            0
        }
    };
    let mut degrees: Option<Vec<BigInt>> = Some(Vec::with_capacity(k));
    for (i, row) in m.iter().enumerate() {
        match row[id].as_integer() {
            Some(d) if d.is_positive() => {
                if let Some(ds) = degrees.as_mut() {
                    ds.push(d);
                }
            }
            _ => {
                push(Rule::Degree, format!("entry ({},{})", i + 1, id + 1), Some(row[id].clone()));
                degrees = None;
            }
        }
    }

    // Column orthogonality and norms.
    let conj: Vec<Vec<Cyclotomic>> =
        m.iter().map(|row| row.iter().map(Cyclotomic::conjugate).collect()).collect();
    let mut norms: Vec<Option<BigInt>> = Vec::with_capacity(k);
    for s in 0..k {
        for t_ in s..k {
            let g: Cyclotomic = (0..k).map(|i| &m[i][s] * &conj[i][t_]).sum();
            if s == t_ {
                let norm = g.as_integer().filter(|v| v.is_positive());
                if norm.is_none() {
                    push(Rule::ColumnOrthogonality, format!("column {} norm", s + 1), Some(g));
                }
                norms.push(norm);
            } else if !g.is_zero() {
                push(Rule::ColumnOrthogonality, format!("columns ({},{})", s + 1, t_ + 1), Some(g));
            }
        }
    }

    let Some(degrees) = degrees else {
        return ValidationReport::from_violations(out);
    };
    let order: BigInt = degrees.iter().map(|d| d * d).sum();
    let mut sizes: Option<Vec<BigInt>> = Some(Vec::with_capacity(k));
    for (j, norm) in norms.iter().enumerate() {
        match norm {
            Some(c) if (&order % c) == BigInt::from(0) => {
                if let Some(sz) = sizes.as_mut() {
                    sz.push(&order / c);
                }
            }
            Some(c) => {
                push(
                    Rule::CentralizerOrder,
                    format!("column {} centralizer does not divide |G| = {order}", j + 1),
                    Some(Cyclotomic::from_bigint(&order % c)),
                );
                sizes = None;
            }
            None => sizes = None,
        }
    }
    let Some(sizes) = sizes else {
        return ValidationReport::from_violations(out);
    };
    let total: BigInt = sizes.iter().sum();
    if total != order {
        push(
            Rule::CentralizerOrder,
            format!("class sizes sum to {total}, |G| = {order}"),
            Some(Cyclotomic::from_bigint(&total - &order)),
        );
    }

    let sizes: Vec<Cyclotomic> = sizes.into_iter().map(Cyclotomic::from_bigint).collect();
    let order_c = Cyclotomic::from_bigint(order);
    for a in 0..k {
        let weighted: Vec<Cyclotomic> = (0..k).map(|j| &sizes[j] * &m[a][j]).collect();
        for b in a..k {
            let mut ip: Cyclotomic = (0..k).map(|j| &weighted[j] * &conj[b][j]).sum();
            if a == b {
                ip = ip - &order_c;
            }
            if !ip.is_zero() {
                push(Rule::RowOrthogonality, format!("rows ({},{})", a + 1, b + 1), Some(ip));
            }
        }
    }
    ValidationReport::from_violations(out)
}

/// Whether a Sylow q-subgroup of the group of `t` is cyclic, by the existence of
/// an element of order divisible by `|G|_q`.
pub fn sylow_is_cyclic(t: &CharacterTable, q: u64) -> Result<bool, TableError> {
    let part = p_part(t.group_order()?, q);
    if part <= q {
        return Ok(true);
    }
    Ok(t.element_orders()?.iter().any(|o| o % part == 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// The group is a 2-group; count linear characters.
    S1,
    /// The 2-part of the number of linear characters already exceeds 4.
    S2,
    /// Caller-supplied hint.
    S3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Sylow2Index {
    Exact { index: u64, strategy: Strategy },
    /// Certified `|P:P'| >= lower_bound > 4`.
    GreaterThanFour { lower_bound: u64, strategy: Strategy },
    /// Neither reading can be excluded: `|P:P'| = 4` or `|P:P'| > 4`.
    Undecidable,
}

/// `|P:P'|` for a Sylow 2-subgroup P, by the first strategy that applies.
pub fn sylow2_abelianization_index(t: &CharacterTable, hint: Option<u64>) -> Result<Sylow2Index, TableError> {
    let order = t.group_order()?;
    let linear = t.linear_count()? as u64;
    if p_part(order, 2) == order {
        return Ok(Sylow2Index::Exact { index: linear, strategy: Strategy::S1 });
    }
    let two_part = p_part(linear, 2);
    if two_part > 4 {
        return Ok(Sylow2Index::GreaterThanFour { lower_bound: two_part, strategy: Strategy::S2 });
    }
    match hint {
        Some(index) => Ok(Sylow2Index::Exact { index, strategy: Strategy::S3 }),
        None => Ok(Sylow2Index::Undecidable),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    GenuineConsistent,
    Pseudo,
    NotApplicable,
}

/// A constraint failed by a character vanishing off two classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// 1-based row of the character.
    pub row: usize,
    pub constraint: String,
    pub lhs: u64,
    pub rhs: u64,
    pub d: u64,
    pub quotient_order: u64,
    pub normal_order: u64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {}: {} fails, {} != {} (d = {}, |H| = {}, |N| = {})",
            self.row, self.constraint, self.lhs, self.rhs, self.d, self.quotient_order, self.normal_order
        )
    }
}

/// Quantities derived from one two-class character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GagolaCheck {
    pub row: usize,
    /// 1-based class on which the character is nonzero besides the identity.
    pub class: usize,
    pub d: u64,
    pub quotient_order: u64,
    pub normal_order: u64,
    pub prime: Option<u64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudoVerdict {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub checked: Vec<GagolaCheck>,
}

/// Returns `Some(p)` if `n = p^m` with `m >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_divisors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

/// Test every character that vanishes off the identity and one other class
/// against the normal-subgroup arithmetic such a character forces.
pub fn pseudo_check(t: &CharacterTable) -> PseudoVerdict {
    let not_applicable = PseudoVerdict { verdict: Verdict::NotApplicable, witness: None, checked: vec![] };
    let Ok(data) = t.class_data() else {
        return not_applicable;
    };
    let id = data.identity_column;
    let order = data.group_order;
    let mut checked = Vec::new();
    let mut witness = None;
    for (i, row) in t.entries().iter().enumerate() {
        let support: Vec<usize> = (0..t.k()).filter(|&j| !row[j].is_zero()).collect();
        let [a, b] = support[..] else { continue };
        let class = if a == id { b } else if b == id { a } else { continue };
        let Some(d) = row[id].as_integer().and_then(|d| u64::try_from(d).ok()) else { continue };
        let mut fail = |constraint: String, lhs: u64, rhs: u64, h: u64, n: u64| {
            if witness.is_none() {
                witness = Some(Witness {
                    row: i + 1,
                    constraint,
                    lhs,
                    rhs,
                    d,
                    quotient_order: h,
                    normal_order: n,
                });
            }
        };
        let mut check = GagolaCheck {
            row: i + 1,
            class: class + 1,
            d,
            quotient_order: 0,
            normal_order: 0,
            prime: None,
            holds: false,
        };
        let d2 = d * d;
        if d2 >= order || order % (order - d2) != 0 {
            fail("|H| divides |G|".into(), order, order.saturating_sub(d2), 0, 0);
            checked.push(check);
            continue;
        }
        let h = order - d2;
        let n = order / h;
        check.quotient_order = h;
        check.normal_order = n;
        let Some(p) = prime_power_base(n) else {
            fail("|N| is a prime power".into(), n, 0, h, n);
            checked.push(check);
            continue;
        };
        check.prime = Some(p);
        let (dp, hp) = (p_part(d, p), p_part(h, p));
        let ok = if d / dp != h / hp {
            fail(format!("d_{{{p}'}} = |H|_{{{p}'}}"), d / dp, h / hp, h, n);
            false
        } else if dp * dp != hp {
            fail(format!("d_{p}^2 = |H|_{p}"), dp * dp, hp, h, n);
            false
        } else if h % (n - 1) != 0 {
            fail("(|N|-1) divides |H|".into(), h % (n - 1), 0, h, n);
            false
        } else if data.class_sizes[class] != n - 1 {
            fail(format!("class {} has size |N|-1", class + 1), data.class_sizes[class], n - 1, h, n);
            false
        } else {
            true
        };
        check.holds = ok;
        checked.push(check);
    }
    let verdict = if checked.is_empty() {
        Verdict::NotApplicable
    } else if witness.is_some() {
        Verdict::Pseudo
    } else {
        Verdict::GenuineConsistent
    };
    PseudoVerdict { verdict, witness, checked }
}
