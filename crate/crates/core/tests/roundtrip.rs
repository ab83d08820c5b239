//! Deleting any row or column of a corpus table and solving recovers it.

use std::time::{Duration, Instant};

use chartab::fixtures;
use chartab::solve::{solve_missing_column, solve_missing_row, CaseTrace, SolveHints};

#[test]
fn every_row_is_recovered() {
    for t in fixtures::corpus() {
        for i in 0..t.k() {
            let start = Instant::now();
            let out = solve_missing_row(&t.delete_row(i), SolveHints::default())
                .unwrap_or_else(|e| panic!("{} row {}: {e}", t.name, i + 1));
            assert!(start.elapsed() < Duration::from_secs(1), "{} row {} took {:?}", t.name, i + 1, start.elapsed());
            assert_eq!(out.vector, t.row(i), "{} row {}", t.name, i + 1);
            assert!(out.validation.passed);
            assert!(out.degree().is_some());
        }
    }
}

#[test]
fn every_column_is_recovered() {
    for t in fixtures::corpus() {
        for j in 0..t.k() {
            let start = Instant::now();
            let out = solve_missing_column(&t.delete_column(j))
                .unwrap_or_else(|e| panic!("{} column {}: {e}", t.name, j + 1));
            assert!(start.elapsed() < Duration::from_secs(1), "{} column {} took {:?}", t.name, j + 1, start.elapsed());
            assert_eq!(out.vector, t.column(j), "{} column {}", t.name, j + 1);
            assert!(out.validation.passed);
        }
    }
}

#[test]
fn case_two_identities_hold() {
    for t in fixtures::corpus() {
        let order = t.group_order().unwrap();
        for i in 0..t.k() {
            let out = solve_missing_row(&t.delete_row(i), SolveHints::default()).unwrap();
            if let CaseTrace::RowCase2 { quotient_order, n_order, d, .. } = out.trace {
                assert_eq!(quotient_order + d * d, order, "{} row {}", t.name, i + 1);
                assert_eq!(n_order * quotient_order, order, "{} row {}", t.name, i + 1);
            }
        }
    }
}

#[test]
fn row_and_column_permutations_commute_with_the_column_solver() {
    let t = fixtures::corpus_table("A5");
    let p = t.delete_column(2);
    let base = solve_missing_column(&p).unwrap().vector;
    let mut entries = p.entries().clone();
    entries.rotate_left(2);
    for row in &mut entries {
        row.swap(0, 3);
    }
    let q = chartab::table::PartialTable::new("rotated", entries, p.missing(), p.k(), Default::default()).unwrap();
    let mut expected = base.clone();
    expected.rotate_left(2);
    assert_eq!(solve_missing_column(&q).unwrap().vector, expected);
}
