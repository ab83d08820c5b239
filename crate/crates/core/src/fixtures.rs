//! The shipped table corpus and puzzle files.

use crate::io::{parse, Parsed};
use crate::table::CharacterTable;

/// Complete character tables of small groups, `(file stem, contents)`.
pub const CORPUS: &[(&str, &str)] = &[
    ("trivial", include_str!("../fixtures/corpus/trivial.json")),
    ("c2", include_str!("../fixtures/corpus/c2.json")),
    ("c3", include_str!("../fixtures/corpus/c3.json")),
    ("c4", include_str!("../fixtures/corpus/c4.json")),
    ("c2xc2", include_str!("../fixtures/corpus/c2xc2.json")),
    ("s3", include_str!("../fixtures/corpus/s3.json")),
    ("d8", include_str!("../fixtures/corpus/d8.json")),
    ("q8", include_str!("../fixtures/corpus/q8.json")),
    ("a4", include_str!("../fixtures/corpus/a4.json")),
    ("sl2_3", include_str!("../fixtures/corpus/sl2_3.json")),
    ("s4", include_str!("../fixtures/corpus/s4.json")),
    ("a5", include_str!("../fixtures/corpus/a5.json")),
    ("gl2_3", include_str!("../fixtures/corpus/gl2_3.json")),
    ("m9", include_str!("../fixtures/corpus/m9.json")),
];

/// Partial tables and formally interesting matrices.
pub const PUZZLES: &[(&str, &str)] = &[
    ("m9_partial", include_str!("../fixtures/puzzles/m9_partial.json")),
    ("pseudo6x6", include_str!("../fixtures/puzzles/pseudo6x6.json")),
    ("s3_minus_transposition", include_str!("../fixtures/puzzles/s3_minus_transposition.json")),
    ("puzzle_i1", include_str!("../fixtures/puzzles/puzzle_i1.json")),
    ("puzzle_i2", include_str!("../fixtures/puzzles/puzzle_i2.json")),
    ("puzzle_i3", include_str!("../fixtures/puzzles/puzzle_i3.json")),
    ("hint_gl23", include_str!("../fixtures/puzzles/hint_gl23.json")),
    ("challenge8x8", include_str!("../fixtures/puzzles/challenge8x8.json")),
];

pub fn corpus() -> Vec<CharacterTable> {
    CORPUS
        .iter()
        .map(|(stem, text)| {
            parse(text)
                .and_then(Parsed::into_full)
                .unwrap_or_else(|e| panic!("corpus fixture {stem}: {e}"))
        })
        .collect()
}

/// Look up a corpus table by file stem or table name, case-insensitively.
pub fn corpus_table(name: &str) -> CharacterTable {
    corpus()
        .into_iter()
        .zip(CORPUS)
        .find(|(t, (stem, _))| t.name.eq_ignore_ascii_case(name) || stem.eq_ignore_ascii_case(name))
        .map(|(t, _)| t)
        .unwrap_or_else(|| panic!("no corpus table {name}"))
}

pub fn puzzle(stem: &str) -> Parsed {
    let (_, text) = PUZZLES
        .iter()
        .find(|(s, _)| *s == stem)
        .unwrap_or_else(|| panic!("no puzzle {stem}"));
    parse(text).unwrap_or_else(|e| panic!("puzzle {stem}: {e}"))
}

pub fn puzzle_table(stem: &str) -> CharacterTable {
    puzzle(stem).into_full().unwrap_or_else(|e| panic!("puzzle {stem}: {e}"))
}
