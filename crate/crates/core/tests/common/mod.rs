//! Data and helpers shared by the integration tests.
#![allow(dead_code)]

use chartab::cyclo::Cyclotomic;
use chartab::table::CharacterTable;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

/// Published pairs `(d, d(d+e))` of groups having a character of degree `d`, per `e`.
pub const PUBLISHED: &[(u64, &[(u64, u64)])] = &[
    (2, &[(1, 3), (2, 8)]),
    (3, &[(1, 4), (2, 10), (6, 54)]),
    (4, &[(1, 5), (2, 12), (3, 21), (4, 32), (12, 192)]),
    (5, &[(1, 6), (2, 14), (3, 24), (4, 36), (20, 500)]),
    (6, &[(1, 7), (2, 16), (3, 27), (4, 40), (5, 55), (6, 72)]),
    (7, &[(1, 8), (2, 18), (5, 60), (6, 78), (8, 120), (9, 144), (42, 2058)]),
    (8, &[(1, 9), (2, 20), (4, 48), (6, 84), (8, 128), (12, 240), (24, 768), (56, 3584)]),
    (9, &[(1, 10), (2, 22), (3, 36), (4, 52), (7, 112), (8, 136), (12, 252), (16, 400), (18, 486), (72, 5832)]),
    (10, &[(1, 11), (2, 24), (3, 39), (6, 96), (8, 144), (9, 171), (14, 336), (18, 504)]),
    (11, &[(1, 12), (2, 26), (3, 42), (4, 60), (5, 80), (16, 432), (21, 672), (24, 840), (110, 13310)]),
];

/// Add a random nonzero rational to one random entry.
pub fn perturb(t: &CharacterTable, rng: &mut StdRng) -> CharacterTable {
    let k = t.k();
    let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
    let num = loop {
        let n = rng.gen_range(-6i64..=6);
        if n != 0 {
            break n;
        }
    };
    let delta = Cyclotomic::from_rational(BigRational::new(BigInt::from(num), BigInt::from(rng.gen_range(1i64..=4))));
    let mut entries = t.entries().clone();
    entries[i][j] = &entries[i][j] + &delta;
    CharacterTable::new(t.name.clone(), entries).unwrap()
}
