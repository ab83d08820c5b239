"""Smoke test for the pychartab extension module.

Build and install first:  pip install maturin && maturin build --release -m crates/py/Cargo.toml
                          pip install target/wheels/pychartab-*.whl
Run:                      python -m pytest python/smoke_test.py
"""

import cmath

import pytest

import pychartab as ct
from pychartab import Cyclotomic, CharacterTable


def test_cyclotomic_arithmetic():
    z = Cyclotomic.E(5)
    total = sum((z ** k for k in range(5)), Cyclotomic())
    assert total == 0
    r5 = Cyclotomic("E(5)-E(5)^2-E(5)^3+E(5)^4")
    assert r5 * r5 == 5
    assert (1 / r5) * r5 == 1
    assert z.conjugate() == z ** 4
    assert z.galois(2) == z ** 2
    assert abs(complex(z) - cmath.exp(2j * cmath.pi / 5)) < 1e-12
    assert str(Cyclotomic.E(4)) == "E(4)"
    assert Cyclotomic.E(8).conductor == 8
    assert hash(Cyclotomic("1/2")) == hash(Cyclotomic(1) / 2)
    with pytest.raises(ZeroDivisionError):
        Cyclotomic(1) / 0


def test_corpus_tables_validate():
    for stem in ct.corpus_names():
        t = CharacterTable.corpus(stem)
        report = t.validate()
        assert report["passed"], (stem, report)
        assert sum(t.centralizer_orders()[0] // c for c in t.centralizer_orders()) == t.group_order()


def test_row_and_column_round_trip():
    a5 = CharacterTable.corpus("a5")
    rows = a5.rows()
    for i in range(len(a5)):
        assert [Cyclotomic(x) for x in ct.solve_row(a5.delete_row(i))["vector"]] == rows[i]
        column = [row[i] for row in rows]
        assert [Cyclotomic(x) for x in ct.solve_col(a5.delete_column(i))["vector"]] == column


def test_m9_puzzle():
    out = ct.solve_row(ct.puzzle("m9_partial"))
    assert out["vector"][:2] == ["8", "-1"]
    assert out["trace"]["case"] == "row-case2"
    assert out["trace"]["d"] == 8


def test_hint_handling():
    with pytest.raises(ct.NeedsHint) as info:
        ct.solve_row(ct.puzzle("hint_gl23"))
    assert sorted(c["d"] for c in info.value.candidates) == [12, 48]
    assert ct.solve_row(ct.puzzle("hint_gl23"), sylow2_ab=4)["vector"][0] == "48"


def test_pseudo_table():
    verdict = ct.pseudo_check(ct.puzzle("pseudo6x6"))
    assert verdict["verdict"] == "pseudo"
    assert (verdict["witness"]["lhs"], verdict["witness"]["rhs"]) == (4, 8)


def test_degrees():
    assert ct.hls_max_order(7) == 2058
    assert (42, 2058) in ct.enumerate_pairs(7)
    assert ct.feasible_ramifications(3402, 54, 7, abelian=True) == [(6, 9, 1)]
    assert ct.feasible_ramifications(3402, 54, 7, abelian=True, coprime_extension=True) == []
    assert len(ct.lemma_scenarios()) == 8


def test_cli():
    code, out, _ = ct.run_cli(["degrees", "7"])
    assert code == 0 and "2058" in out
    code, _, _ = ct.run_cli(["degrees", "1"])
    assert code == 3
