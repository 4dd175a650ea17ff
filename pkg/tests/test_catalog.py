from itertools import permutations
from math import factorial

import pytest

from conftest import catalog
from loopkit.catalog import (
    OrderCapExceeded,
    enumerate_loops,
    load_catalog,
    reduced_latin_squares,
    write_catalog_dir,
)
from loopkit.morphisms import automorphism_group
from loopkit.table import canonical_form, parse_table

import oracles


def squares_oracle(n):
    """Reduced Latin squares, one extra row at a time."""
    out = []

    def rec(rows):
        if len(rows) == n:
            out.append([list(r) for r in rows])
            return
        k = len(rows)
        for p in permutations(range(n)):
            if p[0] == k and all(p[c] != r[c] for r in rows for c in range(n)):
                rec(rows + [p])

    rec([tuple(range(n))])
    return out


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 6)])
def test_counts(n, count):
    assert len(catalog(n)) == count


def test_order6_count(order6):
    assert len(order6) == 109


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_reduced_squares_match_oracle(n):
    got = sorted(g.tolist() for g in reduced_latin_squares(n))
    assert got == sorted(squares_oracle(n))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_complete_and_pairwise_distinct(n):
    cat = catalog(n)
    forms = [oracles.canonical(t.rows()) for t in cat]
    assert len(set(forms)) == len(forms)
    assert {oracles.canonical(sq) for sq in squares_oracle(n)} == set(forms)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_orbit_counting(n):
    cat = catalog(n)
    auts = [automorphism_group(t).order for t in cat]
    assert auts == cat.automorphism_counts
    assert sum(factorial(n - 1) // a for a in auts) == cat.reduced_square_count


def test_reduced_square_totals():
    # 1, 1, 1, 4, 56, 9408 reduced Latin squares
    assert [catalog(n).reduced_square_count for n in range(1, 7)] == [1, 1, 1, 4, 56, 9408]


def test_loops_are_canonical_and_named():
    for n in range(1, 6):
        for k, t in enumerate(catalog(n)):
            assert t.name == f"L{n}.{k}"
            assert tuple(t.table.flatten()) == oracles.canonical(t.rows())


def test_deterministic():
    assert enumerate_loops(5).to_text() == enumerate_loops(5).to_text()


def test_cap(monkeypatch):
    with pytest.raises(OrderCapExceeded):
        enumerate_loops(7)
    monkeypatch.setenv("LOOPKIT_MAX_ORDER", "3")
    with pytest.raises(OrderCapExceeded):
        enumerate_loops(4)
    assert len(enumerate_loops(4, allow_large=True)) == 2
    with pytest.raises(ValueError):
        enumerate_loops(0)


def test_directory_round_trip(tmp_path):
    cats = [catalog(n) for n in range(1, 6)]
    paths = write_catalog_dir(cats, tmp_path)
    assert [p.name for p in paths] == [f"order{n}.cat" for n in range(1, 6)]
    loops = load_catalog(tmp_path)
    assert [t.name for t in loops] == [t.name for c in cats for t in c]
    assert loops == [t for c in cats for t in c]
    assert load_catalog(paths[4]) == list(cats[4])


def test_unnamed_tables_get_file_names(tmp_path):
    f = tmp_path / "mine.tbl"
    f.write_text("2\n0 1\n1 0\n\n3\n0 1 2\n1 2 0\n2 0 1\n")
    assert [t.name for t in load_catalog(f)] == ["mine#0", "mine#1"]


def test_catalog_text_parses():
    cat = catalog(5)
    back = parse_table(cat.to_text())
    assert [canonical_form(t) for t in back] == [canonical_form(t) for t in cat]
    assert cat.counts(["group"]) == {"group": 1}
