from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import catalog, loops_upto
from loopkit.holomorph import build_holomorph
from loopkit.morphisms import (
    IsotopismTriple,
    automorphism_group,
    find_isomorphism,
    find_isotopism,
    find_special_isotopism,
    is_homomorphism,
    principal_isotope,
    stabilizer_automorphisms,
)
from loopkit.table import Permutation, canonical_form, cyclic, klein_four, relabel, symmetric_group_s3

import oracles

Z2, Z3, Z4, Z6 = cyclic(2), cyclic(3), cyclic(4), cyclic(6)
V4 = klein_four()


def test_isomorphism_examples():
    swapped = relabel(Z3, Permutation.transposition(3, 1, 2))
    phi = find_isomorphism(Z3, swapped)
    assert phi is not None and is_homomorphism(Z3, swapped, phi.images)
    assert find_isomorphism(Z4, V4) is None
    assert find_isomorphism(Z4, Z4) is not None


def test_isomorphism_iff_canonical_forms_equal(rng):
    pool = list(catalog(5)) + list(catalog(4))
    copies = [relabel(t, Permutation(rng.permutation(t.n))) for t in pool]
    for a in pool:
        for b in pool + copies:
            if a.n != b.n:
                assert find_isomorphism(a, b) is None
                continue
            phi = find_isomorphism(a, b)
            assert (phi is not None) == (canonical_form(a) == canonical_form(b))
            if phi is not None:
                assert phi(0) == 0 and is_homomorphism(a, b, phi.images)


def test_aut_orders():
    assert automorphism_group(Z2).order == 1
    assert automorphism_group(Z3).order == 2
    assert automorphism_group(V4).order == 6
    assert automorphism_group(symmetric_group_s3()).order == 6


def test_aut_matches_bruteforce(order6):
    for t in loops_upto(5) + order6:
        got = sorted(p.images for p in automorphism_group(t))
        assert got == sorted(oracles.automorphisms(t.rows())), t.name


def test_aut_group_invariants():
    for t in loops_upto(5) + [V4, symmetric_group_s3()]:
        g = automorphism_group(t)
        assert g[0].is_identity()
        assert g.is_closed()
        for p in g:
            assert p.inverse() in g
            assert is_homomorphism(t, t, p.images)
        comp = g.composition
        for i, p in enumerate(g):
            for j, q in enumerate(g):
                assert g[int(comp[i, j])] == p * q


def test_stabilizers():
    assert stabilizer_automorphisms(Z4, [0, 2]).order == 2
    for t in loops_upto(4):
        assert stabilizer_automorphisms(t, [0]).order == automorphism_group(t).order
    stab = stabilizer_automorphisms(Z6, [0, 3])
    brute = [p for p in oracles.automorphisms(Z6.rows()) if {p[0], p[3]} == {0, 3}]
    assert stab.order == len(brute) == automorphism_group(Z6).order
    assert stab.is_closed()


def test_isotopism_identity_triple():
    for t in loops_upto(4):
        tri = find_isotopism(t, t)
        assert tri.holds(t, t)
    tri = find_isotopism(Z3, Z3)
    assert tri.u.is_identity() and tri.v.is_identity() and tri.w.is_identity()


def test_isotopism_relabeled():
    s = relabel(Z3, Permutation([0, 2, 1]))
    tri = find_isotopism(Z3, s)
    assert isinstance(tri, IsotopismTriple) and tri.holds(Z3, s)


def test_isotopism_matches_principal_sweep():
    loops = [t for t in catalog(5) if not t.is_associative()]
    for a in loops:
        isos = {oracles.canonical(oracles.principal_isotope(a.rows(), f, g)) for f in range(5) for g in range(5)}
        for b in loops:
            tri = find_isotopism(a, b)
            assert (tri is not None) == (oracles.canonical(b.rows()) in isos)
            if tri is not None:
                assert tri.holds(a, b)


def test_principal_isotope_is_loop():
    for t in catalog(5):
        for f in range(5):
            for g in range(5):
                p = principal_isotope(t, f, g)
                assert oracles.canonical(p.rows()) == oracles.canonical(oracles.principal_isotope(t.rows(), f, g))


def _special_oracle(a, b):
    A, B = a.rows(), b.rows()
    n = len(A)
    for d in permutations(range(n)):
        if all(B[d[x]][y] == d[A[x][y]] for x in range(n) for y in range(n)):
            return d
    return None


def test_special_isotopism():
    for t in loops_upto(4):
        d = find_special_isotopism(t, t)
        assert d is not None
    assert find_special_isotopism(Z4, V4) is None
    assert _special_oracle(Z4, V4) is None


def test_special_isotopism_against_oracle():
    pool = list(catalog(4)) + list(catalog(5))
    for a in pool:
        for b in pool:
            if a.n != b.n:
                continue
            d = find_special_isotopism(a, b)
            assert (d is None) == (_special_oracle(a, b) is None)
            if d is not None:
                assert all(b.mul(d(x), y) == d(a.mul(x, y)) for x in range(a.n) for y in range(a.n))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(loops_upto(5)), st.data())
def test_property_aut_order_and_holomorph_invariant(t, data):
    s = relabel(t, Permutation(data.draw(st.permutations(list(range(t.n))))))
    assert automorphism_group(s).order == automorphism_group(t).order
    assert find_isomorphism(t, s) is not None
    assert find_isomorphism(build_holomorph(t).table, build_holomorph(s).table) is not None
