import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import catalog, loops_upto
from loopkit.morphisms import find_isomorphism
from loopkit.properties import CLASS_NAMES, check_class
from loopkit.subloops import (
    NotNormal,
    SubloopOrderCapExceeded,
    center,
    centrum,
    cosets,
    enumerate_subloops,
    generated_subloop,
    is_normal,
    nuclei,
    nucleus,
    quotient,
    restrict,
    smarandache_witness,
)
from loopkit.table import Permutation, canonical_form, cyclic, relabel_with_map, symmetric_group_s3, validate_loop

import oracles

Z2, Z4, Z5, Z6 = cyclic(2), cyclic(4), cyclic(5), cyclic(6)
S3 = symmetric_group_s3()


def elements(subs):
    return [s.elements for s in subs]


def test_generated_subloop():
    assert generated_subloop(Z6, [2]).elements == (0, 2, 4)
    assert generated_subloop(Z6, []).elements == (0,)
    for t in loops_upto(4):
        assert generated_subloop(t, range(t.n)).elements == tuple(range(t.n))


def test_enumerate_examples():
    assert elements(enumerate_subloops(Z4)) == [(0,), (0, 2), (0, 1, 2, 3)]
    assert elements(enumerate_subloops(Z6)) == [(0,), (0, 3), (0, 2, 4), tuple(range(6))]
    assert elements(enumerate_subloops(Z5)) == [(0,), tuple(range(5))]


def test_enumerate_matches_subset_oracle(order6):
    for t in loops_upto(5) + order6:
        assert sorted(elements(enumerate_subloops(t))) == sorted(oracles.subloops(t.rows())), t.name


def test_enumerate_cap():
    with pytest.raises(SubloopOrderCapExceeded):
        enumerate_subloops(Z6, cap=5)


def test_subloops_are_loops_and_subgroups_flagged():
    for t in loops_upto(5):
        group = check_class(t, "group").holds
        for s in enumerate_subloops(t):
            r = restrict(t, s)
            validate_loop(r.rows())
            assert s.is_subgroup == r.is_associative()
            if group:
                assert s.is_subgroup


def test_nuclei_against_oracle(order6):
    for t in loops_upto(5) + order6:
        nl, nm, nr, nn = nuclei(t)
        left, mid, right, nuc, cen, zen = oracles.nuclei(t.rows())
        assert list(nl.elements) == left and list(nm.elements) == mid and list(nr.elements) == right
        assert list(nn.elements) == nuc == list(nucleus(t).elements)
        assert list(centrum(t).elements) == cen
        assert list(center(t).elements) == zen


def test_group_nucleus_is_everything():
    for t in (Z4, Z6, S3):
        assert nucleus(t).elements == tuple(range(t.n))


def test_s3_center_trivial():
    assert centrum(S3).elements == (0,)
    assert center(S3).elements == (0,)


def test_center_inside_nucleus_and_centrum():
    for t in loops_upto(5):
        z = set(center(t).elements)
        assert z <= set(nucleus(t).elements) and z <= set(centrum(t).elements)
        assert oracles.closed(t.rows(), set(nucleus(t).elements))
        assert oracles.closed(t.rows(), z)


def test_normal_examples():
    assert is_normal(Z4, [0, 2])
    assert canonical_form(quotient(Z4, [0, 2])) == canonical_form(Z2)
    assert is_normal(Z6, [0, 2, 4])
    assert canonical_form(quotient(Z6, [0, 2, 4])) == canonical_form(Z2)
    order2 = next(s for s in enumerate_subloops(S3) if len(s) == 2)
    assert not is_normal(S3, order2)
    with pytest.raises(NotNormal):
        quotient(S3, order2)


def test_s3_normal_subloops():
    normal = [s.elements for s in enumerate_subloops(S3) if is_normal(S3, s)]
    assert [len(e) for e in normal] == [1, 3, 6]


def _normal_oracle(T, S):
    n = len(T)
    S = list(S)

    def setof(f):
        return {f(s) for s in S}

    for x in range(n):
        if setof(lambda s: T[x][s]) != setof(lambda s: T[s][x]):
            return False
        for y in range(n):
            if setof(lambda s: T[T[x][s]][y]) != setof(lambda s: T[x][T[s][y]]):
                return False
            if setof(lambda s: T[x][T[y][s]]) != setof(lambda s: T[T[x][y]][s]):
                return False
    return True


def test_normality_against_oracle(order6):
    for t in loops_upto(5) + order6:
        for s in enumerate_subloops(t):
            assert is_normal(t, s) == _normal_oracle(t.rows(), s.elements)


def test_quotients_have_right_order(order6):
    for t in loops_upto(5) + order6:
        for s in enumerate_subloops(t):
            if is_normal(t, s):
                q = quotient(t, s)
                assert q.n * len(s) == t.n
                assert len(cosets(t, s)) == q.n


def test_witness_examples():
    assert smarandache_witness(Z4, "group").subloop.elements == (0, 2)
    assert smarandache_witness(Z5, "group") is None
    assert smarandache_witness(Z6, "group").subloop.elements == (0, 3)
    w = smarandache_witness(Z5, "group", allow_improper=True)
    assert w.subloop.elements == tuple(range(5)) and not w.proper


@pytest.mark.parametrize("name", CLASS_NAMES)
def test_fast_path_matches_full_enumeration(name):
    for t in loops_upto(5):
        for improper in (False, True):
            a = smarandache_witness(t, name, improper)
            b = smarandache_witness(t, name, improper, full_enumeration=True)
            assert (a and a.subloop.elements) == (b and b.subloop.elements)


def test_witness_is_smallest_then_lexicographic(order6):
    for t in order6:
        w = smarandache_witness(t, "group")
        proper = [s for s in oracles.subloops(t.rows()) if 1 < len(s) < t.n]
        groups = [s for s in proper if oracles.is_group(restrict(t, s).rows())]
        expected = min(groups, key=lambda s: (len(s), s)) if groups else None
        assert (w and w.subloop.elements) == expected


def test_witness_satisfies_class():
    for t in loops_upto(5):
        for name in ("group", "ip", "wip", "a_loop", "cc"):
            w = smarandache_witness(t, name)
            if w is not None:
                assert check_class(restrict(t, w.subloop), name)
                assert w.nontrivial and 1 < len(w.subloop) < t.n


def test_subloop_closure_of_cc_and_a_loops(order6):
    # subloops of CC-loops are CC and subloops of A-loops are A-loops
    for t in loops_upto(5) + order6:
        for name in ("cc", "a_loop"):
            if check_class(t, name):
                for s in enumerate_subloops(t):
                    assert check_class(restrict(t, s), name)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(list(catalog(5))), st.data())
def test_property_substructure_invariance(t, data):
    sigma = Permutation(data.draw(st.permutations(list(range(5)))))
    s, eff = relabel_with_map(t, sigma)
    assert len(enumerate_subloops(s)) == len(enumerate_subloops(t))
    assert [len(x) for x in nuclei(s)] == [len(x) for x in nuclei(t)]
    assert len(centrum(s)) == len(centrum(t)) and len(center(s)) == len(center(t))
    for name in ("group", "wip", "aip"):
        a, b = smarandache_witness(t, name, True), smarandache_witness(s, name, True)
        assert (a is None) == (b is None)
        if a is not None:
            ra, rb = restrict(t, a.subloop), restrict(s, b.subloop)
            assert len(a.subloop) == len(b.subloop)
            assert find_isomorphism(ra, rb) is not None
