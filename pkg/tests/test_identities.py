from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import catalog, loops_upto
from loopkit.identities import (
    IdentityAst,
    IdentityElement,
    IdentitySyntaxError,
    LeftDiv,
    LeftInv,
    Product,
    RightDiv,
    RightInv,
    UndeclaredVariable,
    Var,
    evaluate_at,
    evaluate_identity,
    override_identity,
    parse_identity,
    registered_identity,
    registry,
    to_string,
)
from loopkit.properties import check_class
from loopkit.table import Permutation, cyclic, relabel, relabel_with_map, symmetric_group_s3

import oracles

BOL = "((x*y)*z)*y = x*((y*z)*y)"
MOUFANG = "(x*y)*(z*x) = (x*(y*z))*x"


def test_parse_identity_element():
    ast = parse_identity("x*e = x")
    assert ast.variables == ("x",)
    assert ast.lhs == Product(Var("x"), IdentityElement())
    assert ast.rhs == Var("x")


def test_parse_bol():
    ast = parse_identity(BOL)
    assert ast.variables == ("x", "y", "z")
    assert ast.lhs == Product(Product(Product(Var("x"), Var("y")), Var("z")), Var("y"))


def test_syntax_error_position():
    with pytest.raises(IdentitySyntaxError) as exc:
        parse_identity("x*(y*")
    assert exc.value.position == 5
    assert "position 5" in str(exc.value)


@pytest.mark.parametrize("src", ["x*y", "x = = y", "x * = y", "(x = y", "x = y)", "x # y = x", "forall x x = x"])
def test_syntax_errors(src):
    with pytest.raises(IdentitySyntaxError):
        parse_identity(src)


def test_undeclared_variable():
    with pytest.raises(UndeclaredVariable):
        parse_identity("forall x: x*y = y*x")


def test_operators_left_associative_inverse_binds_tight():
    ast = parse_identity("x\\y/z*w^r = e")
    assert ast.lhs == Product(RightDiv(LeftDiv(Var("x"), Var("y")), Var("z")), RightInv(Var("w")))
    assert parse_identity("(x*y)^l = x").lhs == LeftInv(Product(Var("x"), Var("y")))


@pytest.mark.parametrize("name", sorted(registry()))
def test_registry_round_trip(name):
    ast = registered_identity(name)
    again = parse_identity(to_string(ast))
    assert again == ast


def test_registry_names():
    expected = {"bol", "moufang", "extra", "lc", "rc", "ip_left", "ip_right", "wip", "aip", "aaip", "lcc", "rcc"}
    assert expected <= set(registry())


def test_bol_on_z3():
    assert evaluate_identity(BOL, cyclic(3)).holds


def test_commutativity_fails_on_s3():
    s3 = symmetric_group_s3()
    v = evaluate_identity("x*y = y*x", s3)
    assert not v.holds
    x, y = v.counterexample["x"], v.counterexample["y"]
    assert s3.mul(x, y) != s3.mul(y, x)
    assert (v.lhs_value, v.rhs_value) == (s3.mul(x, y), s3.mul(y, x))


def test_counterexample_is_lexicographically_first():
    s3 = symmetric_group_s3()
    v = evaluate_identity("x*y = y*x", s3)
    first = next((x, y) for x, y in product(range(6), repeat=2) if s3.mul(x, y) != s3.mul(y, x))
    assert (v.counterexample["x"], v.counterexample["y"]) == first


def test_inverse_sugar():
    for t in loops_upto(5):
        for x in range(t.n):
            env = {"x": x}
            assert evaluate_at(parse_identity("x^r = x").lhs, t, env) == t.ldiv(x, 0)
            assert evaluate_at(parse_identity("x^l = x").lhs, t, env) == t.rdiv(0, x)


def test_moufang_matches_oracle_order5():
    ast = parse_identity(MOUFANG)
    for t in catalog(5):
        assert evaluate_identity(ast, t).holds == oracles.is_moufang(t.rows())


def test_scalar_and_vector_paths_agree():
    for name in sorted(registry()):
        ast = registered_identity(name)
        for t in loops_upto(4):
            first = None
            for vals in product(range(t.n), repeat=len(ast.variables)):
                env = dict(zip(ast.variables, vals))
                if evaluate_at(ast.lhs, t, env) != evaluate_at(ast.rhs, t, env):
                    first = env
                    break
            v = evaluate_identity(ast, t)
            assert v.holds == (first is None)
            assert v.counterexample == first


def test_zero_variable_identity():
    assert evaluate_identity("e*e = e", cyclic(3)).holds
    assert evaluate_identity("e^r = e", cyclic(3)).holds


def test_override_identity_changes_class():
    z4 = cyclic(4)
    assert check_class(z4, "aip")
    try:
        override_identity("aip", "x*x = e")
        assert not check_class(z4, "aip")
    finally:
        override_identity("aip", None)
    assert check_class(z4, "aip")


def test_override_rejects_bad_source():
    with pytest.raises(IdentitySyntaxError):
        override_identity("aip", "x*(")


NO_DIVISION = ["bol", "moufang", "extra", "lc", "rc", "left_bol"]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(registry())), st.sampled_from(loops_upto(5)), st.data())
def test_property_verdict_isomorphism_invariant(name, t, data):
    sigma = Permutation(data.draw(st.permutations(list(range(t.n)))))
    s, eff = relabel_with_map(t, sigma)
    ast = registered_identity(name)
    a, b = evaluate_identity(ast, t), evaluate_identity(ast, s)
    assert a.holds == b.holds
    if not a.holds:
        mapped = {k: eff(v) for k, v in a.counterexample.items()}
        assert evaluate_at(ast.lhs, s, mapped) != evaluate_at(ast.rhs, s, mapped)


@pytest.mark.parametrize("name", NO_DIVISION)
def test_division_free_identities_match_oracle(name):
    oracle = {"bol": oracles.is_bol, "moufang": oracles.is_moufang, "extra": oracles.is_extra,
              "left_bol": oracles.is_left_bol}
    ast = registered_identity(name)
    for t in loops_upto(5):
        T = t.rows()
        if name in oracle:
            expected = oracle[name](T)
        elif name == "lc":
            expected = oracles.forall(t.n, 3, lambda x, y, z: T[x][T[x][T[y][z]]] == T[T[x][T[x][y]]][z])
        else:
            expected = oracles.forall(t.n, 3, lambda x, y, z: T[T[T[z][y]][x]][x] == T[z][T[T[y][x]][x]])
        assert evaluate_identity(ast, t).holds == expected


def test_ast_is_hashable_and_immutable():
    a = parse_identity(BOL)
    assert hash(a) == hash(parse_identity("forall x, y, z: " + BOL))
    assert isinstance(a, IdentityAst)
    with pytest.raises(Exception):
        a.lhs = Var("x")
