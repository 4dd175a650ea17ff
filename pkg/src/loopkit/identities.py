"""A small language for universally quantified loop identities.

Grammar (binary operators share one precedence level and associate to the
left; postfix inverses bind tightest)::

    identity := [ "forall" names ":" ] expr "=" expr
    expr     := unary { ("*" | "\\" | "/") unary }
    unary    := atom { "^r" | "^l" }
    atom     := name | "e" | "(" expr ")"

``x\\y`` is left division (the ``z`` with ``x*z = y``), ``x/y`` right
division, ``x^r`` the right inverse ``x\\e`` and ``x^l`` the left inverse
``e/x``.  Without a ``forall`` prefix the variables are taken in order of
first occurrence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Union

import numpy as np

from .table import LoopTable


class IdentitySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UndeclaredVariable(IdentitySyntaxError):
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class IdentityElement:
    pass


@dataclass(frozen=True)
class Product:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class LeftDiv:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class RightDiv:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class RightInv:
    arg: "Expr"


@dataclass(frozen=True)
class LeftInv:
    arg: "Expr"


Expr = Union[Var, IdentityElement, Product, LeftDiv, RightDiv, RightInv, LeftInv]

_BINARY = {"*": Product, "\\": LeftDiv, "/": RightDiv}
_SYMBOL = {Product: "*", LeftDiv: "\\", RightDiv: "/"}


@dataclass(frozen=True)
class IdentityAst:
    variables: tuple[str, ...]
    lhs: Expr
    rhs: Expr
    source: str = ""

    def __str__(self) -> str:
        return to_string(self)

    def __eq__(self, other):
        return (
            isinstance(other, IdentityAst)
            and self.variables == other.variables
            and self.lhs == other.lhs
            and self.rhs == other.rhs
        )

    def __hash__(self):
        return hash((self.variables, self.lhs, self.rhs))


@dataclass(frozen=True)
class IdentityVerdict:
    holds: bool
    counterexample: dict[str, int] | None = None
    lhs_value: int | None = None
    rhs_value: int | None = None

    def __bool__(self) -> bool:
        return self.holds


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<inv>\^[rl])|(?P<op>[*\\/()=,:]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(src, pos)
        if not m:
            start = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise IdentitySyntaxError(f"unexpected character {src[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0
        self.declared: list[str] | None = None
        self.seen: list[str] = []

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        kind, text, pos = self.peek()
        found = "end of input" if kind == "end" else repr(text)
        raise IdentitySyntaxError(f"expected {what}, found {found}", pos)

    def expect(self, text: str):
        if self.peek()[1] != text or self.peek()[0] == "name":
            self.fail(repr(text))
        self.take()

    def parse(self) -> IdentityAst:
        if self.peek() == ("name", "forall", self.peek()[2]):
            self.take()
            self.declared = []
            while self.peek()[0] == "name":
                name = self.take()[1]
                if name == "e":
                    raise IdentitySyntaxError("'e' is reserved for the identity", self.tokens[self.i - 1][2])
                self.declared.append(name)
                if self.peek()[1] == ",":
                    self.take()
            if not self.declared:
                self.fail("variable name")
            self.expect(":")
        lhs = self.expr()
        self.expect("=")
        rhs = self.expr()
        if self.peek()[0] != "end":
            self.fail("end of input")
        variables = tuple(self.declared) if self.declared is not None else tuple(self.seen)
        return IdentityAst(variables, lhs, rhs, self.src)

    def expr(self) -> Expr:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in _BINARY:
            op = self.take()[1]
            node = _BINARY[op](node, self.unary())
        return node

    def unary(self) -> Expr:
        node = self.atom()
        while self.peek()[0] == "inv":
            node = RightInv(node) if self.take()[1] == "^r" else LeftInv(node)
        return node

    def atom(self) -> Expr:
        kind, text, pos = self.peek()
        if kind == "name":
            self.take()
            if text == "e":
                return IdentityElement()
            if self.declared is not None and text not in self.declared:
                raise UndeclaredVariable(f"undeclared variable {text!r}", pos)
            if text not in self.seen:
                self.seen.append(text)
            return Var(text)
        if text == "(" and kind == "op":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        self.fail("variable, 'e' or '('")


def parse_identity(src: str) -> IdentityAst:
    return _Parser(src).parse()


def _expr_str(node: Expr) -> str:
    if isinstance(node, Var):
        return node.name
    if isinstance(node, IdentityElement):
        return "e"
    if isinstance(node, RightInv):
        return f"{_atom_str(node.arg)}^r"
    if isinstance(node, LeftInv):
        return f"{_atom_str(node.arg)}^l"
    return f"{_atom_str(node.left)}{_SYMBOL[type(node)]}{_atom_str(node.right)}"


def _atom_str(node: Expr) -> str:
    s = _expr_str(node)
    return f"({s})" if isinstance(node, (Product, LeftDiv, RightDiv)) else s


def to_string(ast: IdentityAst) -> str:
    """Fully parenthesized form with an explicit ``forall`` prefix."""
    prefix = f"forall {', '.join(ast.variables)}: " if ast.variables else ""
    return f"{prefix}{_expr_str(ast.lhs)} = {_expr_str(ast.rhs)}"


def _eval_array(node: Expr, t: LoopTable, env: dict[str, np.ndarray]) -> np.ndarray:
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, IdentityElement):
        return np.zeros((), dtype=np.int64)
    if isinstance(node, Product):
        return t.table[_eval_array(node.left, t, env), _eval_array(node.right, t, env)]
    if isinstance(node, LeftDiv):
        return t.ldiv_table[_eval_array(node.left, t, env), _eval_array(node.right, t, env)]
    if isinstance(node, RightDiv):
        return t.rdiv_table[_eval_array(node.left, t, env), _eval_array(node.right, t, env)]
    if isinstance(node, RightInv):
        return t.right_inverses[_eval_array(node.arg, t, env)]
    if isinstance(node, LeftInv):
        return t.left_inverses[_eval_array(node.arg, t, env)]
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_at(node: Expr, t: LoopTable, assignment: dict[str, int]) -> int:
    """Value of one expression under a single assignment (scalar path)."""
    if isinstance(node, Var):
        return assignment[node.name]
    if isinstance(node, IdentityElement):
        return 0
    if isinstance(node, Product):
        return t.mul(evaluate_at(node.left, t, assignment), evaluate_at(node.right, t, assignment))
    if isinstance(node, LeftDiv):
        return t.ldiv(evaluate_at(node.left, t, assignment), evaluate_at(node.right, t, assignment))
    if isinstance(node, RightDiv):
        return t.rdiv(evaluate_at(node.left, t, assignment), evaluate_at(node.right, t, assignment))
    if isinstance(node, RightInv):
        return t.ldiv(evaluate_at(node.arg, t, assignment), 0)
    if isinstance(node, LeftInv):
        return t.rdiv(0, evaluate_at(node.arg, t, assignment))
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_identity(ast: IdentityAst | str, t: LoopTable) -> IdentityVerdict:
    """Check the identity under all ``n**k`` assignments.

    The reported counterexample is the lexicographically first failing
    assignment, variables taken in ``ast.variables`` order.
    """
    if isinstance(ast, str):
        ast = parse_identity(ast)
    k = len(ast.variables)
    n = t.n
    env = {}
    for axis, name in enumerate(ast.variables):
        shape = [1] * k
        shape[axis] = n
        env[name] = np.arange(n, dtype=np.int64).reshape(shape)
    lhs = np.broadcast_to(_eval_array(ast.lhs, t, env), (n,) * k)
    rhs = np.broadcast_to(_eval_array(ast.rhs, t, env), (n,) * k)
    bad = lhs != rhs
    if not bad.any():
        return IdentityVerdict(True)
    idx = np.unravel_index(int(np.flatnonzero(bad)[0]), (n,) * k) if k else ()
    assignment = {name: int(v) for name, v in zip(ast.variables, idx)}
    return IdentityVerdict(False, assignment, int(lhs[idx]), int(rhs[idx]))


# -- bundled registry ---------------------------------------------------------

def _parse_registry(text: str) -> dict[str, str]:
    registry = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, src = line.partition(":")
        if not sep:
            raise ValueError(f"registry line {lineno}: expected 'name: identity'")
        registry[name.strip()] = src.strip()
    return registry


@lru_cache(maxsize=None)
def _bundled() -> dict[str, str]:
    text = resources.files("loopkit").joinpath("data/identities.txt").read_text()
    return _parse_registry(text)


_overrides: dict[str, str] = {}


def registry() -> dict[str, str]:
    """Class name to identity source, bundled entries plus overrides."""
    merged = dict(_bundled())
    merged.update(_overrides)
    return merged


def override_identity(name: str, src: str | None) -> None:
    """Replace (or with ``None`` restore) a registry entry for this process."""
    from . import properties

    if src is None:
        _overrides.pop(name, None)
    else:
        parse_identity(src)
        _overrides[name] = src
    _registered.cache_clear()
    properties.clear_caches()


@lru_cache(maxsize=None)
def _registered(name: str) -> IdentityAst:
    reg = registry()
    if name not in reg:
        raise KeyError(f"no identity registered under {name!r}")
    return parse_identity(reg[name])


def registered_identity(name: str) -> IdentityAst:
    return _registered(name)
