"""Cayley-table representation of finite loops.

Elements are the integers ``0..n-1`` and the identity is always ``0``.
Maps act on the right: for permutations ``p`` and ``q`` the product
``p * q`` sends ``x`` to ``q(p(x))``, so ``x(pq) = (xp)q``.
"""

from __future__ import annotations

import itertools
import math
import re
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class LoopError(ValueError):
    """Base class for malformed loop input."""


class TableSyntaxError(LoopError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateInRow(LoopError):
    def __init__(self, row: int, entry: int):
        self.row = row
        self.entry = entry
        super().__init__(f"row {row} repeats entry {entry}")


class DuplicateInColumn(LoopError):
    def __init__(self, column: int, entry: int):
        self.column = column
        self.entry = entry
        super().__init__(f"column {column} repeats entry {entry}")


class NoTwoSidedIdentity(LoopError):
    def __init__(self):
        super().__init__("table has no two-sided identity element")


class Permutation:
    """An immutable bijection on ``0..n-1``, stored as its image list."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(n))
        images[a], images[b] = b, a
        return cls(images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __getitem__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # x(pq) = (xp)q
        return Permutation(other.images[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycle_type(self) -> tuple[int, ...]:
        seen = [False] * len(self.images)
        lengths = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths))

    def array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def cycles(self) -> str:
        """Cycle notation, ``()`` for the identity."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append("(%s)" % " ".join(map(str, cycle)))
        return "".join(out) or "()"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class LoopTable:
    """A finite loop given by its Cayley table with identity ``0``.

    Construct through :func:`validate_loop` (or :func:`parse_table`) unless
    the table is already known to be a normalized Latin square; the
    constructor itself checks the invariants anyway.
    """

    def __init__(self, table, name: str | None = None, *, _checked: bool = False):
        arr = np.asarray(table, dtype=np.int64)
        if not _checked:
            _check_latin(arr)
            n = arr.shape[0]
            if not (np.array_equal(arr[0], np.arange(n)) and np.array_equal(arr[:, 0], np.arange(n))):
                raise NoTwoSidedIdentity()
        self.table = _frozen(arr)
        self.n = int(arr.shape[0])
        self.name = name
        n = self.n
        # ldiv[x, z] = x\z and rdiv[z, y] = z/y, from inverse row/column maps
        ldiv = np.empty((n, n), dtype=np.int64)
        rdiv = np.empty((n, n), dtype=np.int64)
        cols = np.arange(n)
        ldiv[np.arange(n)[:, None], arr] = cols[None, :]
        rdiv[arr, cols[None, :]] = np.arange(n)[:, None]
        self.ldiv_table = _frozen(ldiv)
        self.rdiv_table = _frozen(rdiv)

    @property
    def order(self) -> int:
        return self.n

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def ldiv(self, x: int, z: int) -> int:
        """The unique ``y`` with ``x*y = z``."""
        return int(self.ldiv_table[x, z])

    def rdiv(self, z: int, y: int) -> int:
        """The unique ``x`` with ``x*y = z``."""
        return int(self.rdiv_table[z, y])

    def left_translation(self, x: int) -> Permutation:
        return Permutation(self.table[x, :])

    def right_translation(self, x: int) -> Permutation:
        return Permutation(self.table[:, x])

    def left_inverse(self, x: int) -> int:
        return int(self.rdiv_table[0, x])

    def right_inverse(self, x: int) -> int:
        return int(self.ldiv_table[x, 0])

    @cached_property
    def left_inverses(self) -> np.ndarray:
        return _frozen(self.rdiv_table[0, :])

    @cached_property
    def right_inverses(self) -> np.ndarray:
        return _frozen(self.ldiv_table[:, 0])

    def has_two_sided_inverses(self) -> bool:
        return bool(np.array_equal(self.left_inverses, self.right_inverses))

    def is_associative(self) -> bool:
        return _assoc(self.table)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    def with_name(self, name: str | None) -> "LoopTable":
        return LoopTable(self.table, name, _checked=True)

    def __eq__(self, other):
        return isinstance(other, LoopTable) and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LoopTable{label} order={self.n}>"


def _assoc(t: np.ndarray) -> bool:
    # (x*y)*z versus x*(y*z) for all triples at once
    lhs = t[t]  # lhs[x, y, z] = (x*y)*z
    rhs = t[np.arange(t.shape[0])[:, None, None], t[None, :, :]]  # x*(y*z)
    return bool(np.array_equal(lhs, rhs))


def associativity_counterexample(t: LoopTable) -> tuple[int, int, int] | None:
    a = t.table
    lhs = a[a]
    rhs = a[np.arange(t.n)[:, None, None], a[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def _check_latin(arr: np.ndarray) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise LoopError(f"table is not square: shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        raise LoopError("empty table")
    if arr.min() < 0 or arr.max() >= n:
        raise LoopError(f"entries must lie in 0..{n - 1}")
    for x in range(n):
        seen = set()
        for v in arr[x].tolist():
            if v in seen:
                raise DuplicateInRow(x, v)
            seen.add(v)
    for y in range(n):
        seen = set()
        for v in arr[:, y].tolist():
            if v in seen:
                raise DuplicateInColumn(y, v)
            seen.add(v)


def find_identity(arr: np.ndarray) -> int | None:
    n = arr.shape[0]
    ident = np.arange(n)
    for e in range(n):
        if np.array_equal(arr[e], ident) and np.array_equal(arr[:, e], ident):
            return e
    return None


def _conjugate(arr: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Table of the copy transported along ``sigma``: s(x)*'s(y) = s(x*y)."""
    inv = np.argsort(sigma)
    return sigma[arr[inv[:, None], inv[None, :]]]


def validate_loop(table: Sequence[Sequence[int]] | np.ndarray, name: str | None = None) -> LoopTable:
    """Check the loop axioms and return a table whose identity is ``0``.

    If the identity is some ``e != 0`` the elements ``e`` and ``0`` are
    swapped.
    """
    arr = np.asarray(table, dtype=np.int64)
    _check_latin(arr)
    e = find_identity(arr)
    if e is None:
        raise NoTwoSidedIdentity()
    if e != 0:
        swap = np.arange(arr.shape[0])
        swap[0], swap[e] = e, 0
        arr = _conjugate(arr, swap)
    return LoopTable(arr, name, _checked=True)


def relabel_with_map(t: LoopTable, sigma: Permutation) -> tuple[LoopTable, Permutation]:
    """Transport ``t`` along ``sigma``; returns the copy and the actual map used.

    When ``sigma`` moves the identity, it is followed by the transposition
    that brings the image of ``0`` back to ``0``; the returned permutation is
    that composite, an isomorphism from ``t`` onto the returned table.
    """
    if len(sigma) != t.n:
        raise ValueError("permutation size does not match loop order")
    effective = sigma
    c = sigma(0)
    if c != 0:
        effective = sigma * Permutation.transposition(t.n, 0, c)
    arr = _conjugate(t.table, effective.array())
    return LoopTable(arr, t.name, _checked=True), effective


def relabel(t: LoopTable, sigma: Permutation) -> LoopTable:
    return relabel_with_map(t, sigma)[0]


_PERM_CACHE: dict[int, np.ndarray] = {}

# canonical_form is (n-1)! work; larger orders must opt in
CANONICAL_MAX_ORDER = 8


def identity_fixing_permutations(n: int) -> np.ndarray:
    """All permutations of ``0..n-1`` fixing ``0``, one per row, lexicographic."""
    if n not in _PERM_CACHE:
        rest = np.array(list(itertools.permutations(range(1, n))), dtype=np.int64).reshape(math.factorial(n - 1), n - 1)
        perms = np.hstack([np.zeros((rest.shape[0], 1), dtype=np.int64), rest])
        perms.setflags(write=False)
        _PERM_CACHE[n] = perms
    return _PERM_CACHE[n]


def _canonical_array(t: LoopTable) -> np.ndarray:
    n = t.n
    if n > CANONICAL_MAX_ORDER:
        raise ValueError(
            f"canonical_form needs {math.factorial(n - 1)} relabelings at order {n}; "
            f"raise loopkit.table.CANONICAL_MAX_ORDER to allow it"
        )
    perms = identity_fixing_permutations(n)
    inv = np.argsort(perms, axis=1)
    idx = t.table[inv[:, :, None], inv[:, None, :]]
    images = np.take_along_axis(perms[:, None, :].repeat(n, axis=1), idx, axis=2)
    flat = images.reshape(len(perms), n * n)
    cand = np.arange(len(perms))
    # row 0 and column 0 are fixed by every candidate
    for col in range(n + 1, n * n):
        if len(cand) == 1:
            break
        vals = flat[cand, col]
        cand = cand[vals == vals.min()]
    return flat[cand[0]]


def canonical_form(t: LoopTable) -> bytes:
    """Lexicographically least flattened table over identity-fixing relabelings.

    Equal for two loops exactly when they are isomorphic.
    """
    return _canonical_array(t).astype(np.uint8 if t.n <= 256 else np.uint16).tobytes()


def canonical_table(t: LoopTable) -> LoopTable:
    arr = _canonical_array(t).reshape(t.n, t.n)
    return LoopTable(arr, t.name, _checked=True)


def sub_table(t: LoopTable, elements: Sequence[int], name: str | None = None) -> LoopTable:
    """The loop on a closed subset, relabeled by the order of ``elements``.

    ``elements`` must be sorted and start with ``0``.
    """
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    arr = t.table[np.ix_(elements, elements)]
    try:
        mapped = np.vectorize(index.__getitem__, otypes=[np.int64])(arr)
    except KeyError as exc:
        raise LoopError(f"subset is not closed: {exc}") from None
    return validate_loop(mapped, name)


# -- text format ----------------------------------------------------------

_NAME_RE = re.compile(r"^name:\s*(.*?)\s*$")


def parse_table(text: str) -> list[LoopTable]:
    """Parse catalog text into validated loops (identities moved to 0).

    Lines starting with ``#`` are comments; an optional ``name: <label>``
    line precedes a table; a table is its order on one line followed by
    that many rows.  Tables are separated by blank lines.
    """
    lines = text.splitlines()
    loops: list[LoopTable] = []
    i = 0
    pending_name = None
    while i < len(lines):
        raw = lines[i].strip()
        lineno = i + 1
        if not raw or raw.startswith("#"):
            i += 1
            continue
        m = _NAME_RE.match(raw)
        if m:
            if pending_name is not None:
                raise TableSyntaxError("two name lines without a table", lineno)
            pending_name = m.group(1)
            i += 1
            continue
        try:
            n = int(raw)
        except ValueError:
            raise TableSyntaxError(f"expected table order, got {raw!r}", lineno) from None
        if n <= 0:
            raise TableSyntaxError(f"order must be positive, got {n}", lineno)
        rows = []
        i += 1
        while len(rows) < n:
            if i >= len(lines):
                raise TableSyntaxError(f"expected {n} rows, found {len(rows)}", len(lines))
            row_text = lines[i].strip()
            if row_text.startswith("#"):
                i += 1
                continue
            if not row_text:
                raise TableSyntaxError(f"expected {n} rows, found {len(rows)}", i + 1)
            try:
                row = [int(tok) for tok in row_text.split()]
            except ValueError:
                raise TableSyntaxError(f"non-integer entry in {row_text!r}", i + 1) from None
            if len(row) != n:
                raise TableSyntaxError(f"row has {len(row)} entries, expected {n} (non-square table)", i + 1)
            for v in row:
                if not 0 <= v < n:
                    raise TableSyntaxError(f"entry {v} out of range 0..{n - 1}", i + 1)
            rows.append(row)
            i += 1
        try:
            loops.append(validate_loop(rows, pending_name))
        except LoopError as exc:
            raise TableSyntaxError(f"table starting here is not a loop: {exc}", lineno) from exc
        pending_name = None
    if pending_name is not None:
        raise TableSyntaxError("name line without a table", len(lines))
    return loops


def format_table(t: LoopTable, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    if t.name:
        out.append(f"name: {t.name}")
    out.append(str(t.n))
    width = len(str(t.n - 1))
    for row in t.rows():
        out.append(" ".join(str(v).rjust(width) for v in row))
    return "\n".join(out) + "\n"


def format_catalog(loops: Iterable[LoopTable], header: Sequence[str] = ()) -> str:
    parts = [f"# {h}\n" for h in header]
    body = "\n".join(format_table(t) for t in loops)
    return "".join(parts) + ("\n" if parts else "") + body


# -- standard examples ------------------------------------------------------

def cyclic(n: int) -> LoopTable:
    i = np.arange(n)
    return LoopTable((i[:, None] + i[None, :]) % n, f"Z{n}", _checked=True)


def klein_four() -> LoopTable:
    i = np.arange(4)
    return LoopTable(i[:, None] ^ i[None, :], "V4", _checked=True)


def direct_product(a: LoopTable, b: LoopTable, name: str | None = None) -> LoopTable:
    """Pairs (x, y) indexed as ``x * b.n + y``."""
    n = a.n * b.n
    arr = np.empty((n, n), dtype=np.int64)
    ax, bx = np.divmod(np.arange(n), b.n)
    arr[:, :] = a.table[ax[:, None], ax[None, :]] * b.n + b.table[bx[:, None], bx[None, :]]
    return LoopTable(arr, name, _checked=True)


def symmetric_group_s3() -> LoopTable:
    """S3 on permutations of three points, identity first, composed left to right."""
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    arr = [[index[tuple(q[p[k]] for k in range(3))] for q in perms] for p in perms]
    return LoopTable(arr, "S3")
