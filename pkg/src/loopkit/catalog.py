"""Exhaustive enumeration of loops of small order up to isomorphism."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from .table import LoopTable, canonical_form, canonical_table, format_catalog, parse_table


def default_max_order() -> int:
    return int(os.environ.get("LOOPKIT_MAX_ORDER", "6"))


class OrderCapExceeded(ValueError):
    pass


def reduced_latin_squares(n: int) -> Iterator[np.ndarray]:
    """Latin squares with row 0 and column 0 equal to ``0..n-1``.

    Cells are filled row by row; every yielded array is a fresh copy.
    """
    grid = np.zeros((n, n), dtype=np.int64)
    grid[0, :] = np.arange(n)
    grid[:, 0] = np.arange(n)
    if n <= 2:
        yield grid.copy()
        return
    full = (1 << n) - 1
    row_used = [1 << r for r in range(n)]
    col_used = [1 << c for c in range(n)]
    row_used[0] = col_used[0] = full
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]
    values = grid.tolist()

    def fill(k: int) -> Iterator[np.ndarray]:
        if k == len(cells):
            yield np.array(values, dtype=np.int64)
            return
        r, c = cells[k]
        free = full & ~(row_used[r] | col_used[c])
        while free:
            bit = free & -free
            free ^= bit
            v = bit.bit_length() - 1
            values[r][c] = v
            row_used[r] |= bit
            col_used[c] |= bit
            yield from fill(k + 1)
            row_used[r] ^= bit
            col_used[c] ^= bit

    yield from fill(0)


@dataclass
class Catalog:
    """All loops of one order, one representative per isomorphism class."""

    order: int
    loops: list[LoopTable]
    automorphism_counts: list[int] = field(default_factory=list)
    reduced_square_count: int | None = None
    _counts: dict[str, int] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.loops)

    def __iter__(self):
        return iter(self.loops)

    def counts(self, classes=None) -> dict[str, int]:
        """Number of catalog loops in each property class."""
        from .properties import CLASS_NAMES, check_class

        classes = list(classes or CLASS_NAMES)
        return {c: sum(bool(check_class(t, c)) for t in self.loops) for c in classes}

    def to_text(self) -> str:
        return format_catalog(self.loops, header=[f"all loops of order {self.order} up to isomorphism: {len(self.loops)}"])


def loop_name(order: int, index: int) -> str:
    return f"L{order}.{index}"


def enumerate_loops(n: int, *, allow_large: bool = False) -> Catalog:
    """Every loop of order ``n`` up to isomorphism, sorted by canonical form.

    Loops are stored in canonical form and named ``L<n>.<k>`` with ``k``
    counted from 0 in that order.
    """
    if n < 1:
        raise ValueError("order must be positive")
    cap = default_max_order()
    if n > cap and not allow_large:
        raise OrderCapExceeded(f"order {n} exceeds the enumeration cap {cap} (set LOOPKIT_MAX_ORDER or allow_large)")
    seen: dict[bytes, int] = {}
    total = 0
    for grid in reduced_latin_squares(n):
        total += 1
        key = canonical_form(LoopTable(grid, _checked=True))
        seen[key] = seen.get(key, 0) + 1
    keys = sorted(seen)
    loops = []
    for k, key in enumerate(keys):
        arr = np.frombuffer(key, dtype=np.uint8).astype(np.int64).reshape(n, n)
        loops.append(LoopTable(arr, loop_name(n, k), _checked=True))
    # orbit sizes: each class of size (n-1)!/|Aut| among reduced squares
    from math import factorial

    aut_counts = [factorial(n - 1) // seen[key] for key in keys]
    return Catalog(n, loops, aut_counts, total)


def canonicalize(t: LoopTable) -> LoopTable:
    return canonical_table(t)


def write_catalog_dir(catalogs: list[Catalog], directory: str | os.PathLike) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for cat in catalogs:
        path = directory / f"order{cat.order}.cat"
        path.write_text(cat.to_text())
        paths.append(path)
    return paths


def load_catalog(path: str | os.PathLike) -> list[LoopTable]:
    """Loops from a catalog file, or from every ``order<N>.cat`` in a directory."""
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("order*.cat"), key=lambda p: int(p.stem[5:]) if p.stem[5:].isdigit() else 0)
    else:
        files = [path]
    loops = []
    for f in files:
        for k, t in enumerate(parse_table(f.read_text())):
            loops.append(t if t.name else t.with_name(f"{f.stem}#{k}"))
    return loops
