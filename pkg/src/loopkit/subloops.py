"""Subloops, nuclei, normality, quotients and Smarandache witnesses."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .table import LoopError, LoopTable, sub_table, validate_loop


class SubloopOrderCapExceeded(ValueError):
    pass


class NotNormal(ValueError):
    pass


def subloop_order_cap() -> int:
    return int(os.environ.get("LOOPKIT_SUBLOOP_CAP", "256"))


@dataclass(frozen=True)
class Subloop:
    elements: tuple[int, ...]
    is_subgroup: bool

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    @property
    def order(self) -> int:
        return len(self.elements)


def _closure_mask(tab: np.ndarray, mask: np.ndarray) -> np.ndarray:
    # finite sets closed under the product are closed under both divisions
    while True:
        idx = np.flatnonzero(mask)
        prod = tab[np.ix_(idx, idx)]
        new = mask.copy()
        new[prod.ravel()] = True
        if new.sum() == mask.sum():
            return mask
        mask = new


def _make(t: LoopTable, elements: Iterable[int]) -> Subloop:
    elements = tuple(sorted(int(x) for x in elements))
    idx = np.array(elements)
    sub = t.table[np.ix_(idx, idx)]
    # associativity on the subset, checked in the parent's labels
    lhs = t.table[sub[:, :, None], idx[None, None, :]]
    rhs = t.table[idx[:, None, None], sub[None, :, :]]
    return Subloop(elements, bool(np.array_equal(lhs, rhs)))


def generated_subloop(t: LoopTable, seed: Iterable[int]) -> Subloop:
    mask = np.zeros(t.n, dtype=bool)
    mask[0] = True
    for x in seed:
        mask[int(x)] = True
    return _make(t, np.flatnonzero(_closure_mask(t.table, mask)))


def _enumerate_masks(t: LoopTable) -> list[np.ndarray]:
    tab = t.table
    n = t.n
    start = np.zeros(n, dtype=bool)
    start[0] = True
    found = {start.tobytes(): start}
    queue = [start]
    while queue:
        s = queue.pop()
        for x in range(n):
            if s[x]:
                continue
            m = s.copy()
            m[x] = True
            m = _closure_mask(tab, m)
            key = m.tobytes()
            if key not in found:
                found[key] = m
                queue.append(m)
    return list(found.values())


@lru_cache(maxsize=1024)
def _subloops_cached(t: LoopTable) -> tuple[Subloop, ...]:
    subs = [_make(t, np.flatnonzero(m)) for m in _enumerate_masks(t)]
    subs.sort(key=lambda s: (len(s), s.elements))
    return tuple(subs)


def enumerate_subloops(t: LoopTable, cap: int | None = None) -> list[Subloop]:
    """Every subloop, including ``{0}`` and ``t`` itself, by size then elements."""
    cap = subloop_order_cap() if cap is None else cap
    if t.n > cap:
        raise SubloopOrderCapExceeded(f"order {t.n} exceeds subloop enumeration cap {cap}")
    return list(_subloops_cached(t))


def restrict(t: LoopTable, s: Subloop | Iterable[int], name: str | None = None) -> LoopTable:
    elements = s.elements if isinstance(s, Subloop) else tuple(sorted(s))
    return sub_table(t, elements, name)


# -- nuclei ------------------------------------------------------------------

def _nucleus_masks(t: LoopTable):
    tab = t.table
    ar = np.arange(t.n)
    a, x, y = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    left = tab[a, tab[x, y]] == tab[tab[a, x], y]
    middle = tab[x, tab[a, y]] == tab[tab[x, a], y]
    right = tab[x, tab[y, a]] == tab[tab[x, y], a]
    return tuple(np.all(m, axis=(1, 2)) for m in (left, middle, right))


def nuclei(t: LoopTable) -> tuple[Subloop, Subloop, Subloop, Subloop]:
    """Left, middle and right nuclei and the nucleus, as subloops."""
    left, middle, right = _nucleus_masks(t)
    nuc = left & middle & right
    return tuple(_make(t, np.flatnonzero(m)) for m in (left, middle, right, nuc))


def nucleus(t: LoopTable) -> Subloop:
    return nuclei(t)[3]


def centrum(t: LoopTable) -> Subloop:
    """Elements commuting with everything.

    This set need not be closed in a general loop; the returned object is
    built from the raw set and ``is_subgroup`` refers to that set only.
    """
    comm = np.all(t.table == t.table.T, axis=1)
    return _make(t, np.flatnonzero(comm))


def center(t: LoopTable) -> Subloop:
    n_set = set(nucleus(t).elements)
    return _make(t, [x for x in centrum(t).elements if x in n_set])


def is_closed(t: LoopTable, elements: Iterable[int]) -> bool:
    els = np.array(sorted(set(elements)))
    mask = np.zeros(t.n, dtype=bool)
    mask[els] = True
    return bool(mask[t.table[np.ix_(els, els)]].all())


# -- normality and quotients ---------------------------------------------------

def _elements(s) -> tuple[int, ...]:
    return s.elements if isinstance(s, Subloop) else tuple(sorted(s))


def is_normal(t: LoopTable, s: Subloop | Iterable[int]) -> bool:
    """xS = Sx, (xS)y = x(Sy) and x(yS) = (xy)S for all x, y, as sets."""
    els = np.array(_elements(s))
    tab = t.table
    ar = np.arange(t.n)
    x, y, e = ar[:, None, None], ar[None, :, None], els[None, None, :]
    if not np.array_equal(np.sort(tab[:, els], axis=1), np.sort(tab[els, :].T, axis=1)):
        return False
    pairs = [
        (tab[tab[x, e], y], tab[x, tab[e, y]]),  # (xS)y, x(Sy)
        (tab[x, tab[y, e]], tab[tab[x, y], e]),  # x(yS), (xy)S
    ]
    return all(np.array_equal(np.sort(p, axis=2), np.sort(q, axis=2)) for p, q in pairs)


def cosets(t: LoopTable, s: Subloop | Iterable[int]) -> list[tuple[int, ...]]:
    els = np.array(_elements(s))
    seen = set()
    out = []
    for x in range(t.n):
        coset = tuple(sorted(int(v) for v in t.table[x, els]))
        if coset not in seen:
            seen.add(coset)
            out.append(coset)
    return out


def quotient(t: LoopTable, s: Subloop | Iterable[int], name: str | None = None) -> LoopTable:
    """The loop of cosets xS; raises NotNormal for a non-normal subloop."""
    if not is_normal(t, s):
        raise NotNormal("subloop is not normal")
    parts = cosets(t, s)
    which = np.empty(t.n, dtype=np.int64)
    for i, c in enumerate(parts):
        which[list(c)] = i
    assert sum(len(c) for c in parts) == t.n, "cosets do not partition the loop"
    k = len(parts)
    arr = np.empty((k, k), dtype=np.int64)
    for i, ci in enumerate(parts):
        for j, cj in enumerate(parts):
            vals = {int(which[t.table[x, y]]) for x in ci for y in cj}
            assert len(vals) == 1, "coset product depends on representatives"
            arr[i, j] = vals.pop()
    return validate_loop(arr, name)


# -- Smarandache witnesses --------------------------------------------------------

@dataclass(frozen=True)
class SmarandacheWitness:
    class_name: str
    subloop: Subloop
    nontrivial: bool
    proper: bool


def witness_candidates(t: LoopTable, allow_improper: bool = False) -> list[Subloop]:
    subs = enumerate_subloops(t)
    return [s for s in subs if 1 < len(s) and (allow_improper or len(s) < t.n)]


def cyclic_subloops(t: LoopTable) -> list[Subloop]:
    """Distinct nontrivial one-generated subloops, by size then elements."""
    seen = {}
    for x in range(1, t.n):
        s = generated_subloop(t, [x])
        seen.setdefault(s.elements, s)
    return sorted(seen.values(), key=lambda s: (len(s), s.elements))


def _hereditary(class_name: str) -> bool:
    from .properties import COMPOSITES, IDENTITY_CLASSES

    if class_name == "group" or class_name in IDENTITY_CLASSES:
        return True
    parts = COMPOSITES.get(class_name)
    return parts is not None and all(_hereditary(p) for p in parts)


@lru_cache(maxsize=65536)
def _witness(t: LoopTable, class_name: str, allow_improper: bool, full: bool) -> SmarandacheWitness | None:
    from .properties import check_class

    if full or not _hereditary(class_name):
        candidates = witness_candidates(t, allow_improper)
    else:
        # a smallest witness of a subloop-closed class is generated by any of its
        # nonzero elements, so the one-generated subloops contain every minimal one
        candidates = [s for s in cyclic_subloops(t) if allow_improper or len(s) < t.n]
    for s in candidates:
        if bool(check_class(restrict(t, s), class_name)):
            return SmarandacheWitness(class_name, s, True, len(s) < t.n)
    return None


def smarandache_witness(
    t: LoopTable, class_name: str, allow_improper: bool = False, *, full_enumeration: bool = False
) -> SmarandacheWitness | None:
    """Smallest (then lexicographically first) nontrivial subloop in the class.

    By default the subloop must be proper; ``allow_improper`` also admits
    the whole loop.  Classes closed under subloops (identity classes and
    groups) are searched among one-generated subloops unless
    ``full_enumeration`` is set; the answer is the same.
    """
    from .properties import require_class

    require_class(class_name)
    return _witness(t, class_name, allow_improper, full_enumeration)


def is_smarandache(t: LoopTable, class_name: str = "group", allow_improper: bool = False) -> bool:
    return smarandache_witness(t, class_name, allow_improper) is not None
