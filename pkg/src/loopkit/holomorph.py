"""The holomorph Aut(L) x L of a loop and the nuclear/centrum/central tests."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .morphisms import AutGroup, automorphism_group
from .subloops import center, centrum, nucleus
from .table import LoopTable, format_table


class HolomorphOrderCapExceeded(ValueError):
    pass


def holomorph_order_cap() -> int:
    return int(os.environ.get("LOOPKIT_HOLOMORPH_CAP", "400"))


@dataclass(frozen=True)
class HolomorphTable:
    """Pairs (alpha_i, x) stored at index ``i * n + x``.

    ``i`` indexes ``aut.elements``, whose first entry is the identity map,
    so the holomorph identity (I, 0) sits at index 0.
    """

    base: LoopTable
    aut: AutGroup
    table: LoopTable

    @property
    def order(self) -> int:
        return self.table.n

    def label(self, index: int) -> tuple[int, int]:
        return divmod(index, self.base.n)

    def index(self, aut_index: int, x: int) -> int:
        return aut_index * self.base.n + x

    @property
    def labels(self) -> list[tuple[int, int]]:
        return [self.label(i) for i in range(self.order)]

    def elements_over(self, aut_indices, base_elements) -> list[int]:
        return sorted(self.index(i, x) for i in aut_indices for x in base_elements)

    def to_text(self) -> str:
        comments = [f"holomorph of {self.base.name or 'loop'}: |Aut| = {self.aut.order}, order {self.order}"]
        comments += [f"automorphism {i}: {p.images}" for i, p in enumerate(self.aut.elements)]
        body = format_table(self.table, comments)
        labels = "".join(f"# {i} = (alpha_{a}, {x})\n" for i, (a, x) in enumerate(self.labels))
        return labels + body


@lru_cache(maxsize=512)
def build_holomorph(t: LoopTable, cap: int | None = None) -> HolomorphTable:
    """Explicit table of ``(a, x) o (b, y) = (ab, (x b) * y)``."""
    aut = automorphism_group(t)
    n = t.n
    m = aut.order
    cap = holomorph_order_cap() if cap is None else cap
    if m * n > cap:
        raise HolomorphOrderCapExceeded(f"holomorph order {m * n} exceeds cap {cap}")
    A = aut.arrays
    comp = aut.composition
    i = np.repeat(np.arange(m), n)
    x = np.tile(np.arange(n), m)
    # entry [(i,x), (j,y)] = comp[i,j]*n + t[A[j][x], y]
    first = comp[i[:, None], i[None, :]]
    second = t.table[A[i[None, :], x[:, None]], x[None, :]]
    arr = first * n + second
    name = f"H({t.name})" if t.name else None
    return HolomorphTable(t, aut, LoopTable(arr, name))


def componentwise_inverse(h: HolomorphTable, index: int) -> int | None:
    """(alpha^-1, (x alpha^-1)^-1) when the base has two-sided inverses."""
    if not h.base.has_two_sided_inverses():
        return None
    a, x = h.label(index)
    ainv = int(h.aut.inverse_index[a])
    y = int(h.aut.arrays[ainv][x])
    return h.index(ainv, h.base.right_inverse(y))


@dataclass(frozen=True)
class HolomorphClass:
    """Which of N(L), C(L), Z(L) contain the elements x^-1(x alpha) or (x alpha)x^-1.

    ``nuclear``/``centrum``/``central`` use the uniform reading (one of the two
    forms holds for every x and alpha); the ``*_pointwise`` fields let each
    pair pick its own form.  ``direction`` names the forms that hold
    uniformly.  ``right_inverses_only`` flags a base without two-sided
    inverses, where x^-1 is read as the right inverse.
    """

    nuclear: bool
    centrum: bool
    central: bool
    nuclear_pointwise: bool
    centrum_pointwise: bool
    central_pointwise: bool
    direction: dict
    right_inverses_only: bool


def _conjugate_elements(t: LoopTable, aut: AutGroup) -> tuple[np.ndarray, np.ndarray]:
    inv = t.right_inverses
    xa = aut.arrays  # [alpha, x] -> x alpha
    ar = np.arange(t.n)[None, :]
    left_form = t.table[inv[ar], xa]  # x^-1 (x alpha)
    right_form = t.table[xa, inv[ar]]  # (x alpha) x^-1
    return left_form, right_form


def classify_holomorph(h: HolomorphTable | LoopTable) -> HolomorphClass:
    t = h.base if isinstance(h, HolomorphTable) else h
    aut = h.aut if isinstance(h, HolomorphTable) else automorphism_group(t)
    left_form, right_form = _conjugate_elements(t, aut)
    sets = {"nuclear": nucleus(t).elements, "centrum": centrum(t).elements, "central": center(t).elements}
    uniform, pointwise, direction = {}, {}, {}
    for key, elements in sets.items():
        mask = np.zeros(t.n, dtype=bool)
        mask[list(elements)] = True
        lf, rf = mask[left_form], mask[right_form]
        forms = []
        if lf.all():
            forms.append("x^-1*(x alpha)")
        if rf.all():
            forms.append("(x alpha)*x^-1")
        uniform[key] = bool(forms)
        pointwise[key] = bool((lf | rf).all())
        direction[key] = forms
    return HolomorphClass(
        uniform["nuclear"], uniform["centrum"], uniform["central"],
        pointwise["nuclear"], pointwise["centrum"], pointwise["central"],
        direction, not t.has_two_sided_inverses(),
    )


@dataclass(frozen=True)
class CriterionResult:
    holds: bool
    aut_abelian: bool
    counterexample: dict | None
    right_inverses_only: bool

    def __bool__(self) -> bool:
        return self.holds


def aipl_criterion(t: LoopTable, aut: AutGroup | None = None, elements=None) -> CriterionResult:
    """Aut abelian and (x b^-1)J * yJ = (x * (y a^-1))J for all a, b, x, y.

    ``J`` is the inversion map (right inverses when they are not two-sided).
    ``elements`` restricts x and y to a subset, ``aut`` the maps a and b.
    """
    aut = automorphism_group(t) if aut is None else aut
    J = t.right_inverses
    abelian = aut.is_abelian()
    if not abelian:
        i, j = aut.commutator_counterexample()
        return CriterionResult(False, False, {"alpha": i, "beta": j, "reason": "automorphisms do not commute"},
                               not t.has_two_sided_inverses())
    inv = aut.arrays[aut.inverse_index]  # row k: images of the inverse of map k
    els = np.arange(t.n) if elements is None else np.asarray(sorted(elements), dtype=np.int64)
    # axes: alpha, beta, x, y
    xb = inv[:, els][None, :, :, None]
    ya = inv[:, els][:, None, None, :]
    x = els[None, None, :, None]
    y = els[None, None, None, :]
    lhs = t.table[J[xb], J[y]]
    rhs = J[t.table[x, ya]]
    lhs, rhs = np.broadcast_arrays(lhs, rhs)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, xi, yi = (int(v) for v in bad[0])
        return CriterionResult(False, True, {"alpha": a, "beta": b, "x": int(els[xi]), "y": int(els[yi])},
                               not t.has_two_sided_inverses())
    return CriterionResult(True, True, None, not t.has_two_sided_inverses())

