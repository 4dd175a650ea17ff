"""Isomorphisms, automorphism groups and isotopisms between finite loops."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from .table import LoopTable, Permutation, validate_loop


def is_homomorphism(a: LoopTable, b: LoopTable, images: Sequence[int] | np.ndarray) -> bool:
    img = np.asarray(images, dtype=np.int64)
    return bool(np.array_equal(img[a.table], b.table[img[:, None], img[None, :]]))


def _signatures(t: LoopTable) -> list[tuple]:
    """Per-element isomorphism invariants: cycle types of both translations."""
    return [(t.left_translation(x).cycle_type(), t.right_translation(x).cycle_type()) for x in range(t.n)]


_sig_cache: dict[LoopTable, list[tuple]] = {}


def signatures(t: LoopTable) -> list[tuple]:
    sig = _sig_cache.get(t)
    if sig is None:
        if len(_sig_cache) > 4096:
            _sig_cache.clear()
        sig = _sig_cache[t] = _signatures(t)
    return sig


def closure_size(t: LoopTable, seed: Sequence[int]) -> int:
    return len(_close(t, [0], list(seed))[0])


def _close(t: LoopTable, members: list[int], extra: list[int]):
    """Extend a closed member list by ``extra`` and close under products.

    Returns the new member list and the derivations ``(x, y, x*y)`` of
    every element added after ``extra``.
    """
    tab = t.table
    members = list(members)
    inset = set(members)
    derivs = []
    start = len(members)
    for g in extra:
        if g not in inset:
            members.append(g)
            inset.add(g)
    k = start
    while k < len(members):
        z = members[k]
        for j in range(k + 1):
            w = members[j]
            for p in (int(tab[w, z]), int(tab[z, w])):
                if p not in inset:
                    inset.add(p)
                    members.append(p)
                    derivs.append((w, z, p) if p == tab[w, z] else (z, w, p))
        k += 1
    return members, derivs


@dataclass
class _Step:
    generator: int
    derivations: list[tuple[int, int, int]]
    covered: list[int]


def _plan(t: LoopTable) -> list[_Step]:
    """Generators chosen by largest closure first, with derivation lists."""
    members = [0]
    steps = []
    while len(members) < t.n:
        inset = set(members)
        best, best_size = None, -1
        for g in range(t.n):
            if g in inset:
                continue
            size = len(_close(t, members, [g])[0])
            if size > best_size:
                best, best_size = g, size
        members, derivs = _close(t, members, [best])
        steps.append(_Step(best, derivs, list(members)))
    return steps


def _search(a: LoopTable, b: LoopTable, first_only: bool) -> Iterator[Permutation]:
    n = a.n
    if b.n != n:
        return
    sig_a = signatures(a)
    sig_b = signatures(b)
    if sorted(sig_a) != sorted(sig_b):
        return
    by_sig: dict[tuple, list[int]] = {}
    for y, s in enumerate(sig_b):
        by_sig.setdefault(s, []).append(y)
    steps = _plan(a)
    img = [-1] * n
    img[0] = 0
    used = [False] * n
    used[0] = True
    ta, tb = a.table, b.table

    def consistent(covered: list[int]) -> bool:
        c = np.array(covered)
        m = np.array(img)
        return bool(np.array_equal(m[ta[np.ix_(c, c)]], tb[np.ix_(m[c], m[c])]))

    def rec(k: int) -> Iterator[Permutation]:
        if k == len(steps):
            if is_homomorphism(a, b, img):
                yield Permutation(img)
            return
        step = steps[k]
        g = step.generator
        for c in by_sig[sig_a[g]]:
            if used[c]:
                continue
            img[g] = c
            used[c] = True
            assigned = [g]
            ok = True
            for x, y, z in step.derivations:
                v = int(tb[img[x], img[y]])
                if used[v] or sig_b[v] != sig_a[z]:
                    ok = False
                    break
                img[z] = v
                used[v] = True
                assigned.append(z)
            if ok and consistent(step.covered):
                yield from rec(k + 1)
            for z in assigned:
                used[img[z]] = False
                img[z] = -1

    yield from rec(0)


def find_isomorphism(a: LoopTable, b: LoopTable) -> Permutation | None:
    """An isomorphism from ``a`` onto ``b`` (fixing 0), or None if none exists."""
    for sigma in _search(a, b, True):
        return sigma
    return None


def isomorphic(a: LoopTable, b: LoopTable) -> bool:
    return find_isomorphism(a, b) is not None


class AutGroup:
    """The automorphism group as an explicit, sorted list of permutations.

    The identity permutation comes first.  Composition follows the
    left-to-right convention of :class:`Permutation`.
    """

    def __init__(self, elements: Sequence[Permutation], n: int):
        self.elements = sorted(elements)
        self.n = n
        self.index = {p: i for i, p in enumerate(self.elements)}
        if not self.elements or not self.elements[0].is_identity():
            raise ValueError("automorphism list must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> Permutation:
        return self.elements[i]

    def __contains__(self, p: Permutation) -> bool:
        return p in self.index

    @cached_property
    def arrays(self) -> np.ndarray:
        """Row ``i`` holds the images of automorphism ``i``."""
        arr = np.array([p.images for p in self.elements], dtype=np.int64).reshape(len(self.elements), self.n)
        arr.setflags(write=False)
        return arr

    @cached_property
    def composition(self) -> np.ndarray:
        """``composition[i, j]`` is the index of ``elements[i] * elements[j]``."""
        m = len(self.elements)
        comp = np.empty((m, m), dtype=np.int64)
        for i, p in enumerate(self.elements):
            for j, q in enumerate(self.elements):
                comp[i, j] = self.index[p * q]
        comp.setflags(write=False)
        return comp

    @cached_property
    def inverse_index(self) -> np.ndarray:
        return np.array([self.index[p.inverse()] for p in self.elements], dtype=np.int64)

    def is_closed(self) -> bool:
        try:
            self.composition
        except KeyError:
            return False
        return all(p.inverse() in self.index for p in self.elements)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.composition, self.composition.T))

    def commutator_counterexample(self) -> tuple[int, int] | None:
        bad = np.argwhere(self.composition != self.composition.T)
        return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))

    def __repr__(self):
        return f"<AutGroup order={self.order} on {self.n} points>"


@lru_cache(maxsize=2048)
def automorphism_group(t: LoopTable) -> AutGroup:
    group = AutGroup(list(_search(t, t, False)), t.n)
    for p in group.elements:
        assert is_homomorphism(t, t, p.images)
    return group


def stabilizer_automorphisms(t: LoopTable, subloop: Sequence[int]) -> AutGroup:
    """Automorphisms of ``t`` mapping the subloop into itself."""
    members = set(getattr(subloop, "elements", subloop))
    keep = [p for p in automorphism_group(t) if all(p(s) in members for s in members)]
    return AutGroup(keep, t.n)


@dataclass(frozen=True)
class IsotopismTriple:
    """Bijections with ``x U (*) y V = (x . y) W``, the target product ``(*)``."""

    u: Permutation
    v: Permutation
    w: Permutation

    def holds(self, a: LoopTable, b: LoopTable) -> bool:
        u, v, w = self.u.array(), self.v.array(), self.w.array()
        return bool(np.array_equal(b.table[u[:, None], v[None, :]], w[a.table]))


def principal_isotope(t: LoopTable, f: int, g: int) -> LoopTable:
    """The loop ``x o y = (x/g)(f\\y)``, identity moved to 0.

    Its raw identity is ``f*g``, swapped with 0 by validation.
    """
    arr = t.table[t.rdiv_table[:, g][:, None], t.ldiv_table[f, :][None, :]]
    return validate_loop(arr)


def find_isotopism(a: LoopTable, b: LoopTable) -> IsotopismTriple | None:
    """Search the ``n**2`` principal isotopes of ``a`` for a copy of ``b``."""
    if a.n != b.n:
        return None
    n = a.n
    for f in range(n):
        for g in range(n):
            iso = principal_isotope(a, f, g)
            phi = find_isomorphism(iso, b)
            if phi is None:
                continue
            e = a.mul(f, g)
            tau = Permutation.transposition(n, 0, e)
            w = tau * phi
            triple = IsotopismTriple(a.right_translation(g) * w, a.left_translation(f) * w, w)
            assert triple.holds(a, b)
            return triple
    return None


def find_special_isotopism(a: LoopTable, b: LoopTable) -> Permutation | None:
    """A bijection ``d`` with ``x d (*) y = (x . y) d`` for all ``x, y``.

    Backtracks over images with forced propagation: once ``x d`` is known
    every ``(x . y) d`` follows.
    """
    n = a.n
    if b.n != n:
        return None
    ta, tb = a.table, b.table
    img = [-1] * n
    used = [False] * n

    def propagate(queue: list[int], assigned: list[int]) -> bool:
        while queue:
            x = queue.pop()
            dx = img[x]
            for y in range(n):
                z = int(ta[x, y])
                v = int(tb[dx, y])
                if img[z] == -1:
                    if used[v]:
                        return False
                    img[z] = v
                    used[v] = True
                    assigned.append(z)
                    queue.append(z)
                elif img[z] != v:
                    return False
        return True

    def rec() -> Permutation | None:
        try:
            x = img.index(-1)
        except ValueError:
            return Permutation(img)
        for c in range(n):
            if used[c]:
                continue
            img[x] = c
            used[c] = True
            assigned = [x]
            if propagate([x], assigned):
                found = rec()
                if found is not None:
                    return found
            for z in assigned:
                used[img[z]] = False
                img[z] = -1
        return None

    delta = rec()
    if delta is not None:
        d = delta.array()
        assert np.array_equal(tb[d[:, None], np.arange(n)[None, :]], d[ta])
    return delta
