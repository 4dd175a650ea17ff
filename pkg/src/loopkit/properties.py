"""Loop-class membership: identity classes, A-loops, G-loops and composites."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable

import numpy as np

from .identities import evaluate_identity, registered_identity, registry
from .morphisms import find_isomorphism, principal_isotope
from .table import CANONICAL_MAX_ORDER, LoopTable, associativity_counterexample, canonical_form

CLASS_NAMES = (
    "group", "ip", "wip", "aip", "aaip", "bol", "left_bol", "moufang", "extra", "central",
    "lcc", "rcc", "cc", "a_loop", "g_loop", "k_loop", "bruck", "burn", "homogeneous", "kikkawa",
)

# checked one identity each
IDENTITY_CLASSES = ("wip", "wip_left", "aip", "aaip", "bol", "left_bol", "moufang", "extra", "lcc", "rcc", "lc", "rc",
                    "ip_left", "ip_right")

# conjunctions of other classes
COMPOSITES = {
    "ip": ("ip_left", "ip_right"),
    "central": ("lc", "rc"),
    "cc": ("lcc", "rcc"),
    "k_loop": ("a_loop", "aip"),
    "bruck": ("bol", "aip"),
    "burn": ("bol", "cc"),
    "homogeneous": ("a_loop", "ip"),
    "kikkawa": ("a_loop", "ip", "aip"),
}

ALL_CLASSES = tuple(CLASS_NAMES) + tuple(c for c in IDENTITY_CLASSES if c not in CLASS_NAMES)


class UnknownClass(KeyError):
    pass


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "yes"
        bits = [b for b in (self.detail, self.counterexample and f"counterexample {self.counterexample}") if b]
        return "no" + (f" ({'; '.join(bits)})" if bits else "")


def _identity_verdict(t: LoopTable, name: str) -> Verdict:
    v = evaluate_identity(registered_identity(name), t)
    if v.holds:
        return Verdict(True)
    return Verdict(False, v.counterexample, f"{name} fails, {v.lhs_value} != {v.rhs_value}")


def _translation_maps(t: LoopTable) -> dict[str, np.ndarray]:
    """Inner-mapping generators as image arrays, indexed by their parameters.

    R(x,y) = R_x R_y R_{xy}^-1, L(x,y) = L_x L_y L_{yx}^-1, T(x) = R_x L_x^-1,
    all composed left to right.
    """
    tab, ld, rd = t.table, t.ldiv_table, t.rdiv_table
    ar = np.arange(t.n)
    x, y, z = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    r = rd[tab[tab[z, x], y], tab[x, y]]
    l = ld[tab[y, x], tab[y, tab[x, z]]]
    tt = ld[ar[:, None], tab[ar[None, :], ar[:, None]]]  # row x: z -> x\(z x)
    return {"R": r, "L": l, "T": tt}


def _automorphism_failure(t: LoopTable, maps: np.ndarray) -> tuple[int, tuple[int, int]] | None:
    """First row of ``maps`` that is not an automorphism, with a broken pair."""
    n = t.n
    tab = t.table
    chunk = max(1, 4_000_000 // (n * n))
    for start in range(0, len(maps), chunk):
        p = maps[start:start + chunk]
        ok = p[:, tab] == tab[p[:, :, None], p[:, None, :]]
        bad = ~ok.reshape(len(p), -1).all(axis=1)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            u, v = np.argwhere(~ok[i])[0]
            return start + i, (int(u), int(v))
    return None


def check_a_loop(t: LoopTable) -> Verdict:
    """Every inner-mapping generator is an automorphism."""
    for kind, arr in _translation_maps(t).items():
        flat = arr.reshape(-1, t.n)
        uniq, first = np.unique(flat, axis=0, return_index=True)
        failure = _automorphism_failure(t, uniq)
        if failure is not None:
            i, pair = failure
            params = np.unravel_index(int(first[i]), arr.shape[:-1])
            params = tuple(int(p) for p in params)
            label = f"{kind}{params}" if kind != "T" else f"T({params[0]})"
            return Verdict(False, {"map": label, "images": uniq[i].tolist(), "pair": pair},
                           f"inner mapping {label} does not preserve {pair[0]}*{pair[1]}")
    return Verdict(True)


def check_g_loop(t: LoopTable) -> Verdict:
    """Every principal isotope ``(x/b)(a\\y)`` is isomorphic to the loop."""
    use_canonical = t.n <= CANONICAL_MAX_ORDER
    ref = canonical_form(t) if use_canonical else None
    for a in range(t.n):
        for b in range(t.n):
            iso = principal_isotope(t, a, b)
            same = canonical_form(iso) == ref if use_canonical else find_isomorphism(iso, t) is not None
            if not same:
                return Verdict(False, {"a": a, "b": b}, f"principal isotope ({a},{b}) is not isomorphic")
    return Verdict(True)


def check_cc(t: LoopTable) -> dict[str, Verdict]:
    lcc = check_class(t, "lcc")
    rcc = check_class(t, "rcc")
    return {"lcc": lcc, "rcc": rcc, "cc": check_class(t, "cc")}


def check_group(t: LoopTable) -> Verdict:
    bad = associativity_counterexample(t)
    if bad is None:
        return Verdict(True)
    x, y, z = bad
    return Verdict(False, {"x": x, "y": y, "z": z}, "not associative")


@lru_cache(maxsize=65536)
def _check(t: LoopTable, name: str) -> Verdict:
    if name == "group":
        return check_group(t)
    if name == "a_loop":
        return check_a_loop(t)
    if name == "g_loop":
        return check_g_loop(t)
    if name in COMPOSITES:
        for part in COMPOSITES[name]:
            v = _check(t, part)
            if not v:
                return Verdict(False, v.counterexample, f"not {part}" + (f" ({v.detail})" if v.detail else ""))
        return Verdict(True)
    if name in registry():
        return _identity_verdict(t, name)
    raise UnknownClass(name)


def require_class(name: str) -> None:
    if name not in ALL_CLASSES and name not in registry():
        raise UnknownClass(f"unknown class {name!r}; known: {', '.join(ALL_CLASSES)}")


def check_class(t: LoopTable, name: str) -> Verdict:
    """Decide membership of ``t`` in a named loop class."""
    require_class(name)
    return _check(t, name)


def clear_caches() -> None:
    from .subloops import _witness

    _check.cache_clear()
    _witness.cache_clear()


@dataclass
class PropertyReport:
    loop_name: str | None
    verdicts: dict[str, Verdict]
    identities: dict[str, str] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def holding(self) -> list[str]:
        return [c for c, v in self.verdicts.items() if v]

    def to_dict(self) -> dict:
        return {
            "loop": self.loop_name,
            "verdicts": {
                c: {"holds": v.holds, "counterexample": v.counterexample, "detail": v.detail}
                for c, v in self.verdicts.items()
            },
            "identities": self.identities,
        }


def classify(t: LoopTable, classes: Iterable[str] | None = None) -> PropertyReport:
    """Verdicts for ``classes`` (default: all), plus the identities used."""
    names = list(classes) if classes is not None else list(CLASS_NAMES)
    verdicts = {c: check_class(t, c) for c in names}
    reg = registry()
    used = set()
    for c in names:
        for part in COMPOSITES.get(c, (c,)):
            used.update(COMPOSITES.get(part, (part,)))
    idents = {c: reg[c] for c in sorted(used) if c in reg}
    if "wip" in names:
        idents["wip_left"] = reg["wip_left"]
        verdicts.setdefault("wip_left", check_class(t, "wip_left"))
    if "moufang" in verdicts and verdicts["moufang"]:
        assert check_class(t, "ip") and check_class(t, "bol"), "Moufang loop failed IP or Bol"
    return PropertyReport(t.name, verdicts, idents)
