"""Command-line interface: ``loopkit <subcommand> ...``.

Exit status is 0 on success, 1 when an input table fails validation (or,
with ``verify --strict``, when an asserted theorem check fails) and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report as rpt
from .catalog import OrderCapExceeded, enumerate_loops, load_catalog, write_catalog_dir
from .holomorph import HolomorphOrderCapExceeded, build_holomorph, classify_holomorph
from .morphisms import automorphism_group, find_isomorphism, find_isotopism, find_special_isotopism
from .properties import CLASS_NAMES, UnknownClass, classify
from .subloops import center, centrum, enumerate_subloops, is_normal, nuclei, smarandache_witness
from .table import LoopError, format_catalog, parse_table
from .theorems import MODES, THEOREMS, run_theorem_suite


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    loops = parse_table(text)
    if not loops:
        raise LoopError(f"{path}: no tables found")
    return [t if t.name else t.with_name(f"{Path(path).stem}#{k}") for k, t in enumerate(loops)]


def _emit(args, human: str, machine) -> None:
    sys.stdout.write(rpt.dumps(machine) + "\n" if args.json else human)


def cmd_validate(args) -> int:
    loops = _load(args.file)
    human = "".join(f"{t.name}: valid loop of order {t.n}\n" for t in loops)
    _emit(args, human, [{"name": t.name, "order": t.n, "table": t.rows()} for t in loops])
    return 0


def cmd_props(args) -> int:
    classes = args.classes.split(",") if args.classes else list(CLASS_NAMES)
    out, lines = [], []
    for t in _load(args.file):
        rep = classify(t, classes)
        out.append(rep.to_dict())
        lines.append(f"{t.name} (order {t.n})")
        lines += [f"  {c:<12} {v.describe()}" for c, v in rep.verdicts.items()]
        lines += [f"  identity {c}: {s}" for c, s in rep.identities.items()]
    _emit(args, "\n".join(lines) + "\n", out)
    return 0


def cmd_subloops(args) -> int:
    out, lines = [], []
    for t in _load(args.file):
        subs = enumerate_subloops(t)
        nl, nm, nr, nn = nuclei(t)
        info = {
            "name": t.name,
            "subloops": [{"elements": list(s.elements), "is_subgroup": s.is_subgroup, "normal": is_normal(t, s)}
                         for s in subs],
            "left_nucleus": list(nl.elements), "middle_nucleus": list(nm.elements),
            "right_nucleus": list(nr.elements), "nucleus": list(nn.elements),
            "centrum": list(centrum(t).elements), "center": list(center(t).elements),
        }
        out.append(info)
        lines.append(f"{t.name}: {len(subs)} subloops")
        for s in info["subloops"]:
            flags = [f for f, on in (("group", s["is_subgroup"]), ("normal", s["normal"])) if on]
            lines.append(f"  {s['elements']} {' '.join(flags)}")
        for key in ("nucleus", "centrum", "center"):
            lines.append(f"  {key}: {info[key]}")
    _emit(args, "\n".join(lines) + "\n", out)
    return 0


def cmd_smarandache(args) -> int:
    out, lines = [], []
    for t in _load(args.file):
        w = smarandache_witness(t, args.cls, allow_improper=args.allow_improper)
        out.append({"name": t.name, "class": args.cls, "witness": None if w is None else list(w.subloop.elements)})
        lines.append(f"{t.name}: " + ("no witness" if w is None else f"witness {list(w.subloop.elements)}"))
    _emit(args, "\n".join(lines) + "\n", out)
    return 0


def cmd_aut(args) -> int:
    out, lines = [], []
    for t in _load(args.file):
        g = automorphism_group(t)
        out.append({"name": t.name, "order": g.order, "abelian": g.is_abelian(),
                    "elements": [list(p.images) for p in g]})
        lines.append(f"{t.name}: |Aut| = {g.order}" + (" (abelian)" if g.is_abelian() else ""))
        lines += [f"  {p.cycles()}" for p in g]
    _emit(args, "\n".join(lines) + "\n", out)
    return 0


def cmd_holomorph(args) -> int:
    texts, out, lines = [], [], []
    for t in _load(args.file):
        h = build_holomorph(t)
        hc = classify_holomorph(h)
        texts.append(h.to_text())
        out.append({"name": t.name, "order": h.order, "aut_order": h.aut.order,
                    "nuclear": hc.nuclear, "centrum": hc.centrum, "central": hc.central,
                    "nuclear_pointwise": hc.nuclear_pointwise, "centrum_pointwise": hc.centrum_pointwise,
                    "central_pointwise": hc.central_pointwise, "right_inverses_only": hc.right_inverses_only,
                    "table": h.table.rows()})
        kinds = [k for k in ("nuclear", "centrum", "central") if getattr(hc, k)]
        lines.append(f"{t.name}: holomorph of order {h.order} (|Aut| = {h.aut.order}); "
                     f"{', '.join(kinds) if kinds else 'not nuclear/centrum/central'}")
    if args.output:
        Path(args.output).write_text("\n".join(texts))
        lines.append(f"wrote {args.output}")
    else:
        lines.append("")
        lines += texts
    _emit(args, "\n".join(lines) + "\n", out)
    return 0


def cmd_iso(args) -> int:
    a, b = _load(args.a)[0], _load(args.b)[0]
    phi = find_isomorphism(a, b)
    human = f"isomorphism {list(phi.images)}\n" if phi else "not isomorphic\n"
    _emit(args, human, {"isomorphic": phi is not None, "map": None if phi is None else list(phi.images)})
    return 0


def cmd_isotopic(args) -> int:
    a, b = _load(args.a)[0], _load(args.b)[0]
    if args.form == "delta-i-delta":
        d = find_special_isotopism(a, b)
        human = f"(delta, I, delta) with delta = {list(d.images)}\n" if d else "no (delta, I, delta) isotopism\n"
        _emit(args, human, {"isotopic": d is not None, "delta": None if d is None else list(d.images)})
        return 0
    tri = find_isotopism(a, b)
    if tri is None:
        _emit(args, "not isotopic\n", {"isotopic": False})
    else:
        parts = [list(tri.u.images), list(tri.v.images), list(tri.w.images)]
        _emit(args, f"isotopism U={parts[0]} V={parts[1]} W={parts[2]}\n", {"isotopic": True, "triple": parts})
    return 0


def cmd_enumerate(args) -> int:
    """Summary and file notes go to stdout with ``-o``; otherwise the tables
    are the output and the summary goes to stderr."""
    cat = enumerate_loops(args.n, allow_large=args.allow_large)
    notes = [f"order {cat.order}: {len(cat)} loops"]
    if args.output:
        out = Path(args.output)
        if out.is_dir() or args.output.endswith("/"):
            path = write_catalog_dir([cat], out)[0]
        else:
            out.write_text(cat.to_text())
            path = out
        notes.append(f"wrote {path}")
    if args.figure:
        from .plotting import class_count_figure

        class_count_figure(cat.counts(), len(cat), args.figure, f"loops of order {cat.order}")
        notes.append(f"wrote {args.figure}")
    text = "".join(n + "\n" for n in notes)
    if args.json:
        _emit(args, "", {"order": cat.order, "count": len(cat),
                         "loops": [{"name": t.name, "table": t.rows()} for t in cat]})
    elif args.output:
        sys.stdout.write(text)
    else:
        sys.stderr.write(text)
        sys.stdout.write(cat.to_text())
    return 0


def cmd_verify(args) -> int:
    if args.catalog:
        loops = load_catalog(args.catalog)
    else:
        loops = [t for n in _orders(args.orders) for t in enumerate_loops(n)]
    theorems = args.theorems.split(",") if args.theorems else None
    modes = args.modes.split(",") if args.modes else MODES
    for m in modes:
        if m not in MODES:
            raise UsageError(f"unknown mode {m!r}")
    try:
        reports = run_theorem_suite(loops, theorems, modes, relabelings=args.relabelings, seed=args.seed,
                                    jobs=args.jobs)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    notes = []
    if args.report:
        with open(args.report, "w", newline="") as fh:
            rpt.write_records(reports, fh)
        notes.append(f"wrote {args.report}")
    if args.figure:
        from .plotting import theorem_summary_figure

        theorem_summary_figure(reports, args.figure, f"theorem checks on {len(loops)} loops")
        notes.append(f"wrote {args.figure}")
    if args.json:
        sys.stdout.write(rpt.reports_json(reports) + "\n")
    else:
        sys.stdout.write(rpt.reports_text(reports) + "".join(n + "\n" for n in notes))
    if args.strict and any(r.failures for r in reports if r.asserted):
        return 1
    return 0


def _orders(spec: str) -> list[int]:
    out = []
    for part in spec.split(","):
        lo, _, hi = part.partition("-")
        out.extend(range(int(lo), int(hi or lo) + 1))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loopkit", description="Finite loops, holomorphs and Smarandache structure.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check that a file holds valid loop tables")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("props", parents=[common], help="loop-class verdicts")
    s.add_argument("file")
    s.add_argument("--classes", help=f"comma-separated subset of: {','.join(CLASS_NAMES)}")
    s.set_defaults(func=cmd_props)

    s = sub.add_parser("subloops", parents=[common], help="subloops, nuclei, centrum, center")
    s.add_argument("file")
    s.set_defaults(func=cmd_subloops)

    s = sub.add_parser("smarandache", parents=[common], help="smallest nontrivial subloop in a class")
    s.add_argument("file")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--allow-improper", action="store_true", help="accept the whole loop as witness")
    s.set_defaults(func=cmd_smarandache)

    s = sub.add_parser("aut", parents=[common], help="automorphism group")
    s.add_argument("file")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("holomorph", parents=[common], help="build the holomorph table")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_holomorph)

    s = sub.add_parser("iso", parents=[common], help="isomorphism between the first tables of two files")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("isotopic", parents=[common], help="isotopism between the first tables of two files")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--form", choices=["any", "delta-i-delta"], default="any")
    s.set_defaults(func=cmd_isotopic)

    s = sub.add_parser("enumerate", parents=[common], help="all loops of one order up to isomorphism")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-o", "--output", help="file, or directory for order<N>.cat")
    s.add_argument("--figure", help="write a class-count figure")
    s.add_argument("--allow-large", action="store_true", help="ignore the order cap")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", parents=[common], help="run the theorem checks over a catalog")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", help="catalog file or directory of order<N>.cat files")
    src.add_argument("--orders", help="enumerate these orders instead, e.g. 1-5")
    s.add_argument("--theorems", help=f"comma-separated ids, e.g. 1.3,1.19.1 (known: {', '.join(THEOREMS)})")
    s.add_argument("--modes", help="witness modes: strict,improper")
    s.add_argument("--report", help="write tab-separated records to this file")
    s.add_argument("--figure", help="write a pass/fail figure (PNG, PDF, SVG)")
    s.add_argument("--relabelings", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--strict", action="store_true", help="exit 1 when an asserted theorem check fails")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LoopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, UnknownClass, OrderCapExceeded, HolomorphOrderCapExceeded, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
