"""Summary figures written next to the delimited reports."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .theorems import TheoremReport  # noqa: E402

COLORS = {"pass": "#4c9a2a", "fail": "#c0392b", "skip": "#b8b8b8"}


def theorem_summary_figure(reports: Sequence[TheoremReport], path, title: str | None = None):
    """Horizontal stacked bars of pass/fail/skip counts per theorem and mode."""
    labels = [f"{r.theorem_id} [{r.mode}]" if r.mode != "-" else r.theorem_id for r in reports]
    passes = [r.passes for r in reports]
    fails = [len(r.failures) for r in reports]
    skips = [r.skipped for r in reports]
    height = max(3.0, 0.22 * len(reports) + 1.0)
    fig, ax = plt.subplots(figsize=(8, height))
    y = range(len(reports))
    ax.barh(y, passes, color=COLORS["pass"], label="pass")
    ax.barh(y, fails, left=passes, color=COLORS["fail"], label="fail")
    ax.barh(y, skips, left=[p + f for p, f in zip(passes, fails)], color=COLORS["skip"], label="skipped")
    ax.set_yticks(list(y))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("instances")
    ax.legend(loc="lower right", fontsize=8, frameon=False)
    ax.set_title(title or "theorem checks")
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def class_count_figure(counts: dict[str, int], total: int, path, title: str | None = None):
    names = list(counts)
    fig, ax = plt.subplots(figsize=(8, 3.2))
    ax.bar(range(len(names)), [counts[c] for c in names], color="#3c6e9f")
    ax.axhline(total, color="k", lw=0.8, ls="--")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("loops")
    ax.set_title(title or f"class membership ({total} loops)")
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
