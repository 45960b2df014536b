"""Tabular gap summaries and the figures that accompany them."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .construction import LabeledGraph  # noqa: E402
from .graph import square  # noqa: E402
from .latin import mols_family  # noqa: E402
from .verify import gap_report  # noqa: E402

GAP_COLUMNS = ("n", "rounds", "chromatic_upper", "vetrik_strict_bound", "kierstead_value",
               "list_chromatic_lower", "gap_lower", "reference_gap_bound", "counterexample_certified",
               "formula_only")


def gap_rows(primes: Iterable[int], rounds: int) -> list[dict]:
    rows = []
    for n in primes:
        rep = gap_report(n, rounds).to_json()
        row = {"n": n, "rounds": rounds}
        row.update({key: rep[key] for key in GAP_COLUMNS[2:]})
        rows.append(row)
    return rows


def write_csv(rows: Sequence[dict], path: Path, columns: Sequence[str] = GAP_COLUMNS) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: "" if row.get(c) is None else row[c] for c in columns})
    return path


def plot_gap_bounds(rows: Sequence[dict], path: Path) -> Path:
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [r["chromatic_upper"] for r in rows], "o-", label="upper bound on chromatic number")
    ax.plot(ns, [r["list_chromatic_lower"] for r in rows], "s-", label="lower bound on list chromatic number")
    if all(r["reference_gap_bound"] is not None for r in rows):
        ax.plot(ns, [r["reference_gap_bound"] for r in rows], "^--", label="n^2 - 6n + 3")
    for r in rows:
        if r["counterexample_certified"]:
            ax.annotate("certified", (r["n"], r["list_chromatic_lower"]), textcoords="offset points",
                        xytext=(0, 6), ha="center", fontsize=7)
    ax.set_xlabel("prime n")
    ax.set_ylabel("colors")
    ax.set_title(f"Bounds for the square, {rows[0]['rounds']} duplication round(s)" if rows else "")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_square_structure(lg: LabeledGraph, path: Path) -> Path:
    """Adjacency of the square restricted to P; parts show up as zero diagonal blocks."""
    p = lg.p_vertices()
    gsq = square(lg.graph)
    matrix = [[1 if gsq.has_edge(a, b) else 0 for b in p] for a in p]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(matrix, cmap="Greys", interpolation="nearest")
    ax.set_title(f"square restricted to P, n={lg.n}, rounds={lg.rounds}")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_latin_squares(n: int, path: Path) -> Path:
    squares = mols_family(n)
    fig, axes = plt.subplots(1, len(squares), figsize=(2.2 * len(squares), 2.4), squeeze=False)
    for i, (ax, sq) in enumerate(zip(axes[0], squares), start=1):
        rows = sq.rows()
        ax.imshow(rows, cmap="tab10" if n <= 10 else "viridis", vmin=1, vmax=max(n, 10))
        for j in range(n):
            for k in range(n):
                ax.text(k, j, str(rows[j][k]), ha="center", va="center", fontsize=8)
        ax.set_title(f"L_{i}", fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
