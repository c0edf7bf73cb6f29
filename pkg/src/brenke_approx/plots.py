"""Figure rendering next to the CSV reports.

Each report command can render a PNG summarizing its rows; figures land
alongside the delimited output with the same stem.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _finite(rows, key):
    return [r for r in rows if isinstance(r[key], float) and math.isfinite(r[key])]


def plot_converge(rows: list[dict], path: str) -> None:
    """Sup-error decay: one log-log curve per (function, nu)."""
    fig, ax = plt.subplots(figsize=(6, 4))
    groups: dict[tuple, list[dict]] = {}
    for r in _finite(rows, "sup_err"):
        groups.setdefault((r["f"], r["nu1"], r["nu2"]), []).append(r)
    for (fname, nu1, nu2), grp in sorted(groups.items()):
        grp = sorted(grp, key=lambda r: r["n"])
        ns = [r["n"] for r in grp]
        errs = [max(r["sup_err"], 1e-17) for r in grp]
        ax.loglog(ns, errs, marker="o", label=f"{fname}, nu=({nu1:g},{nu2:g})")
    ax.set_xlabel("n")
    ax.set_ylabel("sup error on the x grid")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_moments(rows: list[dict], path: str) -> None:
    """Concentration rate delta_n(x) per level n (first Stancu pair)."""
    fig, ax = plt.subplots(figsize=(6, 4))
    rows = _finite(rows, "delta_n")
    if rows:
        nu0 = (rows[0]["nu1"], rows[0]["nu2"])
        byn: dict[int, list[dict]] = {}
        for r in rows:
            if (r["nu1"], r["nu2"]) == nu0:
                byn.setdefault(r["n"], []).append(r)
        for n, grp in sorted(byn.items()):
            grp = sorted(grp, key=lambda r: r["x"])
            ax.plot([r["x"] for r in grp], [r["delta_n"] for r in grp],
                    marker=".", label=f"n={n}")
    ax.set_xlabel("x")
    ax.set_ylabel("delta_n(x)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_bounds(rows: list[dict], path: str) -> None:
    """Empirical error against the four bounds at the largest n."""
    rows = _finite(rows, "err_emp")
    if not rows:
        fig, ax = plt.subplots(figsize=(6, 4))
        fig.savefig(path, dpi=150)
        plt.close(fig)
        return
    n_top = max(r["n"] for r in rows)
    nu0 = (rows[0]["nu1"], rows[0]["nu2"])
    fnames = sorted({r["f"] for r in rows})
    fig, axes = plt.subplots(
        1, len(fnames), figsize=(4 * len(fnames), 3.2), squeeze=False
    )
    for ax, fname in zip(axes[0], fnames):
        grp = sorted(
            (
                r
                for r in rows
                if r["f"] == fname and r["n"] == n_top and (r["nu1"], r["nu2"]) == nu0
            ),
            key=lambda r: r["x"],
        )
        xs = [r["x"] for r in grp]
        ax.plot(xs, [r["err_emp"] for r in grp], "k-", label="error")
        for key, style in (("b22", "--"), ("b23", ":"), ("b24", "-."), ("b25", "--")):
            vals = [r[key] if isinstance(r[key], float) else math.nan for r in grp]
            if any(isinstance(v, float) and math.isfinite(v) for v in vals):
                ax.plot(xs, vals, style, label=key)
        ax.set_title(f"{fname} (n={n_top})", fontsize=9)
        ax.set_xlabel("x")
        ax.set_yscale("log")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
