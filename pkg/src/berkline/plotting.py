"""Figure rendering for reports.

Everything here draws in exponent coordinates, where the exact data
lives; converting an exponent to a float for pixel placement is the
only rounding in the package and never feeds back into results.
"""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .points import Path
from .trees import FiniteSubtree
from .tropical import PLFunction1D
from .valmonoid import Val


def _exp_or(v: Val, fallback: float) -> float:
    return fallback if v.is_zero else float(v.exponent)


def plot_pl_function(fn: PLFunction1D, out_path: str) -> None:
    """Graph of a piecewise monomial function over its interval.

    Axes carry radius and value exponents; a zero endpoint is clipped
    two units past the largest finite breakpoint and marked as such.
    """
    finite = [b.exponent for b in fn.breakpoints() if not b.is_zero]
    clip = (max(finite) if finite else Fraction(0)) + 2
    fig, ax = plt.subplots(figsize=(6, 4))
    for cell, piece in zip(fn.cells, fn.pieces):
        hi_e = _exp_or(cell.hi, float(clip))
        lo_e = _exp_or(cell.lo, float(clip))
        xs = [hi_e, lo_e]
        ys = [_exp_or(piece(cell.hi), float(clip)), _exp_or(piece(cell.lo), float(clip))]
        ax.plot(xs, ys, marker="o")
    if any(b.is_zero for b in fn.breakpoints()):
        ax.axvline(float(clip), linestyle=":", linewidth=1)
        ax.annotate("zero value (clipped)", (float(clip), ax.get_ylim()[0]), fontsize=8)
    ax.set_xlabel("radius exponent")
    ax.set_ylabel("value exponent")
    ax.invert_xaxis()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def plot_newton(
    points: list[tuple[int, Fraction]],
    breakpoints: list[tuple[Fraction, int]],
    out_path: str,
) -> None:
    """Coefficient valuations with the lower hull drawn through them."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter([x for x, _ in points], [float(y) for _, y in points], zorder=3)
    hull_x = [points[0][0]]
    hull_y = [points[0][1]]
    for slope, mult in breakpoints:
        hull_x.append(hull_x[-1] + mult)
        hull_y.append(hull_y[-1] - slope * mult)
    ax.plot(hull_x, [float(y) for y in hull_y], color="tab:red")
    if breakpoints:
        text = ", ".join(f"slope {s} x{m}" for s, m in breakpoints)
        ax.annotate(text, (0.02, 0.02), xycoords="axes fraction", fontsize=8)
    ax.set_xlabel("coefficient index")
    ax.set_ylabel("valuation exponent")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def plot_tree(
    tree: FiniteSubtree,
    out_path: str,
    edge_labels: list[str] | None = None,
    depth_cap: float = 6.0,
) -> None:
    """Schematic of a finite subtree.

    Every edge is a vertical segment in its own column; height is the
    negated radius exponent (inverted-chart edges mirrored upward), so
    the Gauss point sits at height zero and simple points run off the
    bottom, clipped at the depth cap.
    """
    columns: dict[tuple[bool, str], int] = {}
    fig, ax = plt.subplots(figsize=(7, 5))

    def height(radius: Val, flipped: bool) -> float:
        e = depth_cap if radius.is_zero else min(float(radius.exponent), depth_cap)
        return e if flipped else -e

    for j, e in enumerate(tree.edges):
        key = (e.flipped, repr(e.center))
        x = columns.setdefault(key, len(columns))
        y0, y1 = height(e.lo, e.flipped), height(e.hi, e.flipped)
        ax.plot([x, x], [y0, y1], linewidth=2)
        label = str(e.center)
        if edge_labels is not None:
            label += f" [{edge_labels[j]}]"
        ax.annotate(label, (x, (y0 + y1) / 2), fontsize=8, rotation=90)
    ax.axhline(0.0, linestyle=":", linewidth=1)
    ax.set_ylabel("negated radius exponent (inverted chart above)")
    ax.set_xticks([])
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def plot_path(path: Path, out_path: str, depth_cap: float = 6.0) -> None:
    """Leg-by-leg profile of a geodesic: radius exponent against arc order."""
    fig, ax = plt.subplots(figsize=(6, 4))
    pos = 0.0
    for leg in path.legs:
        a = depth_cap if leg.start.is_zero else min(float(leg.start.exponent), depth_cap)
        b = depth_cap if leg.end.is_zero else min(float(leg.end.exponent), depth_cap)
        span = abs(a - b) or 1.0
        sign = -1.0 if leg.flipped else 1.0
        ax.plot([pos, pos + span], [sign * a, sign * b], marker="o")
        ax.annotate(str(leg.center), (pos, sign * a), fontsize=8)
        pos += span
    ax.set_xlabel("arc length (exponent units)")
    ax.set_ylabel("radius exponent (inverted chart negated)")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
