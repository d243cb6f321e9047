"""Deterministic SVG line charts for benchmark results.

The writer emits plain SVG text with no timestamps or environment-dependent
content, so a rerun of the same benchmark produces byte-identical plots.
Two chart kinds are supported: cut-versus-epoch trajectories (median line
with a shaded interquartile band per algorithm) and success-rate-versus-size
curves.
"""

from __future__ import annotations

import math

import numpy as np

WIDTH = 640
HEIGHT = 400
MARGIN = {"left": 64.0, "right": 20.0, "top": 36.0, "bottom": 48.0}

PALETTE = {"sa": "#4d4d4d", "cim": "#1f77b4", "cits": "#d62728"}
EXTRA_COLORS = ("#2ca02c", "#9467bd", "#8c564b", "#e377c2")

VERSION_COMMENT = "<!-- isingtree chart v1 -->"


def _color(name: str, index: int) -> str:
    return PALETTE.get(name, EXTRA_COLORS[index % len(EXTRA_COLORS)])


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    """About n ticks at 1/2/5-scaled steps covering [lo, hi]."""
    span = hi - lo
    raw = span / max(1, n)
    magnitude = 10.0 ** math.floor(math.log10(raw))
    step = 10 * magnitude
    for mult in (1, 2, 5):
        if mult * magnitude >= raw:
            step = mult * magnitude
            break
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [k * step for k in range(first, last + 1)]


def _label(value: float) -> str:
    return f"{value:.10g}"


class _Axes:
    """Maps data coordinates into the fixed plot rectangle."""

    def __init__(self, x_range: tuple[float, float], y_range: tuple[float, float]):
        self.x_lo, x_hi = x_range
        self.y_lo, y_hi = y_range
        self.x_span = max(x_hi - self.x_lo, 1e-9)
        self.y_span = max(y_hi - self.y_lo, 1e-9)
        self.left = MARGIN["left"]
        self.right = WIDTH - MARGIN["right"]
        self.top = MARGIN["top"]
        self.bottom = HEIGHT - MARGIN["bottom"]

    def x(self, v: float) -> float:
        return self.left + (v - self.x_lo) / self.x_span * (self.right - self.left)

    def y(self, v: float) -> float:
        return self.bottom - (v - self.y_lo) / self.y_span * (self.bottom - self.top)

    def point(self, vx: float, vy: float) -> str:
        return f"{self.x(vx):.2f},{self.y(vy):.2f}"


def _frame(ax: _Axes, title: str, x_label: str, y_label: str) -> list[str]:
    parts = [
        f'<rect x="{ax.left:.2f}" y="{ax.top:.2f}"'
        f' width="{ax.right - ax.left:.2f}" height="{ax.bottom - ax.top:.2f}"'
        ' fill="none" stroke="#333333" stroke-width="1"/>'
    ]
    for tick in _ticks(ax.x_lo, ax.x_lo + ax.x_span):
        px = ax.x(tick)
        parts.append(
            f'<line x1="{px:.2f}" y1="{ax.bottom:.2f}" x2="{px:.2f}"'
            f' y2="{ax.bottom + 5:.2f}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{ax.bottom + 18:.2f}" text-anchor="middle">'
            f"{_label(tick)}</text>"
        )
    for tick in _ticks(ax.y_lo, ax.y_lo + ax.y_span):
        py = ax.y(tick)
        parts.append(
            f'<line x1="{ax.left - 5:.2f}" y1="{py:.2f}" x2="{ax.left:.2f}"'
            f' y2="{py:.2f}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{ax.left - 8:.2f}" y="{py + 4:.2f}" text-anchor="end">'
            f"{_label(tick)}</text>"
        )
    cx = (ax.left + ax.right) / 2
    cy = (ax.top + ax.bottom) / 2
    parts.append(f'<text x="{cx:.2f}" y="20" text-anchor="middle" font-size="14">{title}</text>')
    parts.append(
        f'<text x="{cx:.2f}" y="{HEIGHT - 10}" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{cy:.2f}" text-anchor="middle"'
        f' transform="rotate(-90 16 {cy:.2f})">{y_label}</text>'
    )
    return parts


def _legend(ax: _Axes, names: list[str]) -> list[str]:
    parts = []
    for i, name in enumerate(names):
        y = ax.top + 14 + 16 * i
        x = ax.right - 96
        parts.append(
            f'<line x1="{x:.2f}" y1="{y:.2f}" x2="{x + 22:.2f}" y2="{y:.2f}"'
            f' stroke="{_color(name, i)}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{x + 28:.2f}" y="{y + 4:.2f}">{name}</text>')
    return parts


def _document(body: list[str]) -> str:
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}"'
        f' viewBox="0 0 {WIDTH} {HEIGHT}"'
        ' font-family="Helvetica,Arial,sans-serif" font-size="12">',
        VERSION_COMMENT,
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _column_quartiles(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nearest-rank per-epoch quartiles over runs (rows)."""
    ordered = np.sort(matrix, axis=0)
    n = matrix.shape[0]

    def rank(fraction: float) -> np.ndarray:
        return ordered[max(1, math.ceil(fraction * n)) - 1]

    return rank(0.25), rank(0.50), rank(0.75)


def cut_trajectory_svg(
    records,
    title: str = "cut vs epoch",
    targets: dict[str, int] | None = None,
) -> str:
    """Chart of median running-max cut per epoch with an IQR band per algorithm.

    ``records`` is a flat list of RunRecords; they are grouped by algorithm
    in first-appearance order.  ``targets`` maps label -> cut value and draws
    dashed horizontal reference lines.
    """
    by_algorithm: dict[str, list[np.ndarray]] = {}
    for record in records:
        by_algorithm.setdefault(record.algorithm, []).append(record.cuts_per_epoch)
    if not by_algorithm:
        raise ValueError("no records to plot")

    quartiles = {
        name: _column_quartiles(np.vstack(series)) for name, series in by_algorithm.items()
    }
    n_epochs = max(q50.size for _, q50, _ in quartiles.values())
    y_hi = max(int(q75.max()) for _, _, q75 in quartiles.values())
    for value in (targets or {}).values():
        y_hi = max(y_hi, int(value))
    ax = _Axes((1.0, float(max(n_epochs, 2))), (0.0, y_hi * 1.05 + 1e-9))

    body = _frame(ax, title, "epoch", "cut")
    for label, value in sorted((targets or {}).items()):
        py = ax.y(value)
        body.append(
            f'<line x1="{ax.left:.2f}" y1="{py:.2f}" x2="{ax.right:.2f}" y2="{py:.2f}"'
            ' stroke="#999999" stroke-width="1" stroke-dasharray="4 3"/>'
        )
        body.append(
            f'<text x="{ax.left + 4:.2f}" y="{py - 4:.2f}" fill="#666666">'
            f"{label}={value}</text>"
        )
    for i, (name, (q25, q50, q75)) in enumerate(quartiles.items()):
        color = _color(name, i)
        xs = np.arange(1, q50.size + 1)
        upper = " ".join(ax.point(x, y) for x, y in zip(xs, q75))
        lower = " ".join(ax.point(x, y) for x, y in zip(xs[::-1], q25[::-1]))
        body.append(
            f'<polygon points="{upper} {lower}" fill="{color}"'
            ' fill-opacity="0.2" stroke="none"/>'
        )
        median = " ".join(ax.point(x, y) for x, y in zip(xs, q50))
        body.append(
            f'<polyline points="{median}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
    body.extend(_legend(ax, list(quartiles)))
    return _document(body)


def success_curve_svg(
    series: dict[str, list[tuple[float, float]]],
    title: str = "success rate vs size",
    x_label: str = "size",
) -> str:
    """Chart of success rate (0..1) against instance size, one line per algorithm."""
    if not series or all(not pts for pts in series.values()):
        raise ValueError("no points to plot")
    xs = [x for pts in series.values() for x, _ in pts]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_hi = x_lo + 1
    ax = _Axes((x_lo, x_hi), (0.0, 1.0))

    body = _frame(ax, title, x_label, "success rate")
    for i, (name, pts) in enumerate(series.items()):
        color = _color(name, i)
        path = " ".join(ax.point(x, y) for x, y in sorted(pts))
        body.append(
            f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        for x, y in pts:
            body.append(
                f'<circle cx="{ax.x(x):.2f}" cy="{ax.y(y):.2f}" r="2.5" fill="{color}"/>'
            )
    body.extend(_legend(ax, list(series)))
    return _document(body)
