"""SVG and TikZ drawings of interval representations, and parsers for them.

Drawings follow the usual stacked-interval style: one horizontal segment
per vertex with dots at both endpoints. The basepoint is black on the
bottom row, the designated vertex dark grey, a highlighted set light grey.
"""

from __future__ import annotations

import re
from typing import Iterable

from .engine import IntervalRepresentation

SVG_SCALE = 20
SVG_ROW = 18
SVG_MARGIN = 12
TIKZ_SCALE = 0.25
TIKZ_ROW = 0.2

COLORS = {
    "basepoint": ("black", "black"),
    "designated": ("#555555", "dark-gray"),
    "highlight": ("#b0b0b0", "light-gray"),
    "other": ("#3b6ea5", "other"),
}


def assign_rows(rep: IntervalRepresentation, bottom: int | None = None) -> list[int]:
    """First-fit rows by left endpoint; ``bottom`` (if given) owns row 0 first."""
    iv = rep.intervals
    rows = [0] * len(iv)
    row_end: list[int] = []
    order = sorted(range(len(iv)), key=lambda v: iv[v][0])
    if bottom is not None:
        order.remove(bottom)
        row_end.append(iv[bottom][1])
    for v in order:
        lo, hi = iv[v]
        for r, end in enumerate(row_end):
            if end < lo:
                rows[v] = r
                row_end[r] = hi
                break
        else:
            rows[v] = len(row_end)
            row_end.append(hi)
    return rows


def _role(v: int, basepoint, designated, highlight) -> str:
    if v == basepoint:
        return "basepoint"
    if v == designated:
        return "designated"
    if v in highlight:
        return "highlight"
    return "other"


def to_svg(rep: IntervalRepresentation, basepoint: int | None = None,
           designated: int | None = None, highlight: Iterable[int] = ()) -> str:
    highlight = set(highlight)
    rows = assign_rows(rep, basepoint)
    nrows = max(rows, default=0) + 1
    xs = [x for iv in rep.intervals for x in iv]
    x0 = min(xs, default=0)
    width = (max(xs, default=0) - x0) * SVG_SCALE + 2 * SVG_MARGIN
    height = nrows * SVG_ROW + 2 * SVG_MARGIN
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    for v, (lo, hi) in enumerate(rep.intervals):
        color = COLORS[_role(v, basepoint, designated, highlight)][0]
        y = height - SVG_MARGIN - rows[v] * SVG_ROW
        x1 = (lo - x0) * SVG_SCALE + SVG_MARGIN
        x2 = (hi - x0) * SVG_SCALE + SVG_MARGIN
        out.append(f'  <line data-v="{v}" x1="{x1}" x2="{x2}" y1="{y}" y2="{y}" '
                   f'stroke="{color}" stroke-width="4"/>')
        out.append(f'  <circle cx="{x1}" cy="{y}" r="4" fill="{color}"/>')
        out.append(f'  <circle cx="{x2}" cy="{y}" r="4" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


_SVG_LINE = re.compile(r'<line data-v="(\d+)" x1="(-?\d+)" x2="(-?\d+)"')


def parse_svg(text: str) -> IntervalRepresentation:
    found = {int(v): (int(a), int(b)) for v, a, b in _SVG_LINE.findall(text)}
    if sorted(found) != list(range(len(found))):
        raise ValueError("SVG does not list vertices 0..n-1")
    return IntervalRepresentation(tuple(found[v] for v in range(len(found))))


TIKZ_HEADER = r"""\documentclass[tikz]{standalone}
\usetikzlibrary{arrows.meta}
\definecolor{dark-gray}{gray}{0.33}
\definecolor{light-gray}{gray}{0.69}
\definecolor{other}{HTML}{3B6EA5}
\begin{document}
"""


def to_tikz(rep: IntervalRepresentation, basepoint: int | None = None,
            designated: int | None = None, highlight: Iterable[int] = ()) -> str:
    highlight = set(highlight)
    rows = assign_rows(rep, basepoint)
    lines = [TIKZ_HEADER.rstrip("\n"),
             r"\begin{tikzpicture}",
             r"[IntervalGraph/.style={{Circle[scale=0.7]}-{Circle[scale=0.7]}, ultra thick}]"]
    for v, (lo, hi) in enumerate(rep.intervals):
        color = COLORS[_role(v, basepoint, designated, highlight)][1]
        y = rows[v] * TIKZ_ROW
        lines.append(f"\t\\draw [{color}, IntervalGraph] ({lo * TIKZ_SCALE:.2f},{y:.2f}) -- "
                     f"({hi * TIKZ_SCALE:.2f},{y:.2f}); % v={v}")
    lines += [r"\end{tikzpicture}", r"\end{document}"]
    return "\n".join(lines) + "\n"


_TIKZ_LINE = re.compile(r"\((-?[\d.]+),(-?[\d.]+)\) -- \((-?[\d.]+),(-?[\d.]+)\); % v=(\d+)")


def parse_tikz(text: str) -> IntervalRepresentation:
    found = {}
    for x1, _, x2, _, v in _TIKZ_LINE.findall(text):
        found[int(v)] = (round(float(x1) / TIKZ_SCALE), round(float(x2) / TIKZ_SCALE))
    if sorted(found) != list(range(len(found))):
        raise ValueError("TikZ does not list vertices 0..n-1")
    return IntervalRepresentation(tuple(found[v] for v in range(len(found))))
