"""Scatter output for polarity points: a CSV always, an SVG on request."""

from __future__ import annotations

import csv
from typing import Iterable, List, NamedTuple
from xml.sax.saxutils import escape

WIDTH, HEIGHT, MARGIN = 480, 360, 48
X_TITLE = "good-set frequency"
Y_TITLE = "bad-set frequency"
COLORS = {"A": "#1b9e77", "B": "#d95f02", "Unclassified": "#7f7f7f"}


class ScatterPoint(NamedTuple):
    doc_id: str
    x: float
    y: float
    label: str


def read_results(path) -> List[ScatterPoint]:
    with open(path, encoding="utf-8", newline="") as fh:
        return [
            ScatterPoint(r["doc_id"], float(r["x"]), float(r["y"]), r["label"])
            for r in csv.DictReader(fh)
        ]


def write_scatter_csv(points: Iterable[ScatterPoint], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "label"])
        for p in points:
            w.writerow([_num(p.x), _num(p.y), p.label])


def _num(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def scale(points: List[ScatterPoint]):
    """Pixel positions; each axis maps ``[0, max]`` linearly onto the plot area."""
    xmax = max((p.x for p in points), default=0) or 1.0
    ymax = max((p.y for p in points), default=0) or 1.0
    w, h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
    return [(MARGIN + p.x / xmax * w, HEIGHT - MARGIN - p.y / ymax * h) for p in points]


def render_svg(points: List[ScatterPoint], swap_axes: bool = False) -> str:
    xt, yt = (Y_TITLE, X_TITLE) if swap_axes else (X_TITLE, Y_TITLE)
    if swap_axes:
        points = [p._replace(x=p.y, y=p.x) for p in points]
    x0, y0 = MARGIN, HEIGHT - MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        "<style>",
        *(f"  .label-{k} {{ fill: {c}; }}" for k, c in COLORS.items()),
        "</style>",
        f'<line x1="{x0}" y1="{y0}" x2="{WIDTH - MARGIN}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="black"/>',
        f'<text x="{WIDTH / 2:g}" y="{HEIGHT - 12}" text-anchor="middle">{xt}</text>',
        f'<text x="14" y="{HEIGHT / 2:g}" text-anchor="middle" '
        f'transform="rotate(-90 14 {HEIGHT / 2:g})">{yt}</text>',
    ]
    for p, (cx, cy) in zip(points, scale(points)):
        cls = p.label if p.label in COLORS else "Unclassified"
        out.append(
            f'<circle class="label-{cls}" cx="{cx:.2f}" cy="{cy:.2f}" r="4">'
            f"<title>{escape(p.doc_id)}</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot(results_csv, scatter_csv, svg=None, swap_axes: bool = False) -> List[ScatterPoint]:
    points = read_results(results_csv)
    write_scatter_csv(points, scatter_csv)
    if svg is not None:
        with open(svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_svg(points, swap_axes))
    return points
