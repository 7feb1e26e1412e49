"""Text, CSV and SVG emitters used by the command line."""

from __future__ import annotations

import csv
import io
import json
from xml.sax.saxutils import escape

import numpy as np

from .hierarchy import grain
from .partition import UnbalancedPartition
from .tree import NodeTuple

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def fmt(x: float, digits: int = 6):
    """Round to ``digits`` significant digits; integral results become ``int``."""
    r = float(f"{x:.{digits}g}")
    if r == 0.0:
        return 0
    return int(r) if r.is_integer() and abs(r) < 1e15 else r


def round_tree(obj, digits: int):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return fmt(obj, digits)
    if isinstance(obj, dict):
        return {k: round_tree(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_tree(v, digits) for v in obj]
    return obj


def dump_json(obj, digits: int, compact: bool = False) -> str:
    obj = round_tree(obj, digits)
    if compact:
        return json.dumps(obj, separators=(",", ":"))
    return json.dumps(obj, indent=2)


def partition_csv(partition: UnbalancedPartition, samples: int, digits: int) -> str:
    u = np.linspace(0.0, partition.span, samples)
    u[-1] = partition.span
    mu = partition.membership_matrix(u)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["u", *partition.names])
    for x, row in zip(u, mu):
        writer.writerow([fmt(partition.universe.to_external(x), digits)] + [fmt(d, digits) for d in row])
    return buf.getvalue()


class _Canvas:
    def __init__(self, lo, hi, rows=1, width=720, row_height=220, margin=50):
        self.lo, self.hi = lo, hi
        self.width = width
        self.row_height = row_height
        self.margin = margin
        self.height = rows * row_height + margin
        self.items = []

    def x(self, v):
        return self.margin + (v - self.lo) / (self.hi - self.lo) * (self.width - 2 * self.margin)

    def y(self, degree, row=0):
        top = self.margin / 2 + row * self.row_height
        return top + (1.0 - degree) * (self.row_height - self.margin)

    def axes(self, row=0):
        y0 = self.y(0.0, row)
        self.items.append(
            f'<line class="axis" x1="{self.x(self.lo):.2f}" y1="{y0:.2f}" '
            f'x2="{self.x(self.hi):.2f}" y2="{y0:.2f}" stroke="black"/>'
        )
        self.items.append(
            f'<line class="axis" x1="{self.x(self.lo):.2f}" y1="{self.y(1.0, row):.2f}" '
            f'x2="{self.x(self.lo):.2f}" y2="{y0:.2f}" stroke="black"/>'
        )

    def polyline(self, pts, row, color, cls, title):
        coords = " ".join(f"{self.x(a):.2f},{self.y(b, row):.2f}" for a, b in pts)
        self.items.append(
            f'<polyline class="{cls}" points="{coords}" fill="none" stroke="{color}">'
            f"<title>{escape(title)}</title></polyline>"
        )

    def label(self, v, row, text):
        self.items.append(
            f'<text x="{self.x(v):.2f}" y="{self.y(0.0, row) + 16:.2f}" font-size="10" '
            f'text-anchor="middle">{escape(text)}</text>'
        )

    def render(self) -> str:
        body = "\n".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n{body}\n</svg>\n'
        )


def partition_svg(partition: UnbalancedPartition) -> str:
    """One polyline per term side plus two axis lines."""
    span = partition.span
    ext = partition.universe.to_external
    canvas = _Canvas(ext(0.0), ext(span))
    canvas.axes()
    for i, term in enumerate(partition.terms):
        color = PALETTE[i % len(PALETTE)]
        k = term.kernel
        if term.upside is not None:
            g = grain(term.upside.level, span)
            canvas.polyline([(ext(k - g), 0.0), (ext(k), 1.0)], 0, color, "upside", f"{term.name} upside {term.upside}")
        if term.downside is not None:
            g = grain(term.downside.level, span)
            canvas.polyline([(ext(k), 1.0), (ext(k + g), 0.0)], 0, color, "downside", f"{term.name} downside {term.downside}")
        canvas.label(ext(k), 0, term.name)
    return canvas.render()


def nodes_svg(nodes: list[NodeTuple]) -> str:
    """Each node's label triangle drawn on its own level row."""
    levels = sorted({n.level for n in nodes})
    row_of = {lvl: r for r, lvl in enumerate(levels)}
    canvas = _Canvas(0.0, 1.0, rows=len(levels), row_height=120)
    for lvl in levels:
        canvas.axes(row_of[lvl])
    for i, node in enumerate(nodes):
        g = grain(node.level, 1.0)
        p = node.position
        row = row_of[node.level]
        canvas.polyline(
            [(p - g, 0.0), (p, 1.0), (p + g, 0.0)], row, PALETTE[i % len(PALETTE)], "node", f"{node.name} {node.two_tuple}"
        )
        canvas.label(p, row, node.name)
    return canvas.render()


def rows_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()
