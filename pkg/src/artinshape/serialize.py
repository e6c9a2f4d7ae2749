"""Canonical records for shapes and tilings, plus the text grid renderer."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .generators import NamedDecomposition
from .shapes import ArtinClass, GradedShape, ShapeStats, make_shape

__all__ = [
    "shape_to_records",
    "shape_from_records",
    "stats_to_record",
    "format_ratio",
    "tiling_to_records",
    "grid_rows",
    "render_grid",
]


def shape_to_records(shape: GradedShape) -> list[dict]:
    """Sorted ``{shift, class, mult}`` records, F before A, no zero entries."""
    return [{"shift": s, "class": str(c), "mult": m} for s, c, m in shape.items()]


def shape_from_records(records: Iterable[dict]) -> GradedShape:
    items = []
    for rec in records:
        try:
            s, c, m = rec["shift"], rec["class"], rec["mult"]
        except (KeyError, TypeError):
            raise ValueError(f"malformed shape record: {rec!r}") from None
        items.append((s, ArtinClass.parse(c), m))
    return make_shape(items)


def format_ratio(ratio) -> str:
    if ratio == math.inf:
        return "inf"
    return f"{ratio.numerator}/{ratio.denominator}"


def stats_to_record(st: ShapeStats) -> dict:
    return {
        "rank": st.rank,
        "countF": st.count_f,
        "countA": st.count_a,
        "ratio": format_ratio(st.ratio),
    }


def tiling_to_records(placements: Iterable[tuple[str, int]]) -> list[dict]:
    ordered = sorted(placements, key=lambda p: (p[1], p[0]))
    return [{"tile": name, "shift": s} for name, s in ordered]


def _cell(mf: int, ma: int) -> str:
    parts = []
    if mf:
        parts.append("F" if mf == 1 else f"{mf}F")
    if ma:
        parts.append("A" if ma == 1 else f"{ma}A")
    return "+".join(parts)


def grid_rows(decomp: NamedDecomposition) -> list[dict]:
    """One row per summand: its label, shift and the cell at each absolute shift."""
    rows = []
    for summand in sorted(decomp.summands, key=lambda s: (s.shift, s.label)):
        placed = summand.tile.shifted(summand.shift).entries
        top = max(placed)
        cells = [_cell(*placed.get(k, (0, 0))) for k in range(summand.shift, top + 1)]
        rows.append({"tile": summand.label, "shift": summand.shift, "cells": cells})
    return rows


def render_grid(rows: Sequence[dict], header: bool = True) -> str:
    """Lay rows out on a common column grid, one column per shift."""
    if not rows:
        return ""
    ncols = max(r["shift"] + len(r["cells"]) for r in rows)
    width = max(len(c) for r in rows for c in r["cells"])
    if header:
        width = max(width, len(str(ncols - 1)))
    lines = []
    if header:
        lines.append(" ".join(str(k).rjust(width) for k in range(ncols)).rstrip())
    for r in rows:
        cells = [""] * r["shift"] + list(r["cells"])
        lines.append(" ".join(c.rjust(width) for c in cells).rstrip())
    return "\n".join(lines)
