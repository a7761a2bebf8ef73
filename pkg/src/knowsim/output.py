"""Trajectory export: deterministic CSV and a dependency-free SVG line chart."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Mapping, Sequence

from .engine import Trajectory

__all__ = ["write_csv", "render_svg", "atomic_write_bytes"]

# chart geometry: 640x480 canvas, time axis at y=470 starting at x=10,
# default divisor 5 on time and per-channel value multipliers below
_WIDTH, _HEIGHT, _X0, _Y0 = 640, 480, 10.0, 470.0
_TIME_DIVISOR = 5.0

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_csv(trajectory: Trajectory, destination) -> int:
    """Write the trajectory as CSV; returns the number of bytes written.

    Columns: t, Z1..Zn, Z, r, P, F, Pr, segment.  Floats carry 17
    significant digits so every double round-trips exactly; identical
    runs produce identical bytes.
    """
    if trajectory.n_rows == 0:
        raise ValueError("trajectory has no rows")
    names = trajectory.channel_names()
    columns = [trajectory.channel(name) for name in names]
    lines = [",".join(names)]
    for i in range(trajectory.n_rows):
        cells = [_fmt(col[i]) for col in columns[:-1]]
        cells.append(str(int(columns[-1][i])))  # segment index
        lines.append(",".join(cells))
    payload = ("\n".join(lines) + "\n").encode("ascii")
    if hasattr(destination, "write"):
        destination.write(payload)
    else:
        Path(destination).write_bytes(payload)
    return len(payload)


def _default_scale(channel: str) -> float:
    if channel in ("r", "Pr"):
        return 200.0
    if channel == "P":
        return 1.2
    return 4.0  # knowledge-like channels (Z, Z1..Zn, F)


def render_svg(
    trajectory: Trajectory,
    channels: Sequence[str],
    scales: Mapping[str, float] | None = None,
) -> str:
    """Render selected channels as polylines over the time axis.

    Fixed 640x480 canvas; x = 10 + t/scale("t"), y = 470 - scale(ch)*value.
    `scales` overrides the per-channel defaults ("t" sets the time
    divisor).  Output is deterministic for identical inputs.
    """
    scales = dict(scales or {})
    for key in scales:
        if key != "t":
            trajectory.channel(key)  # raises on unknown names
    for name in channels:
        trajectory.channel(name)
    time_div = scales.get("t", _TIME_DIVISOR)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<line x1="0" y1="{_Y0:g}" x2="{_WIDTH}" y2="{_Y0:g}" stroke="black"/>',
        f'<line x1="{_X0:g}" y1="0" x2="{_X0:g}" y2="{_HEIGHT}" stroke="black"/>',
    ]
    t = trajectory.t
    for idx, name in enumerate(channels):
        scale = scales.get(name, _default_scale(name))
        values = trajectory.channel(name)
        points = " ".join(
            f"{_X0 + t[i] / time_div:.3f},{_Y0 - scale * values[i]:.3f}"
            for i in range(trajectory.n_rows)
        )
        color = _PALETTE[idx % len(_PALETTE)]
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{points}"/>'
        )
        parts.append(
            f'<text x="16" y="{16 + 14 * idx}" fill="{color}" '
            f'font-family="monospace" font-size="12">{name} x{scale:g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def atomic_write_bytes(path, payload: bytes) -> int:
    """Write via a temp file in the same directory, then rename into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return len(payload)
