"""Sample Riemann-surface sheets over a rectangle and export CSV meshes.

Grid points are labeled by the canonical closed-form sheet order, not by
continuity, so branch cuts show up as jumps in the exported surface —
which is how the sheet plots are meant to look.  Branch points falling
exactly on the grid are skipped and counted.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .spectrum import OscillatorParams, SpectralFamily, sheet_values

MESH_HEADER = "re_omega,im_omega,sheet,re_E,im_E"

# Figure-style defaults: m = 1, n = 1 over omega in [-2, 2] x [-2, 2]i.
DEFAULT_RANGE = (-2.0, 2.0)
DEFAULT_RESOLUTION = 201


@dataclass(frozen=True)
class SurfaceMesh:
    family: SpectralFamily
    params: OscillatorParams
    rows: tuple[tuple[float, float, int, float, float], ...]
    skipped_points: int


def sample_surface(
    family: SpectralFamily,
    params: OscillatorParams,
    re_range: tuple[float, float] = DEFAULT_RANGE,
    im_range: tuple[float, float] = DEFAULT_RANGE,
    resolution: int = DEFAULT_RESOLUTION,
) -> SurfaceMesh:
    """Evaluate every sheet on a resolution x resolution grid.

    Rows come out ordered by (sheet, im_omega, re_omega), ready for
    write_mesh."""
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    re_axis = np.linspace(re_range[0], re_range[1], resolution)
    im_axis = np.linspace(im_range[0], im_range[1], resolution)

    per_sheet: list[list[tuple[float, float, int, float, float]]] = [
        [] for _ in range(family.sheet_count)
    ]
    skipped = 0
    for im in im_axis:
        for re in re_axis:
            try:
                values = sheet_values(family, params, complex(re, im))
            except ValueError:
                skipped += 1
                continue
            for sheet, e in enumerate(values):
                per_sheet[sheet].append((float(re), float(im), sheet, e.real, e.imag))
    rows = tuple(row for sheet_rows in per_sheet for row in sheet_rows)
    return SurfaceMesh(family, params, rows, skipped)


def _format_row(row) -> str:
    re_w, im_w, sheet, re_e, im_e = row
    return f"{re_w:.17g},{im_w:.17g},{sheet:d},{re_e:.17g},{im_e:.17g}"


def write_mesh(mesh: SurfaceMesh, destination) -> int:
    """Write the CSV (17 significant digits, exact round-trip); returns
    the row count.  `destination` is a path or a writable text stream."""
    if hasattr(destination, "write"):
        return _write_stream(mesh, destination)
    with open(destination, "w", encoding="ascii", newline="\n") as fh:
        return _write_stream(mesh, fh)


def _write_stream(mesh: SurfaceMesh, fh) -> int:
    fh.write(MESH_HEADER + "\n")
    count = 0
    for row in mesh.rows:
        fh.write(_format_row(row) + "\n")
        count += 1
    return count


def read_mesh_rows(source) -> list[tuple[float, float, int, float, float]]:
    """Parse a mesh CSV back into row tuples (header is required verbatim)."""
    if hasattr(source, "read"):
        return _read_stream(source)
    with open(source, "r", encoding="ascii") as fh:
        return _read_stream(fh)


def _read_stream(fh) -> list[tuple[float, float, int, float, float]]:
    header = fh.readline().rstrip("\n")
    if header != MESH_HEADER:
        raise ValueError(f"row 1: bad mesh header {header!r}, expected {MESH_HEADER!r}")
    rows = []
    for lineno, line in enumerate(fh, start=2):
        parts = line.rstrip("\n").split(",")
        if len(parts) != 5:
            raise ValueError(f"row {lineno}: expected 5 fields, got {len(parts)}")
        try:
            rows.append(
                (float(parts[0]), float(parts[1]), int(parts[2]), float(parts[3]), float(parts[4]))
            )
        except ValueError:
            raise ValueError(f"row {lineno}: unparsable numeric field in {line!r}") from None
    return rows


def mesh_to_text(mesh: SurfaceMesh) -> str:
    buf = io.StringIO()
    write_mesh(mesh, buf)
    return buf.getvalue()
