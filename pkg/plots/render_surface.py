#!/usr/bin/env python3
"""Render an exported eigenvalue-surface mesh CSV into a 3D figure.

Height is the real part of the energy, color its imaginary part on a
diverging map symmetric about zero, so regions with a real spectrum sit
at the midpoint color.  One surface is drawn per sheet.  The input is
the mesh CSV written by `specmon surface` (header
`re_omega,im_omega,sheet,re_E,im_E`); this script has no other coupling
to the generator.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib import cm, colors

MESH_HEADER = "re_omega,im_omega,sheet,re_E,im_E"


class MeshFormatError(ValueError):
    """Malformed mesh CSV; the message carries the offending row number."""


@dataclass(frozen=True)
class PlotJob:
    mesh_path: str
    image_path: str
    cmap: str = "coolwarm"
    elev: float = 25.0
    azim: float = -60.0
    dpi: int = 110
    quads: int = 64  # surface tessellation per axis
    title: str | None = None


def read_mesh(path):
    """Parse the CSV into per-sheet grids of complex E over the omega grid.

    Returns (re_axis, im_axis, {sheet: E array with NaN holes}).  Rows are
    validated one by one; the first bad row aborts with its number."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().rstrip("\n")
        if header != MESH_HEADER:
            raise MeshFormatError(f"row 1: bad header {header!r}, expected {MESH_HEADER!r}")
        rows = []
        for lineno, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").split(",")
            if len(parts) != 5:
                raise MeshFormatError(f"row {lineno}: expected 5 fields, got {len(parts)}")
            try:
                rows.append(
                    (float(parts[0]), float(parts[1]), int(parts[2]),
                     float(parts[3]), float(parts[4]))
                )
            except ValueError:
                raise MeshFormatError(f"row {lineno}: unparsable field in {line!r}") from None
    if not rows:
        raise MeshFormatError("row 2: mesh has a header but no data rows")

    re_axis = np.array(sorted({r[0] for r in rows}))
    im_axis = np.array(sorted({r[1] for r in rows}))
    re_index = {v: i for i, v in enumerate(re_axis)}
    im_index = {v: i for i, v in enumerate(im_axis)}
    sheets = {}
    for re_w, im_w, sheet, re_e, im_e in rows:
        grid = sheets.setdefault(
            sheet, np.full((len(im_axis), len(re_axis)), np.nan + 1j * np.nan, dtype=complex)
        )
        grid[im_index[im_w], re_index[re_w]] = complex(re_e, im_e)
    return re_axis, im_axis, sheets


def render(job: PlotJob) -> str:
    """Draw every sheet of the mesh and write the raster image."""
    re_axis, im_axis, sheets = read_mesh(job.mesh_path)
    x, y = np.meshgrid(re_axis, im_axis)

    vmax = 0.0
    for grid in sheets.values():
        finite = grid[np.isfinite(grid)]
        if finite.size:
            vmax = max(vmax, float(np.abs(finite.imag).max()))
    vmax = vmax or 1e-12  # all-real spectra still get the midpoint color
    norm = colors.Normalize(vmin=-vmax, vmax=vmax)
    cmap = cm.get_cmap(job.cmap)

    fig = plt.figure(figsize=(7.2, 5.6))
    ax = fig.add_subplot(111, projection="3d")
    for sheet in sorted(sheets):
        grid = sheets[sheet]
        ax.plot_surface(
            x,
            y,
            grid.real,
            facecolors=cmap(norm(grid.imag)),
            rcount=job.quads,
            ccount=job.quads,
            linewidth=0,
            antialiased=False,
            shade=False,
        )
    ax.view_init(elev=job.elev, azim=job.azim)
    ax.set_xlabel("Re $\\omega$")
    ax.set_ylabel("Im $\\omega$")
    ax.set_zlabel("Re $E$")
    if job.title:
        ax.set_title(job.title)
    mappable = cm.ScalarMappable(norm=norm, cmap=cmap)
    fig.colorbar(mappable, ax=ax, shrink=0.6, pad=0.1, label="Im $E$")
    fig.savefig(
        job.image_path,
        dpi=job.dpi,
        metadata={"Software": "render_surface"},
    )
    plt.close(fig)
    return job.image_path


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("mesh", help="input mesh CSV")
    ap.add_argument("image", help="output PNG path")
    ap.add_argument("--cmap", default="coolwarm", help="diverging colormap name")
    ap.add_argument("--elev", type=float, default=25.0)
    ap.add_argument("--azim", type=float, default=-60.0)
    ap.add_argument("--dpi", type=int, default=110)
    ap.add_argument("--quads", type=int, default=64)
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)
    job = PlotJob(
        mesh_path=args.mesh,
        image_path=args.image,
        cmap=args.cmap,
        elev=args.elev,
        azim=args.azim,
        dpi=args.dpi,
        quads=args.quads,
        title=args.title,
    )
    try:
        render(job)
    except (MeshFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
