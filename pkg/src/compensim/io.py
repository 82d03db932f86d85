"""CSV and plain-PGM writers plus the matching readers.

Floats are written with 17 significant digits, which round-trips every
double exactly; NaN is written as ``nan``.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .core import FidelitySeries
from .sweep import SweepGrid

PGM_FLOOR = 1e-8  # maps to white (255)
PGM_CEILING = 1.0  # maps to black (0)
PGM_MAXVAL = 255


def fmt(x) -> str:
    x = float(x)
    return "nan" if math.isnan(x) else "%.17g" % x


def write_csv(path, header, rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> tuple[list[str], np.ndarray]:
    text = Path(path).read_text().splitlines()
    header = text[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in text[1:] if line], dtype=float)
    return header, data.reshape(-1, len(header))


def write_grid_csv(path, grid: SweepGrid) -> None:
    rows = (
        (a, b, grid.cells[i, j])
        for i, a in enumerate(grid.axis1_values)
        for j, b in enumerate(grid.axis2_values)
    )
    write_csv(path, (grid.axis1_name, grid.axis2_name, grid.metric_name), rows)


def read_grid_csv(path) -> SweepGrid:
    header, data = read_csv(path)
    n2 = int(np.argmax(data[:, 0] != data[0, 0])) or len(data)
    a1, a2 = data[::n2, 0], data[:n2, 1]
    cells = data[:, 2].reshape(len(a1), n2)
    return SweepGrid(header[0], a1, header[1], a2, cells, header[2])


def write_fidelity_csv(path, series: FidelitySeries) -> None:
    write_csv(path, ("n", "F"), zip(series.n, series.fidelity))


def read_fidelity_csv(path) -> FidelitySeries:
    _, data = read_csv(path)
    return FidelitySeries(data[:, 0].astype(int), data[:, 1])


def gray_levels(cells) -> np.ndarray:
    """Log map: ``<= 1e-8`` is white, ``>= 1`` is black, NaN is black."""
    c = np.asarray(cells, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        lg = np.log10(np.clip(c, PGM_FLOOR, PGM_CEILING))
    lo, hi = math.log10(PGM_FLOOR), math.log10(PGM_CEILING)
    level = np.rint(PGM_MAXVAL * (hi - lg) / (hi - lo))
    level[np.isnan(c)] = 0
    return level.astype(int)


def write_pgm(path, cells) -> None:
    """Plain (P2) graymap, one image row per axis1 value."""
    g = gray_levels(cells)
    h, w = g.shape
    lines = ["P2", f"# log10 metric, floor {PGM_FLOOR:g} white, ceiling {PGM_CEILING:g} black", f"{w} {h}", str(PGM_MAXVAL)]
    lines += [" ".join(str(v) for v in row) for row in g]
    Path(path).write_text("\n".join(lines) + "\n")


def read_pgm(path) -> np.ndarray:
    tokens = []
    for line in Path(path).read_text().splitlines():
        tokens += line.split("#", 1)[0].split()
    if tokens[0] != "P2":
        raise ValueError("not a plain PGM file")
    w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    if maxval != PGM_MAXVAL:
        raise ValueError(f"unexpected maxval {maxval}")
    return np.array(tokens[4:], dtype=int).reshape(h, w)
