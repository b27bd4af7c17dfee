"""CSV schema contracts and readers for the figure tool.

The upstream toolkit documents two file kinds:

  region    ensemble,theta,phi1..phi{d-2},i1p..i{d-1}p
            (schmidt-ensemble rows leave theta and phi blank)
  contours  curve,xi,i1p,i2p

Headers must match exactly, names and order both; anything else is
refused with a column diff so the caller can see what file they actually
passed.  Data rows only need the coordinate columns parsed: the tool
plots invariants, never parameters.
"""

from __future__ import annotations

import csv


class SchemaMismatch(ValueError):
    """CSV header differs from the documented schema; message carries the diff."""


def region_columns(d: int) -> list[str]:
    """Documented region-sample header for qudit dimension d."""
    phis = [f"phi{k}" for k in range(1, d - 1)]
    ips = [f"i{j}p" for j in range(1, d)]
    return ["ensemble", "theta"] + phis + ips


def contour_columns() -> list[str]:
    """Documented boundary-contour header (d=3 curves only)."""
    return ["curve", "xi", "i1p", "i2p"]


def header_diff(expected: list[str], actual: list[str]) -> str:
    lines = [
        "expected columns: " + ",".join(expected),
        "actual columns:   " + ",".join(actual),
    ]
    missing = [c for c in expected if c not in actual]
    unexpected = [c for c in actual if c not in expected]
    if missing:
        lines.append("missing:          " + ",".join(missing))
    if unexpected:
        lines.append("unexpected:       " + ",".join(unexpected))
    if not missing and not unexpected:
        lines.append("columns are present but out of order")
    return "\n".join(lines)


def _checked_rows(path: str, expected: list[str]):
    """Yield data rows of a CSV after validating its header exactly."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            actual = next(reader)
        except StopIteration:
            raise SchemaMismatch(f"{path}: empty file, expected header\n"
                                 + header_diff(expected, []))
        if actual != expected:
            raise SchemaMismatch(f"{path}: header mismatch\n"
                                 + header_diff(expected, actual))
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(expected):
                raise ValueError(f"{path}:{lineno}: expected {len(expected)} "
                                 f"fields, got {len(row)}")
            yield lineno, row


def read_region(path: str, d: int) -> dict[str, list[tuple[float, ...]]]:
    """Invariant coordinates of a region CSV, grouped by ensemble tag.

    Returns ensemble -> list of (i1p, ..., i{d-1}p) tuples; parameter
    columns are ignored (they are blank for the schmidt ensemble anyway).
    """
    expected = region_columns(d)
    n_coords = d - 1
    points: dict[str, list[tuple[float, ...]]] = {}
    for lineno, row in _checked_rows(path, expected):
        try:
            coords = tuple(float(v) for v in row[-n_coords:])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-numeric invariant value "
                             f"in {row[-n_coords:]}")
        points.setdefault(row[0], []).append(coords)
    return points


def read_contours(path: str) -> dict[str, list[tuple[float, float]]]:
    """Boundary curves of a contour CSV: curve name -> (i1p, i2p) points.

    Points keep file order, which the upstream writer emits sorted by the
    curve parameter, so each list draws as a connected polyline.
    """
    expected = contour_columns()
    curves: dict[str, list[tuple[float, float]]] = {}
    for lineno, row in _checked_rows(path, expected):
        try:
            point = (float(row[2]), float(row[3]))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-numeric coordinate "
                             f"in {row[2:4]}")
        curves.setdefault(row[0], []).append(point)
    return curves
