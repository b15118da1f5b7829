"""JSON exchange formats for matrices and frames, plus CSV report writers.

Matrix format: {"rows": r, "cols": c, "re": [...], "im": [...]} with entries
row-major.  Frame format: {"dim": d, "vectors": [matrix, ...]} where each
vector is a rows x 1 matrix object.  Round-trips are bit-exact for finite
doubles (Python's float repr is shortest-round-trip).
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .constructions import GrowthSeries
from .frames import Frame, make_frame
from .linalg import as_matrix

__all__ = [
    "matrix_to_dict",
    "matrix_from_dict",
    "write_matrix",
    "read_matrix",
    "frame_to_dict",
    "frame_from_dict",
    "write_frame",
    "read_frame",
    "write_growth_csv",
    "write_records_csv",
    "write_nodes_csv",
]


def matrix_to_dict(m) -> dict:
    """Encode a matrix as a JSON-ready dict (row-major re/im parts)."""
    m = as_matrix(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(x) for x in m.real.ravel()],
        "im": [float(x) for x in m.imag.ravel()],
    }


def matrix_from_dict(d: dict) -> np.ndarray:
    """Decode the matrix exchange format."""
    try:
        rows, cols = int(d["rows"]), int(d["cols"])
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.size != rows * cols or im.size != rows * cols:
        raise ValueError(
            f"matrix payload length {re.size}/{im.size} != rows*cols = {rows * cols}"
        )
    return as_matrix((re + 1j * im).reshape(rows, cols))


def write_matrix(path, m) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(m)) + "\n")


def read_matrix(path) -> np.ndarray:
    return matrix_from_dict(json.loads(Path(path).read_text()))


def frame_to_dict(frame: Frame) -> dict:
    """Encode a frame as its dimension plus per-vector matrix objects."""
    return {
        "dim": frame.dim,
        "vectors": [matrix_to_dict(frame.vectors[:, k : k + 1]) for k in range(frame.count)],
    }


def frame_from_dict(d: dict) -> Frame:
    try:
        dim = int(d["dim"])
        vectors = [matrix_from_dict(v).reshape(-1) for v in d["vectors"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed frame object: {exc}") from exc
    return make_frame(vectors, dim=dim)


def write_frame(path, frame: Frame) -> None:
    Path(path).write_text(json.dumps(frame_to_dict(frame)) + "\n")


def read_frame(path) -> Frame:
    return frame_from_dict(json.loads(Path(path).read_text()))


def write_growth_csv(path, series: GrowthSeries) -> None:
    """Columns: N, partial_sum, increment_ratio (blank where undefined)."""
    ratios = series.increment_ratios
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["N", "partial_sum", "increment_ratio"])
        for i, (n, s) in enumerate(zip(series.truncations, series.partial_sums)):
            ratio = f"{ratios[i - 2]:.17g}" if 2 <= i < len(series.truncations) else ""
            writer.writerow([n, f"{s:.17g}", ratio])


def write_nodes_csv(path, points: np.ndarray, weights: np.ndarray | None = None) -> None:
    """Columns: re, im, weight (weight omitted when not given).

    Serves both quadrature rules (nodes with dA weights) and sampling
    lattices (points only).
    """
    points = np.asarray(points).reshape(-1)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if weights is None:
            writer.writerow(["re", "im"])
            for z in points:
                writer.writerow([f"{z.real:.17g}", f"{z.imag:.17g}"])
        else:
            writer.writerow(["re", "im", "weight"])
            for z, w in zip(points, np.asarray(weights).reshape(-1)):
                writer.writerow([f"{z.real:.17g}", f"{z.imag:.17g}", f"{w:.17g}"])


def write_records_csv(path, records: list[dict]) -> None:
    """Write homogeneous record dicts with a stable header order."""
    if not records:
        Path(path).write_text("")
        return
    header: list[str] = []
    for rec in records:
        for key in rec:
            if key not in header:
                header.append(key)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=header)
        writer.writeheader()
        writer.writerows(records)
