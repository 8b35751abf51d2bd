"""Reading TSPLIB-style instance files and deriving solver inputs.

Supports 2D coordinate instances with EUC_2D, CEIL_2D, or ATT edge
weights.  Parsing is tolerant of whitespace and keyword-ordering
variations but strict about anything that would corrupt the cost
matrix: unknown weight types, malformed coordinates, or a node count
that disagrees with DIMENSION all raise :class:`TsplibError`.

Cities are 0-indexed everywhere inside the library; the 1-based ids
used by the file format are translated at this boundary only.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

SUPPORTED_EDGE_WEIGHT_TYPES = ("EUC_2D", "CEIL_2D", "ATT")

_REQUIRED_KEYWORDS = ("NAME", "DIMENSION", "EDGE_WEIGHT_TYPE")


class TsplibError(ValueError):
    """Raised when an instance file is malformed or unsupported."""


@dataclass
class TspInstance:
    """A parsed coordinate instance: name, size, weight rule, (N, 2) coords."""

    name: str
    dimension: int
    edge_weight_type: str
    coords: np.ndarray

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=np.float64)
        if self.coords.shape != (self.dimension, 2):
            raise TsplibError(
                f"coords shape {self.coords.shape} does not match "
                f"dimension {self.dimension}"
            )


def _split_keyword(line: str):
    """Return (keyword, value) for a spec line, or None for section lines."""
    if ":" in line:
        key, _, value = line.partition(":")
        return key.strip().upper(), value.strip()
    return line.strip().upper(), ""


def parse_tsplib(text: str) -> TspInstance:
    """Parse the contents of a TSPLIB file into a :class:`TspInstance`."""
    name = None
    dimension = None
    edge_weight_type = None
    coord_lines: list[str] = []

    lines = text.splitlines()
    i = 0
    n_lines = len(lines)
    in_coords = False
    while i < n_lines:
        raw = lines[i].strip()
        i += 1
        if not raw:
            continue
        if in_coords:
            if raw.upper() == "EOF":
                in_coords = False
                continue
            first = raw.split(None, 1)[0]
            try:
                float(first)
            except ValueError:
                # A keyword line terminates the coordinate section.
                in_coords = False
            else:
                coord_lines.append(raw)
                continue
        key, value = _split_keyword(raw)
        if key == "NAME":
            name = value
        elif key == "DIMENSION":
            try:
                dimension = int(value)
            except ValueError as exc:
                raise TsplibError(f"bad DIMENSION value: {value!r}") from exc
        elif key == "EDGE_WEIGHT_TYPE":
            edge_weight_type = value.upper()
        elif key == "NODE_COORD_SECTION":
            in_coords = True
        elif key == "EOF":
            break
        else:
            # TYPE, COMMENT, DISPLAY_DATA_TYPE, ... are irrelevant here.
            continue

    if name is None:
        raise TsplibError("missing NAME keyword")
    if dimension is None:
        raise TsplibError("missing DIMENSION keyword")
    if edge_weight_type is None:
        raise TsplibError("missing EDGE_WEIGHT_TYPE keyword")
    if edge_weight_type not in SUPPORTED_EDGE_WEIGHT_TYPES:
        raise TsplibError(
            f"unsupported EDGE_WEIGHT_TYPE {edge_weight_type!r}; "
            f"supported: {', '.join(SUPPORTED_EDGE_WEIGHT_TYPES)}"
        )
    if not coord_lines:
        raise TsplibError("missing NODE_COORD_SECTION")
    if dimension < 3:
        raise TsplibError(f"DIMENSION must be at least 3, got {dimension}")
    if len(coord_lines) != dimension:
        raise TsplibError(
            f"expected {dimension} coordinate lines, found {len(coord_lines)}"
        )

    coords = np.empty((dimension, 2), dtype=np.float64)
    seen = np.zeros(dimension, dtype=bool)
    for raw in coord_lines:
        parts = raw.split()
        if len(parts) != 3:
            raise TsplibError(f"malformed coordinate line: {raw!r}")
        try:
            node = int(float(parts[0]))
            x = float(parts[1])
            y = float(parts[2])
        except ValueError as exc:
            raise TsplibError(f"malformed coordinate line: {raw!r}") from exc
        if not 1 <= node <= dimension:
            raise TsplibError(f"node id {node} outside 1..{dimension}")
        if seen[node - 1]:
            raise TsplibError(f"duplicate node id {node}")
        seen[node - 1] = True
        coords[node - 1, 0] = x
        coords[node - 1, 1] = y
    if not seen.all():
        missing = int(np.flatnonzero(~seen)[0]) + 1
        raise TsplibError(f"missing coordinates for node {missing}")

    return TspInstance(name, dimension, edge_weight_type, coords)


def parse_tsplib_file(path: str | os.PathLike) -> TspInstance:
    """Parse a TSPLIB file from disk."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tsplib(fh.read())


def _nint(x: np.ndarray | float):
    """TSPLIB integer rounding: nearest integer, halves away from zero-up."""
    return np.floor(x + 0.5)


def edge_weight(instance: TspInstance, i: int, j: int) -> int:
    """Integer edge weight between 0-based cities i and j."""
    if i == j:
        return 0
    dx = instance.coords[i, 0] - instance.coords[j, 0]
    dy = instance.coords[i, 1] - instance.coords[j, 1]
    sq = dx * dx + dy * dy
    kind = instance.edge_weight_type
    if kind == "EUC_2D":
        return int(_nint(np.sqrt(sq)))
    if kind == "CEIL_2D":
        return int(np.ceil(np.sqrt(sq)))
    if kind == "ATT":
        r = np.sqrt(sq / 10.0)
        t = _nint(r)
        return int(t + 1) if t < r else int(t)
    raise TsplibError(f"unsupported EDGE_WEIGHT_TYPE {kind!r}")


def build_cost_matrix(instance: TspInstance) -> np.ndarray:
    """Full symmetric (N, N) int64 cost matrix with a zero diagonal."""
    xy = instance.coords
    diff = xy[:, None, :] - xy[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    kind = instance.edge_weight_type
    if kind == "EUC_2D":
        d = _nint(np.sqrt(sq))
    elif kind == "CEIL_2D":
        d = np.ceil(np.sqrt(sq))
    elif kind == "ATT":
        r = np.sqrt(sq / 10.0)
        t = _nint(r)
        d = np.where(t < r, t + 1.0, t)
    else:
        raise TsplibError(f"unsupported EDGE_WEIGHT_TYPE {kind!r}")
    out = d.astype(np.int64)
    np.fill_diagonal(out, 0)
    return out


def build_neighbor_lists(d: np.ndarray, k: int = 20) -> np.ndarray:
    """Per-city candidate lists: the k nearest other cities, ascending.

    Ties are broken toward the lower city index (stable sort), so the
    lists are fully determined by the cost matrix.  Returns an
    (N, min(k, N-1)) int32 array.
    """
    n = d.shape[0]
    if d.shape != (n, n):
        raise ValueError("cost matrix must be square")
    if k < 1:
        raise ValueError("k must be at least 1")
    width = min(k, n - 1)
    nn = np.empty((n, width), dtype=np.int32)
    for i in range(n):
        order = np.argsort(d[i], kind="stable")
        row = order[order != i]
        nn[i] = row[:width]
    return nn


def parse_opt_tour(text: str) -> np.ndarray:
    """Parse a TSPLIB .tour file; returns the 0-based city sequence."""
    tour: list[int] = []
    in_section = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        upper = line.upper()
        if upper.startswith("TOUR_SECTION"):
            in_section = True
            continue
        if not in_section:
            continue
        if upper == "EOF":
            break
        done = False
        for tok in line.split():
            val = int(tok)
            if val == -1:
                done = True
                break
            tour.append(val - 1)
        if done:
            break
    if not tour:
        raise TsplibError("no TOUR_SECTION entries found")
    return np.asarray(tour, dtype=np.int32)


def parse_opt_tour_file(path: str | os.PathLike) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_opt_tour(fh.read())
