"""Design container, validation and distance geometry.

A design is an ordered set of n points in the unit hypercube [0, 1]^d.
Everything else in the package (entropy estimators, uniformity criteria,
the exchange search) consumes this container, so validation lives here and
is done once at the boundary.  All distances are Euclidean.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.spatial.distance import cdist


class InvalidDesignError(ValueError):
    """Raised when a point table violates the design invariants."""


class DegenerateDesignError(ValueError):
    """Raised when an operation is undefined for coincident points."""


class DesignFormatError(ValueError):
    """Raised when a design CSV file cannot be parsed."""


@dataclass(frozen=True)
class Design:
    """n points in [0, 1]^d, in a stable order.

    Instances are immutable: ``points`` is a read-only (n, d) float array.
    Construct through :func:`validate_design` (or the generator functions),
    which enforce the invariants.  ``has_duplicates`` records whether any
    two rows coincide exactly; duplicates are legal at the container level
    and only rejected by consumers that cannot handle them.
    """

    points: np.ndarray
    has_duplicates: bool = field(default=False, compare=False)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Design):
            return NotImplemented
        return self.points.shape == other.points.shape and bool(
            np.all(self.points == other.points)
        )

    def __hash__(self):
        return hash(self.points.tobytes())


def as_point_table(raw) -> np.ndarray:
    """Coerce a nested sequence or array into a rectangular (n, d) float array."""
    try:
        table = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidDesignError(f"point table is not rectangular numeric data: {exc}") from None
    if table.ndim != 2:
        raise InvalidDesignError(
            f"point table must be 2-dimensional (n points x d coordinates), got shape {table.shape}"
        )
    return table


def validate_design(raw) -> Design:
    """Validate a raw n x d table and wrap it as a :class:`Design`.

    Checks: rectangular input, n >= 2, d >= 1, every coordinate inside
    [0, 1] (boundary inclusive; points may sit on the edge of the cube).
    Duplicate rows are permitted and flagged, not rejected.
    """
    table = as_point_table(raw)
    n, d = table.shape
    if n < 2:
        raise InvalidDesignError(f"a design needs at least 2 points, got {n}")
    if d < 1:
        raise InvalidDesignError("a design needs at least 1 coordinate per point")
    if not np.all(np.isfinite(table)):
        bad = np.argwhere(~np.isfinite(table))[0]
        raise InvalidDesignError(
            f"coordinate at point {bad[0]}, axis {bad[1]} is not finite"
        )
    if np.any(table < 0.0) or np.any(table > 1.0):
        bad = np.argwhere((table < 0.0) | (table > 1.0))[0]
        raise InvalidDesignError(
            f"coordinate at point {bad[0]}, axis {bad[1]} is outside [0, 1]: "
            f"{table[bad[0], bad[1]]!r}"
        )
    points = table.copy()
    points.setflags(write=False)
    has_duplicates = len(np.unique(points, axis=0)) < n
    return Design(points=points, has_duplicates=has_duplicates)


def pairwise_distances(design: Design) -> np.ndarray:
    """Full n x n Euclidean distance matrix (symmetric, zero diagonal)."""
    return distance_matrix(design.points)


def nn_distances(design: Design) -> np.ndarray:
    """Nearest-neighbor distance of every point: rho_i = min_{j != i} ||X_i - X_j||.

    Entries can be zero when the design contains duplicate points; callers
    that cannot tolerate that decide for themselves.
    """
    return nearest_neighbor_distances(design.points)


# Array-level kernels, shared with the optimizer hot path where wrapping
# every candidate in a Design would dominate the cost.

def distance_matrix(points: np.ndarray) -> np.ndarray:
    dist = cdist(points, points)
    np.fill_diagonal(dist, 0.0)
    return dist


def nearest_neighbor_distances(points: np.ndarray) -> np.ndarray:
    dist = cdist(points, points)
    np.fill_diagonal(dist, np.inf)
    return dist.min(axis=1)


# ---------------------------------------------------------------------------
# CSV design format: header row x1,...,xd, one row per point, decimal-point
# floats, UTF-8, no index column.  This is the wire format used repo-wide.
# ---------------------------------------------------------------------------

def format_float(value: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(value))


def write_design_csv(design: Design, path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([f"x{k + 1}" for k in range(design.d)])
        for row in design.points:
            writer.writerow([format_float(v) for v in row])


def read_design_csv(path) -> Design:
    """Parse a design CSV, reporting the offending row/column on failure."""
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DesignFormatError(f"{path}: file is empty") from None
        expected = [f"x{k + 1}" for k in range(len(header))]
        if header != expected:
            raise DesignFormatError(
                f"{path}: header must be x1,...,xd, got {','.join(header)!r}"
            )
        d = len(header)
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != d:
                raise DesignFormatError(
                    f"{path}: row {line_no} has {len(row)} columns, expected {d}"
                )
            values = []
            for col, cell in enumerate(row, start=1):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise DesignFormatError(
                        f"{path}: row {line_no}, column {col}: {cell!r} is not a number"
                    ) from None
            rows.append(values)
    if not rows:
        raise DesignFormatError(f"{path}: no data rows")
    # A syntactically fine file can still hold an invalid design (point out
    # of range, single row); that surfaces as InvalidDesignError unchanged.
    return validate_design(rows)
