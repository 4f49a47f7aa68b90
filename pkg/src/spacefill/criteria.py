"""Uniformity and structure criteria for scoring designs.

Five views of the same question, "how evenly do these points fill the
cube":

* ``mindist`` -- minimal inter-point distance (larger is better);
* ``coverage`` -- coefficient of variation of the nearest-neighbor
  distances, zero exactly on a regular grid (smaller is better);
* ``dl2`` -- L2 star discrepancy, anchored at the origin, via the Warnock
  closed form (smaller is better);
* ``dc2`` -- centered L2 discrepancy, symmetric under coordinate
  reflection, via the Hickernell closed form (smaller is better);
* ``mst_edges`` / ``mst_stats`` -- mean and standard deviation of the
  minimum-spanning-tree edge lengths, which together locate a design
  between regular-grid and clustered structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .designs import DegenerateDesignError, Design, distance_matrix, nearest_neighbor_distances


@dataclass(frozen=True)
class CriteriaReport:
    """All criteria of one design, plus its shape and an optional label."""

    cov: float
    mindist: float
    dl2: float
    dc2: float
    mst_mean: float
    mst_std: float
    n: int
    d: int
    label: str | None = None

    def to_dict(self) -> dict:
        out = {
            "cov": self.cov,
            "mindist": self.mindist,
            "dl2": self.dl2,
            "dc2": self.dc2,
            "mst_mean": self.mst_mean,
            "mst_std": self.mst_std,
            "n": self.n,
            "d": self.d,
        }
        if self.label is not None:
            out["label"] = self.label
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CriteriaReport":
        return cls(
            cov=float(data["cov"]),
            mindist=float(data["mindist"]),
            dl2=float(data["dl2"]),
            dc2=float(data["dc2"]),
            mst_mean=float(data["mst_mean"]),
            mst_std=float(data["mst_std"]),
            n=int(data["n"]),
            d=int(data["d"]),
            label=data.get("label"),
        )


def mindist(design: Design) -> float:
    """Minimal Euclidean distance between two design points."""
    dist = distance_matrix(design.points)
    iu = np.triu_indices(design.n, k=1)
    return float(dist[iu].min())


def coverage(design: Design) -> float:
    """Coefficient of variation of the nearest-neighbor distances.

    cov = (1 / gamma_bar) * sqrt((1/n) * sum_i (gamma_i - gamma_bar)^2)
    with gamma_i the nearest-neighbor distance of point i.  Zero iff all
    gamma_i are equal, as on a regular grid.
    """
    gamma = nearest_neighbor_distances(design.points)
    gamma_bar = float(gamma.mean())
    if gamma_bar == 0.0:
        raise DegenerateDesignError(
            "coverage is undefined when all points coincide (zero mean NN distance)"
        )
    return float(np.sqrt(np.mean((gamma - gamma_bar) ** 2)) / gamma_bar)


def dl2(design: Design) -> float:
    """L2 star discrepancy by the Warnock closed form.

    DL2^2 = 3^(-d) - (2^(1-d)/n) sum_i prod_k (1 - x_ik^2)
          + (1/n^2) sum_i sum_j prod_k (1 - max(x_ik, x_jk))
    """
    x = design.points
    n, d = x.shape
    term1 = 3.0 ** (-d)
    term2 = (2.0 ** (1 - d) / n) * np.prod(1.0 - x**2, axis=1).sum()
    pairmax = np.maximum(x[:, None, :], x[None, :, :])
    term3 = np.prod(1.0 - pairmax, axis=2).sum() / n**2
    return float(np.sqrt(max(term1 - term2 + term3, 0.0)))


def dc2(design: Design) -> float:
    """Centered L2 discrepancy by the Hickernell closed form.

    DC2^2 = (13/12)^d
          - (2/n) sum_i prod_k [1 + |x_ik - 1/2|/2 - |x_ik - 1/2|^2/2]
          + (1/n^2) sum_i sum_j prod_k [1 + |x_ik - 1/2|/2 + |x_jk - 1/2|/2
                                          - |x_ik - x_jk|/2]
    """
    x = design.points
    n, d = x.shape
    c = np.abs(x - 0.5)
    term1 = (13.0 / 12.0) ** d
    term2 = (2.0 / n) * np.prod(1.0 + 0.5 * c - 0.5 * c**2, axis=1).sum()
    cross = 1.0 + 0.5 * c[:, None, :] + 0.5 * c[None, :, :] - 0.5 * np.abs(
        x[:, None, :] - x[None, :, :]
    )
    term3 = np.prod(cross, axis=2).sum() / n**2
    return float(np.sqrt(max(term1 - term2 + term3, 0.0)))


def mst_edges(design: Design) -> np.ndarray:
    """Edge lengths of a minimum spanning tree of the complete Euclidean graph.

    Dense-graph Prim, O(n^2).  Ties in edge weight are broken toward the
    smallest point index, so the tree (and therefore the returned multiset)
    is deterministic; the multiset is unique whenever all pairwise
    distances are distinct.  Lengths are returned in nondecreasing order.
    """
    dist = distance_matrix(design.points)
    n = design.n
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = dist[0].copy()
    best[0] = np.inf
    edges = []
    for _ in range(n - 1):
        next_vertex = int(np.argmin(best))  # argmin takes the smallest index on ties
        edges.append(float(best[next_vertex]))
        in_tree[next_vertex] = True
        best = np.where(~in_tree & (dist[next_vertex] < best), dist[next_vertex], best)
        best[next_vertex] = np.inf
    return np.sort(np.array(edges))


def mst_stats(edges) -> tuple[float, float]:
    """Arithmetic mean and population standard deviation of MST edge lengths."""
    edges = np.asarray(edges, dtype=float)
    if edges.size == 0:
        raise ValueError("need at least one edge")
    return float(edges.mean()), float(edges.std())


def evaluate(design: Design, label: str | None = None) -> CriteriaReport:
    """Score one design on every criterion."""
    edges = mst_edges(design)
    mean, std = mst_stats(edges)
    return CriteriaReport(
        cov=coverage(design),
        mindist=mindist(design),
        dl2=dl2(design),
        dc2=dc2(design),
        mst_mean=mean,
        mst_std=std,
        n=design.n,
        d=design.d,
        label=label,
    )
