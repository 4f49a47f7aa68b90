"""Shannon entropy estimators used as design objectives.

Two estimators, both in nats.  The Monte Carlo estimator averages the log
of a Gaussian kernel density estimate over the design's own points
(resubstitution).  The nearest-neighbor estimator works from the log
nearest-neighbor distances plus unit-ball volume, Euler constant and
ln(n-1) correction terms, and needs no density estimate at all.

For a density supported on [0, 1]^d the entropy is <= 0 with the maximum,
zero, attained only by the uniform density, which is what makes these
estimates usable as maximization objectives for uniform designs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial.distance import cdist

from .designs import DegenerateDesignError, Design

EULER_GAMMA = 0.5772156649


class EstimatorMethod(str, Enum):
    MC_KDE = "MC_KDE"
    NN_KL = "NN_KL"


@dataclass(frozen=True)
class KdeParams:
    """Kernel parameters for the Monte Carlo estimator.

    ``h`` is the bandwidth, held fixed for the whole of an optimization
    run.  ``s2`` is the per-coordinate kernel variance; built from a
    dimension it equals d/12, the variance of the uniform distribution on
    [0, 1] times d.
    """

    h: float
    s2: float
    leave_one_out: bool = False

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"bandwidth must be positive, got {self.h}")
        if not self.s2 > 0:
            raise ValueError(f"kernel variance must be positive, got {self.s2}")

    @classmethod
    def for_design_size(cls, n: int, d: int, leave_one_out: bool = False) -> "KdeParams":
        return cls(h=scott_bandwidth(n, d), s2=d / 12.0, leave_one_out=leave_one_out)


@dataclass(frozen=True)
class EntropyEstimate:
    value: float
    method: EstimatorMethod
    params: KdeParams | None = None

    def __post_init__(self):
        if self.method is EstimatorMethod.MC_KDE and self.params is None:
            raise ValueError("MC_KDE estimates carry their kernel parameters")
        if self.method is EstimatorMethod.NN_KL and self.params is not None:
            raise ValueError("NN_KL estimates carry no kernel parameters")


def scott_bandwidth(n: int, d: int) -> float:
    """Scott-rule bandwidth with the uniform-distribution standard deviation.

    h = 12^(-1/2) * n^(-1/(d+4)).
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be at least 1")
    return (1.0 / math.sqrt(12.0)) * n ** (-1.0 / (d + 4))


def gaussian_kernel(z, d: int) -> float:
    """Multivariate Gaussian kernel K(z) = (2 pi)^(-d/2) s^(-d) exp(-||z||^2 / (2 s^2)).

    The per-coordinate variance is s^2 = d/12.
    """
    z = np.asarray(z, dtype=float).reshape(-1)
    if z.shape[0] != d:
        raise ValueError(f"z has {z.shape[0]} coordinates, expected {d}")
    s2 = d / 12.0
    norm = (2.0 * math.pi) ** (-d / 2.0) * s2 ** (-d / 2.0)
    return norm * math.exp(-float(z @ z) / (2.0 * s2))


def kde_density(x, design: Design, params: KdeParams) -> float:
    """Kernel density estimate f_hat(x) = (1 / (n h^d)) sum_i K((x - X_i) / h).

    Defined (and strictly positive) for every x, not just inside the cube.
    The sum always runs over all n design points; the ``leave_one_out``
    switch only affects the resubstitution sums of :func:`entropy_mc`,
    where the evaluation point is one of the sample points by construction.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    d = design.d
    if x.shape[0] != d:
        raise ValueError(f"x has {x.shape[0]} coordinates, expected {d}")
    z2 = np.sum(((x - design.points) / params.h) ** 2, axis=1)
    s2 = params.s2
    norm = (2.0 * math.pi) ** (-d / 2.0) * s2 ** (-d / 2.0)
    kernels = norm * np.exp(-z2 / (2.0 * s2))
    return float(kernels.sum() / (design.n * params.h**d))


def entropy_mc(design: Design, params: KdeParams | None = None) -> EntropyEstimate:
    """Monte Carlo entropy estimate H = -(1/n) sum_i ln f_hat(X_i).

    The density is evaluated at the design's own points.  By default every
    point contributes its own kernel term K(0) (plain resubstitution); with
    ``params.leave_one_out`` the self term is dropped and each density sum
    is normalized by n - 1 instead.
    """
    if params is None:
        params = KdeParams.for_design_size(design.n, design.d)
    value = mc_entropy_of_points(design.points, params)
    return EntropyEstimate(value=value, method=EstimatorMethod.MC_KDE, params=params)


def entropy_nn(design: Design) -> EntropyEstimate:
    """Nearest-neighbor entropy estimate.

    H = (d/n) sum_i ln rho_i + ln(pi^(d/2) / Gamma(d/2 + 1)) + C_E + ln(n-1)

    with rho_i the Euclidean nearest-neighbor distance of point i and C_E
    the Euler constant.  Coincident points make some rho_i zero and the
    estimate undefined, which is reported as a degenerate design.
    """
    value = nn_entropy_of_points(design.points, check_duplicates=True)
    return EntropyEstimate(value=value, method=EstimatorMethod.NN_KL)


# ---------------------------------------------------------------------------
# Array-level kernels.  The exchange search evaluates these thousands of
# times per run, so they take bare point arrays and skip container checks.
# ---------------------------------------------------------------------------

def mc_entropy_of_points(points: np.ndarray, params: KdeParams) -> float:
    n, d = points.shape
    if params.leave_one_out and n < 2:
        raise ValueError("leave-one-out resubstitution needs at least 2 points")
    sq = cdist(points, points, "sqeuclidean")
    norm = (2.0 * math.pi) ** (-d / 2.0) * params.s2 ** (-d / 2.0)
    kernels = norm * np.exp(-sq / (params.h**2 * 2.0 * params.s2))
    if params.leave_one_out:
        np.fill_diagonal(kernels, 0.0)
        densities = kernels.sum(axis=1) / ((n - 1) * params.h**d)
    else:
        densities = kernels.sum(axis=1) / (n * params.h**d)
    return float(-np.mean(np.log(densities)))


def nn_entropy_of_points(points: np.ndarray, check_duplicates: bool = False) -> float:
    n, d = points.shape
    dist = cdist(points, points)
    np.fill_diagonal(dist, np.inf)
    rho = dist.min(axis=1)
    if np.any(rho == 0.0):
        if check_duplicates:
            i, j = np.argwhere(dist == 0.0)[0]
            raise DegenerateDesignError(
                f"nearest-neighbor entropy is undefined: points {i} and {j} coincide"
            )
        return -math.inf
    unit_ball = (d / 2.0) * math.log(math.pi) - math.lgamma(d / 2.0 + 1.0)
    return float(
        (d / n) * np.log(rho).sum() + unit_ball + EULER_GAMMA + math.log(n - 1)
    )
