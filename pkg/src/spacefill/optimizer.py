"""Stochastic exchange search for entropy-maximal and maximin designs.

One iteration replaces a single, uniformly chosen design point with a
fresh uniform candidate and keeps the exchange iff the objective strictly
improves.  There is no annealing: the accepted-objective sequence is
strictly increasing by construction.  A run stops when the proposal
budget is spent or after a configured number of consecutive rejections.

Because a single run can land in a poor local optimum depending on its
starting design, :func:`best_of_restarts` runs several independently
seeded searches and keeps the best final design.

Objective evaluation is a full recomputation per proposal: O(n^2)
distances for the nearest-neighbor entropy and maximin objectives, an
O(n^2) kernel sum for the Monte Carlo entropy.  At desk scale (n <= 100,
d <= 10, 1e4..1e5 proposals) that completes in seconds to minutes;
incremental distance updates are a known optimization opportunity, not a
requirement.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
from scipy.spatial.distance import pdist

from .designs import Design, format_float, validate_design
from .entropy import KdeParams, mc_entropy_of_points, nn_entropy_of_points
from .generators import GeneratorSpec, generate
from .seeds import check_seed, derive_seed, rng_from


class ObjectiveKind(str, Enum):
    ENTROPY_MC = "mc"
    ENTROPY_NN = "nn"
    MAXIMIN = "maximin"


@dataclass(frozen=True)
class Objective:
    """What the exchange search maximizes.

    The Monte Carlo entropy objective carries kernel parameters fixed at
    construction time; the bandwidth is computed once from the design
    shape and never adapts during a run.
    """

    kind: ObjectiveKind
    kde_params: KdeParams | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ObjectiveKind(self.kind))
        if self.kind is ObjectiveKind.ENTROPY_MC and self.kde_params is None:
            raise ValueError("the MC entropy objective needs kernel parameters")

    @classmethod
    def for_design_shape(cls, kind, n: int, d: int) -> "Objective":
        kind = ObjectiveKind(kind)
        params = KdeParams.for_design_size(n, d) if kind is ObjectiveKind.ENTROPY_MC else None
        return cls(kind=kind, kde_params=params)

    def value_of_points(self, points: np.ndarray) -> float:
        """Objective value on a bare point array; -inf marks an inadmissible state."""
        if self.kind is ObjectiveKind.MAXIMIN:
            return float(pdist(points).min())
        if self.kind is ObjectiveKind.ENTROPY_NN:
            return nn_entropy_of_points(points)
        return mc_entropy_of_points(points, self.kde_params)

    def value(self, design: Design) -> float:
        return self.value_of_points(design.points)


@dataclass(frozen=True)
class ExchangeConfig:
    """Search budget and seeding for one optimization run.

    ``max_iterations`` caps the number of proposals; ``stall_limit`` stops
    a run after that many consecutive rejections.  Defaults are sized so a
    20-point, 2-dimensional run visibly converges.
    """

    max_iterations: int
    stall_limit: int
    restarts: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.stall_limit < 1:
            raise ValueError("stall_limit must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        check_seed(self.seed)

    @classmethod
    def default_for(cls, n: int, restarts: int = 5, seed: int = 0) -> "ExchangeConfig":
        return cls(max_iterations=500 * n, stall_limit=50 * n, restarts=restarts, seed=seed)


@dataclass(frozen=True)
class OptResult:
    """Best design found plus the convergence record of its run.

    ``objective_trace`` holds (iteration, objective) pairs: the initial
    value at iteration 0, then every accepted proposal.  The values are
    strictly increasing.
    """

    design: Design
    objective_trace: tuple[tuple[int, float], ...]
    accepted_count: int
    proposed_count: int
    restart_index: int = 0

    @property
    def objective_value(self) -> float:
        return self.objective_trace[-1][1]


def exchange_optimize(
    initial: Design, objective: Objective, config: ExchangeConfig, restart_index: int = 0
) -> OptResult:
    """Run one exchange search from ``initial``.

    Proposals that would duplicate an existing point are inadmissible
    (objective -inf) and simply rejected; the initial design itself must
    be admissible or the search cannot start.
    """
    points = initial.points.copy()
    n, d = points.shape
    current = objective.value_of_points(points)
    if current == -math.inf:
        raise ValueError(
            f"initial design is inadmissible for the {objective.kind.value} objective "
            "(coincident points)"
        )
    rng = rng_from(config.seed)
    trace = [(0, current)]
    accepted = 0
    proposed = 0
    stall = 0
    while proposed < config.max_iterations and stall < config.stall_limit:
        index = int(rng.integers(n))
        candidate = rng.random(d)
        saved = points[index].copy()
        points[index] = candidate
        trial = objective.value_of_points(points)
        proposed += 1
        if trial > current:
            current = trial
            accepted += 1
            stall = 0
            trace.append((proposed, current))
        else:
            points[index] = saved
            stall += 1
    return OptResult(
        design=validate_design(points),
        objective_trace=tuple(trace),
        accepted_count=accepted,
        proposed_count=proposed,
        restart_index=restart_index,
    )


def best_of_restarts(
    generator: GeneratorSpec, objective: Objective, config: ExchangeConfig
) -> OptResult:
    """Run ``config.restarts`` independent searches and keep the best result.

    Restart r draws its initial design with seed derive(config.seed, r, 0)
    and its search stream with seed derive(config.seed, r, 1); ties on the
    final objective go to the lowest restart index.
    """
    best: OptResult | None = None
    for r in range(config.restarts):
        init_spec = GeneratorSpec(
            family=generator.family,
            n=generator.n,
            d=generator.d,
            seed=derive_seed(config.seed, r, 0),
        )
        run_config = ExchangeConfig(
            max_iterations=config.max_iterations,
            stall_limit=config.stall_limit,
            restarts=1,
            seed=derive_seed(config.seed, r, 1),
        )
        result = exchange_optimize(generate(init_spec), objective, run_config, restart_index=r)
        if best is None or result.objective_value > best.objective_value:
            best = result
    return best


def write_trace_csv(result: OptResult, path) -> None:
    """Convergence trace as CSV with columns iteration, objective (accepted steps)."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["iteration", "objective"])
        for iteration, value in result.objective_trace:
            writer.writerow([iteration, format_float(value)])
