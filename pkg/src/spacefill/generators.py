"""Baseline design families: random, Latin hypercube, and low-discrepancy.

These are the classic points-in-the-cube constructions used both as
comparison designs and as starting points for the exchange search.  The
seeded families (random, lhs) draw from the package-wide PCG64 scheme in
:mod:`spacefill.seeds`; Halton, Hammersley and Sobol are deterministic and
ignore the seed entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .designs import Design, validate_design
from .seeds import check_seed, rng_from

SOBOL_MAX_DIMENSION = 10


class UnsupportedDimensionError(ValueError):
    """Raised when a deterministic family has no construction for this d."""


class Family(str, Enum):
    RANDOM = "random"
    LHS = "lhs"
    HALTON = "halton"
    HAMMERSLEY = "hammersley"
    SOBOL = "sobol"


@dataclass(frozen=True)
class GeneratorSpec:
    """Which family to draw, at what size, from which seed."""

    family: Family
    n: int
    d: int
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.d < 1:
            raise ValueError(f"d must be at least 1, got {self.d}")
        if self.family is Family.SOBOL and self.d > SOBOL_MAX_DIMENSION:
            raise UnsupportedDimensionError(
                f"sobol designs are tabulated up to d={SOBOL_MAX_DIMENSION}, got d={self.d}"
            )
        check_seed(self.seed)


def generate(spec: GeneratorSpec) -> Design:
    """Materialize the design a :class:`GeneratorSpec` describes."""
    if spec.family is Family.RANDOM:
        return random_design(spec.n, spec.d, spec.seed)
    if spec.family is Family.LHS:
        return lhs_design(spec.n, spec.d, spec.seed)
    if spec.family is Family.HALTON:
        return halton_design(spec.n, spec.d)
    if spec.family is Family.HAMMERSLEY:
        return hammersley_design(spec.n, spec.d)
    return sobol_design(spec.n, spec.d)


def random_design(n: int, d: int, seed: int = 0) -> Design:
    """n i.i.d. uniform points; identical for identical seeds."""
    rng = rng_from(check_seed(seed))
    return validate_design(rng.random((n, d)))


def lhs_design(n: int, d: int, seed: int = 0) -> Design:
    """Plain (unoptimized) Latin hypercube design.

    For every coordinate, exactly one point falls in each of the n strata
    [(i-1)/n, i/n), uniformly positioned inside its stratum, with an
    independent random permutation per coordinate.  Draw order is fixed
    (permutation then jitter, coordinate by coordinate) so a seed pins the
    design exactly.
    """
    rng = rng_from(check_seed(seed))
    points = np.empty((n, d))
    for k in range(d):
        strata = rng.permutation(n)
        jitter = rng.random(n)
        points[:, k] = (strata + jitter) / n
    return validate_design(points)


def van_der_corput(index: int, base: int) -> float:
    """Radical inverse of ``index`` in the given base: digit reversal across the point."""
    if base < 2:
        raise ValueError(f"base must be at least 2, got {base}")
    if index < 0:
        raise ValueError(f"index must be nonnegative, got {index}")
    value = 0.0
    scale = 1.0
    while index > 0:
        index, digit = divmod(index, base)
        scale /= base
        value += digit * scale
    return value


def first_primes(count: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % p for p in primes):
            primes.append(candidate)
        candidate += 1
    return primes


def halton_design(n: int, d: int) -> Design:
    """Halton points 1..n: coordinate k is the radical inverse in the k-th prime base."""
    bases = first_primes(d)
    points = np.array(
        [[van_der_corput(i, base) for base in bases] for i in range(1, n + 1)]
    )
    return validate_design(points)


def hammersley_design(n: int, d: int) -> Design:
    """Hammersley set: evenly spaced first coordinate, Halton for the rest.

    The first coordinate is (i - 1/2)/n for i = 1..n -- centered so no
    point sits exactly at 1.0 while staying evenly spread.  The remaining
    d-1 coordinates are the Halton construction in the first d-1 primes.
    """
    points = np.empty((n, d))
    points[:, 0] = (np.arange(1, n + 1) - 0.5) / n
    bases = first_primes(d - 1)
    for k, base in enumerate(bases, start=1):
        points[:, k] = [van_der_corput(i, base) for i in range(1, n + 1)]
    return validate_design(points)


# ---------------------------------------------------------------------------
# Sobol sequence, tabulated direction numbers for d <= 10.
#
# Per dimension: (polynomial degree s, middle-coefficient bits a, initial
# odd values m_1..m_s).  The first coordinate is the base-2 radical
# inverse and needs no entry.  Values are the standard Joe-Kuo table.
# ---------------------------------------------------------------------------

_SOBOL_TABLE: list[tuple[int, int, list[int]]] = [
    (1, 0, [1]),              # dimension 2
    (2, 1, [1, 3]),           # dimension 3
    (3, 1, [1, 3, 1]),        # dimension 4
    (3, 2, [1, 1, 1]),        # dimension 5
    (4, 1, [1, 1, 3, 3]),     # dimension 6
    (4, 4, [1, 3, 5, 13]),    # dimension 7
    (5, 2, [1, 1, 5, 5, 17]), # dimension 8
    (5, 4, [1, 1, 5, 5, 5]),  # dimension 9
    (5, 7, [1, 1, 7, 11, 19]),# dimension 10
]

_SOBOL_BITS = 32


def _direction_integers(dim_index: int, n_bits: int) -> np.ndarray:
    """Direction numbers V_1..V_L for one coordinate, scaled by 2^32."""
    if dim_index == 0:
        return np.array([1 << (_SOBOL_BITS - k) for k in range(1, n_bits + 1)], dtype=np.uint64)
    s, a, m_initial = _SOBOL_TABLE[dim_index - 1]
    m = list(m_initial)
    while len(m) < n_bits:
        k = len(m) + 1
        new = m[k - s - 1] ^ (m[k - s - 1] << s)
        for i in range(1, s):
            if (a >> (s - 1 - i)) & 1:
                new ^= m[k - i - 1] << i
        m.append(new)
    return np.array(
        [m[k - 1] << (_SOBOL_BITS - k) for k in range(1, n_bits + 1)], dtype=np.uint64
    )


def sobol_sequence(count: int, d: int) -> np.ndarray:
    """First ``count`` raw Sobol points, including the initial all-zeros point.

    Point i is the XOR of the direction numbers selected by the binary
    digits of i.  Prefixes of length 2^m (taken from index 0) are exactly
    balanced: every coordinate puts 2^(m-1) points in each half of [0, 1).
    """
    if d < 1:
        raise ValueError(f"d must be at least 1, got {d}")
    if d > SOBOL_MAX_DIMENSION:
        raise UnsupportedDimensionError(
            f"sobol designs are tabulated up to d={SOBOL_MAX_DIMENSION}, got d={d}"
        )
    n_bits = max(int(count - 1).bit_length(), 1)
    points = np.zeros((count, d))
    for dim in range(d):
        directions = _direction_integers(dim, n_bits)
        acc = np.zeros(count, dtype=np.uint64)
        for bit in range(n_bits):
            selected = (np.arange(count, dtype=np.uint64) >> np.uint64(bit)) & np.uint64(1)
            acc ^= selected * directions[bit]
        points[:, dim] = acc / float(1 << _SOBOL_BITS)
    return points


def sobol_design(n: int, d: int) -> Design:
    """First n Sobol points with the all-zeros point at index 0 skipped."""
    return validate_design(sobol_sequence(n + 1, d)[1:])
