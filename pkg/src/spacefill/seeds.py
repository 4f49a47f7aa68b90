"""Single seeding scheme for every random draw in the package.

All pseudo-randomness flows through numpy's PCG64 generator, keyed by a
``SeedSequence`` built from a tuple of nonnegative integers.  The first
integer is the user-facing 64-bit seed; any further integers are
derivation keys (restart index, family index, replicate index, ...).
Two runs that build the same key tuple get the identical stream, which is
what makes every experiment replayable from its recorded seeds.
"""

from __future__ import annotations

import numpy as np

MAX_SEED = 2**64 - 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def rng_from(*keys: int) -> np.random.Generator:
    """PCG64 generator keyed by (seed, *derivation indices)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(keys))))


def derive_seed(*keys: int) -> int:
    """Collapse a key tuple back into a single 64-bit seed."""
    state = np.random.SeedSequence(list(keys)).generate_state(1, np.uint64)
    return int(state[0])
