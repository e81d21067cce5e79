"""
Deterministic random streams.

All randomness in radarbox flows from an integer seed plus a path of stream
identifiers (frame index, detector index, ...), so any frame can be rebuilt in
isolation and in any order.
"""

import numpy as np

from .errors import ConfigError


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Build an independent generator for `seed` and a stream path.

    Examples:
        >>> a = make_rng(7, 3)
        >>> b = make_rng(7, 3)
        >>> float(a.random()) == float(b.random())
        True
    """
    if seed < 0 or any(s < 0 for s in stream):
        raise ConfigError(f"seed and stream ids must be non-negative, got {(seed, *stream)}")
    return np.random.default_rng([seed, *stream])


def derive_seed(seed: int, *stream: int) -> int:
    """Derive a child integer seed, used where an API takes a plain seed."""
    return int(make_rng(seed, *stream).integers(0, 2**31 - 1))
