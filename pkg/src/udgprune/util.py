"""Shared plumbing: seed derivation, confidence intervals, atomic writes."""

from __future__ import annotations

import math
import os
import tempfile

import numpy as np

__all__ = ["derived_seed", "wilson_interval", "atomic_write_text"]


def derived_seed(base: int, *key: int) -> int:
    """Deterministic 64-bit child seed for (base, key...) via SeedSequence.

    Used to hand independent streams to trials and workers; reproducing a
    single trial only needs its derived seed.
    """
    state = np.random.SeedSequence((base,) + tuple(key)).generate_state(1, np.uint64)
    return int(state[0])


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson 95% score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def atomic_write_text(path, text: str) -> None:
    """Write text to ``path`` via a temp file + rename so readers never see
    a partial file and failures leave no output behind."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
