"""Deterministic input lists: random, sorted and reverse-sorted orderings.

Random lists come from the PCG64 bit generator (O'Neill's PCG XSL-RR 128/64
as shipped in NumPy), seeded through ``numpy.random.PCG64(seed)``.  Only the
raw 64-bit output stream is used, which NumPy keeps stable across versions
and platforms.  Each raw word is reduced to the value range with a 32-bit
multiply-shift: ``lo + ((raw >> 32) * span >> 32)``.  For the default full
signed 32-bit range this is exact, with no bias.
"""

import enum
from dataclasses import dataclass

import numpy as np

INT32_RANGE = (-(2**31), 2**31 - 1)
PAPER_SIZES = (4096, 6144, 8192, 10240, 12288, 14336, 16384)


class Ordering(enum.Enum):
    RANDOM = "random"
    SORTED = "sorted"
    REVERSED = "reversed"

    @classmethod
    def parse(cls, text):
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(o.value for o in cls)
            raise ValueError(f"unknown ordering {text!r}; expected one of {names}") from None


@dataclass(frozen=True)
class Workload:
    size: int
    ordering: Ordering = Ordering.RANDOM
    seed: int = 0
    value_range: tuple = None

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"size must be >= 0, got {self.size}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        lo, hi = self.bounds
        if lo > hi:
            raise ValueError(f"empty value range [{lo}, {hi}]")
        if self.ordering is Ordering.RANDOM:
            if hi - lo >= 2**32:
                raise ValueError("random value range may span at most 2**32 values")
        elif hi - lo + 1 < self.size:
            raise ValueError(f"range [{lo}, {hi}] too small for {self.size} distinct values")

    @property
    def bounds(self):
        if self.value_range is not None:
            return tuple(self.value_range)
        if self.ordering is Ordering.RANDOM:
            return INT32_RANGE
        return (0, max(self.size - 1, 0))


def pcg64_raw(seed, count):
    """First ``count`` raw 64-bit outputs of PCG64 for ``seed``."""
    return np.random.PCG64(seed).random_raw(count)


def generate(w):
    n = w.size
    lo, hi = w.bounds
    if w.ordering is Ordering.SORTED:
        return list(range(lo, lo + n))
    if w.ordering is Ordering.REVERSED:
        return list(range(lo + n - 1, lo - 1, -1))
    if n == 0:
        return []
    top = pcg64_raw(w.seed, n) >> np.uint64(32)
    span = hi - lo + 1
    if span == 2**32:
        offsets = top
    else:
        offsets = (top * np.uint64(span)) >> np.uint64(32)
    return [lo + int(x) for x in offsets]


def paper_size_sweep():
    return list(PAPER_SIZES)
