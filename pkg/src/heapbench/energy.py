"""Average-power models and energy arithmetic (E = P * t)."""

import bisect
from dataclasses import dataclass, field

from .errors import RangeError


@dataclass(frozen=True)
class EnergyEstimate:
    time_s: float
    power_w: float
    energy_j: float


@dataclass(frozen=True)
class ConstantPower:
    """Fixed average power, independent of size and arity."""

    watts: float

    def __post_init__(self):
        if not self.watts > 0:
            raise ValueError(f"power must be positive, got {self.watts}")

    def power(self, size=None, arity=None):
        return self.watts


@dataclass(frozen=True)
class PerSizeTablePower:
    """Power looked up by input size, linearly interpolated between entries.

    Sizes outside the table's range raise :class:`RangeError`.
    """

    table: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.table:
            raise ValueError("power table is empty")
        if any(not w > 0 for w in self.table.values()):
            raise ValueError("all table powers must be positive")
        object.__setattr__(self, "table", {int(s): float(w) for s, w in sorted(self.table.items())})

    def power(self, size=None, arity=None):
        if size is None:
            raise ValueError("a per-size power table needs the input size")
        sizes = list(self.table)
        if size in self.table:
            return self.table[size]
        if size < sizes[0] or size > sizes[-1]:
            raise RangeError(f"size {size} outside table range [{sizes[0]}, {sizes[-1]}]")
        j = bisect.bisect_left(sizes, size)
        s0, s1 = sizes[j - 1], sizes[j]
        w0, w1 = self.table[s0], self.table[s1]
        return w0 + (w1 - w0) * (size - s0) / (s1 - s0)


@dataclass(frozen=True)
class AffineInArityPower:
    """``base_watts + watts_per_k * k``: wider heaps burn more power."""

    base_watts: float
    watts_per_k: float

    def __post_init__(self):
        if not self.base_watts > 0:
            raise ValueError("base_watts must be positive")
        if self.watts_per_k < 0:
            raise ValueError("watts_per_k must be non-negative")

    def power(self, size=None, arity=None):
        if arity is None:
            raise ValueError("an arity-dependent power model needs the arity")
        return self.base_watts + self.watts_per_k * arity


def estimate_energy(model, time_s, size=None, arity=None):
    if time_s < 0:
        raise ValueError(f"time must be >= 0, got {time_s}")
    p = model.power(size=size, arity=arity)
    return EnergyEstimate(time_s=time_s, power_w=p, energy_j=p * time_s)


def fit_constant_power(pairs):
    """Least-squares power through the origin for (time_s, energy_j) pairs."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one (time, energy) pair")
    if any(t <= 0 for t, _ in pairs):
        raise ValueError("all times must be positive")
    return sum(t * e for t, e in pairs) / sum(t * t for t, _ in pairs)


def improvement_ratios(sw, hw):
    """(time, energy) ratios of software over hardware; > 1 means hardware wins."""
    (sw_t, sw_e), (hw_t, hw_e) = sw, hw
    if not (hw_t > 0 and hw_e > 0):
        raise ValueError("hardware time and energy must be positive")
    return sw_t / hw_t, sw_e / hw_e
