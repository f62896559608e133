"""Exception types shared across the package."""


class HeapError(Exception):
    pass


class CapacityError(HeapError):
    """Raised when an insert or a simulation would exceed the configured capacity."""


class EmptyHeapError(HeapError, IndexError):
    pass


class ConfigError(ValueError):
    """Invalid configuration: bad arity, clock, cost field, or config-file syntax."""


class RangeError(ValueError):
    """A lookup fell outside the range covered by a table."""


class TimerError(RuntimeError):
    """The timing source failed or went backwards."""
