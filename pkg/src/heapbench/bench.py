"""Experiment driver: software timing, hardware simulation, energy, fits."""

import logging
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from .energy import AffineInArityPower, ConstantPower, estimate_energy, improvement_ratios
from .errors import CapacityError, TimerError
from .heap import heapsort
from .hwsim import HwConfig, simulate
from .workload import Ordering, Workload, generate

log = logging.getLogger(__name__)

# Least-squares fit of the published Raspberry Pi (time, energy) pairs.
DEFAULT_SW_POWER_W = 3.4175
# Demo FPGA-side model; its energy-vs-k curve has an interior minimum.
DEMO_HW_BASE_W = 0.1
DEMO_HW_W_PER_K = 0.0006


def _canonical_key(size, ordering, arity):
    return (size, ordering, arity)


@dataclass
class ExperimentSpec:
    sizes: list
    orderings: list = field(default_factory=lambda: [Ordering.RANDOM])
    arities: list = field(default_factory=lambda: [2])
    repetitions: int = 100
    cooldown_ms: int = 100
    sw_power_model: object = field(default_factory=lambda: ConstantPower(DEFAULT_SW_POWER_W))
    hw_power_model: object = field(
        default_factory=lambda: AffineInArityPower(DEMO_HW_BASE_W, DEMO_HW_W_PER_K))
    hw_config: HwConfig = field(default_factory=HwConfig)
    output_dir: Path = Path("results")
    seed: int = 0
    formats: tuple = ("csv", "markdown")
    jobs: int = 1

    def __post_init__(self):
        if not (self.sizes and self.orderings and self.arities):
            raise ValueError("sizes, orderings and arities must be non-empty")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.cooldown_ms < 0:
            raise ValueError("cooldown_ms must be >= 0")
        self.orderings = [o if isinstance(o, Ordering) else Ordering.parse(o)
                          for o in self.orderings]
        # validates every arity up front
        for k in self.arities:
            replace(self.hw_config, arity=k)
        self.output_dir = Path(self.output_dir)


@dataclass(frozen=True)
class ResultRow:
    size: int
    ordering: str
    arity: int
    sw_time_s: float
    sw_time_stddev: float
    hw_cycles: int
    hw_time_s: float
    sw_energy_j: float
    hw_energy_j: float
    time_ratio: float
    energy_ratio: float


@dataclass(frozen=True)
class RowError:
    size: int
    ordering: str
    arity: int
    message: str


def measure_software(values, k, repetitions=100, cooldown_ms=0,
                     clock=time.perf_counter, sleep=time.sleep):
    """Time ``heapsort`` on fresh copies of ``values``; returns (mean_s, stddev_s).

    Every repetition's output is checked against ``sorted``.  ``clock`` and
    ``sleep`` are injectable for tests.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    values = list(values)
    expected = sorted(values)
    samples = []
    for rep in range(repetitions):
        if rep and cooldown_ms:
            sleep(cooldown_ms / 1000)
        data = list(values)
        try:
            t0 = clock()
            out = heapsort(data, k)
            t1 = clock()
        except OSError as e:
            raise TimerError(f"timer failed: {e}") from e
        if t1 < t0:
            raise TimerError("monotonic clock went backwards")
        if out != expected:
            raise AssertionError(f"heapsort produced unsorted output (k={k}, n={len(values)})")
        samples.append(t1 - t0)
    return statistics.fmean(samples), statistics.pstdev(samples)


def _simulate_point(args):
    values, cfg = args
    res = simulate(values, cfg)
    if res.sorted_output != sorted(values):
        raise AssertionError("simulator output disagrees with the sort oracle")
    return res.total_cycles


def run_with_errors(spec):
    """Run every (size, ordering, arity) point; returns (rows, errors)."""
    points = sorted(
        _canonical_key(n, o.value, k)
        for n in spec.sizes for o in spec.orderings for k in spec.arities
    )
    inputs = {}
    for n, o, _ in points:
        if (n, o) not in inputs:
            inputs[n, o] = generate(Workload(n, Ordering(o), seed=spec.seed))

    jobs = []
    errors = []
    for n, o, k in points:
        cfg = replace(spec.hw_config, arity=k)
        if n > cfg.capacity:
            errors.append(RowError(n, o, k, str(CapacityError(
                f"{n} elements exceed heap capacity {cfg.capacity}"))))
            continue
        jobs.append(((n, o, k), (inputs[n, o], cfg)))

    if spec.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            cycles = list(pool.map(_simulate_point, [a for _, a in jobs]))
    else:
        cycles = [_simulate_point(a) for _, a in jobs]

    rows = []
    # software timing stays serial so runs do not contend for the CPU
    for ((n, o, k), (values, cfg)), hw_cycles in zip(jobs, cycles):
        log.info("point n=%d ordering=%s k=%d: %d cycles", n, o, k, hw_cycles)
        sw_mean, sw_std = measure_software(values, k, spec.repetitions, spec.cooldown_ms)
        hw_time = hw_cycles / cfg.clock_hz
        try:
            sw_e = estimate_energy(spec.sw_power_model, sw_mean, size=n, arity=k).energy_j
            hw_e = estimate_energy(spec.hw_power_model, hw_time, size=n, arity=k).energy_j
            t_ratio, e_ratio = improvement_ratios((sw_mean, sw_e), (hw_time, hw_e))
        except ValueError as e:
            errors.append(RowError(n, o, k, str(e)))
            continue
        rows.append(ResultRow(n, o, k, sw_mean, sw_std, hw_cycles, hw_time,
                              sw_e, hw_e, t_ratio, e_ratio))

    from .report import emit_report, write_errors

    spec.output_dir.mkdir(parents=True, exist_ok=True)
    if rows:
        for fmt in spec.formats:
            emit_report(rows, fmt, spec.output_dir)
    if errors:
        write_errors(errors, spec.output_dir / "errors.csv")
    return rows, errors


def run(spec):
    return run_with_errors(spec)[0]


def fit_scaling(sizes, values, k):
    """Fit ``values ~ c * n * log_k(n)`` through the origin; returns (c, r_squared).

    R^2 is measured against the mean of ``values``.  When the values are all
    equal the total sum of squares is zero and R^2 is reported as 1.0 for a
    perfect fit, 0.0 otherwise.
    """
    if len(sizes) != len(values):
        raise ValueError("sizes and values differ in length")
    if len(sizes) < 3:
        raise ValueError("need at least 3 points to fit")
    xs = [n * math.log(n) / math.log(k) for n in sizes]
    ys = [float(v) for v in values]
    c = sum(x * y for x, y in zip(xs, ys)) / sum(x * x for x in xs)
    mean = statistics.fmean(ys)
    ss_res = sum((y - c * x) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - mean) ** 2 for y in ys)
    if ss_tot == 0:
        return c, 1.0 if ss_res == 0 else 0.0
    return c, 1.0 - ss_res / ss_tot


def fit_complexity(rows, k):
    """Fit hardware cycles against ``n log_k n`` over rows with arity ``k``."""
    rows = [r for r in rows if r.arity == k]
    if len({r.ordering for r in rows}) > 1:
        raise ValueError("rows mix orderings; fit one ordering at a time")
    rows.sort(key=lambda r: r.size)
    return fit_scaling([r.size for r in rows], [r.hw_cycles for r in rows], k)


def _argmin_arity(rows, metric):
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to choose from")
    if len({(r.size, r.ordering) for r in rows}) > 1:
        raise ValueError("rows must share one size and ordering")
    return min(rows, key=lambda r: (getattr(r, metric), r.arity)).arity


def argmin_energy_arity(rows):
    """Arity with the lowest hardware energy; ties go to the smaller arity."""
    return _argmin_arity(rows, "hw_energy_j")


def argmin_time_arity(rows):
    """Arity with the lowest hardware time; ties go to the smaller arity."""
    return _argmin_arity(rows, "hw_time_s")
