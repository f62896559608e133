import math

import pytest

from heapbench.bench import (
    ExperimentSpec,
    ResultRow,
    argmin_energy_arity,
    argmin_time_arity,
    fit_complexity,
    fit_scaling,
    measure_software,
    run,
    run_with_errors,
)
from heapbench.energy import ConstantPower, PerSizeTablePower
from heapbench.errors import TimerError
from heapbench.hwsim import HwConfig
from heapbench.workload import Ordering


def row(size=1024, arity=2, ordering="random", cycles=1000, energy=1.0, time=None):
    t = cycles / 1e8 if time is None else time
    return ResultRow(size, ordering, arity, 1e-3, 0.0, cycles, t, 1e-3, energy, 1.0, 1.0)


class FakeClock:
    def __init__(self, step):
        self.step = step
        self.now = 0.0

    def __call__(self):
        self.now += self.step
        return self.now


def test_measure_software_single_rep_has_zero_stddev():
    mean, std = measure_software([3, 1, 2], 2, repetitions=1)
    assert std == 0.0
    assert mean >= 0.0


def test_measure_software_constant_clock():
    sleeps = []
    mean, std = measure_software([5, 4, 3], 4, repetitions=5, cooldown_ms=20,
                                 clock=FakeClock(0.25), sleep=sleeps.append)
    assert mean == 0.25
    assert std == 0.0
    assert sleeps == [0.02] * 4


def test_measure_software_timer_failures():
    def broken():
        raise OSError("no clock")

    with pytest.raises(TimerError):
        measure_software([1], 2, repetitions=1, clock=broken)

    ticks = iter([5.0, 1.0])
    with pytest.raises(TimerError):
        measure_software([1], 2, repetitions=1, clock=lambda: next(ticks))

    with pytest.raises(ValueError):
        measure_software([1], 2, repetitions=0)


def test_fit_scaling_exact_curve():
    sizes = [1024, 2048, 4096, 8192]
    ys = [3.5 * n * math.log(n, 4) for n in sizes]
    c, r2 = fit_scaling(sizes, ys, 4)
    assert c == pytest.approx(3.5, rel=1e-12)
    assert r2 == pytest.approx(1.0, abs=1e-12)


def test_fit_complexity_from_rows():
    rows = [row(size=n, arity=8, cycles=round(2 * n * math.log(n, 8)))
            for n in (4096, 8192, 12288, 16384)]
    c, r2 = fit_complexity(rows + [row(size=4096, arity=2)], 8)
    assert c == pytest.approx(2.0, rel=1e-4)
    assert r2 > 0.9999


def test_fit_complexity_constant_rows_score_zero():
    rows = [row(size=n, cycles=5000) for n in (4096, 8192, 16384)]
    _, r2 = fit_complexity(rows, 2)
    assert r2 == pytest.approx(0.0, abs=1e-9)


def test_fit_needs_three_points():
    with pytest.raises(ValueError):
        fit_complexity([row(size=4096), row(size=8192)], 2)


def test_argmin_energy_examples():
    assert argmin_energy_arity([row(arity=2, energy=1e-3), row(arity=4, energy=2e-3)]) == 2
    ks = [2, 4, 8, 16, 32, 64, 128]
    # U-shaped curve built by hand, minimum at 16
    u = {2: 9.0, 4: 6.0, 8: 4.0, 16: 3.0, 32: 3.5, 64: 5.0, 128: 8.0}
    assert argmin_energy_arity([row(arity=k, energy=u[k]) for k in ks]) == 16
    assert argmin_energy_arity([row(arity=k, energy=100.0 / k) for k in ks]) == 128
    with pytest.raises(ValueError):
        argmin_energy_arity([])


def test_argmin_time_examples():
    assert argmin_time_arity([row(arity=32)]) == 32
    tied = [row(arity=8, cycles=100), row(arity=4, cycles=100), row(arity=16, cycles=200)]
    assert argmin_time_arity(tied) == 4
    with pytest.raises(ValueError):
        argmin_time_arity([row(size=1), row(size=2)])


def small_spec(tmp_path, **kw):
    base = dict(sizes=[64], orderings=[Ordering.RANDOM], arities=[2], repetitions=1,
                cooldown_ms=0, output_dir=tmp_path, hw_config=HwConfig(capacity=512))
    base.update(kw)
    return ExperimentSpec(**base)


def test_run_single_point(tmp_path):
    rows = run(small_spec(tmp_path))
    assert len(rows) == 1
    r = rows[0]
    assert r.hw_time_s == r.hw_cycles / 1e8
    assert r.time_ratio == r.sw_time_s / r.hw_time_s
    assert r.energy_ratio == r.sw_energy_j / r.hw_energy_j
    assert (tmp_path / "results.csv").read_text().count("\n") == 2
    assert (tmp_path / "results.md").exists()


def test_run_rows_are_canonically_ordered(tmp_path):
    rows = run(small_spec(tmp_path, sizes=[128, 64], arities=[8, 2],
                          orderings=[Ordering.SORTED, Ordering.RANDOM]))
    keys = [(r.size, r.ordering, r.arity) for r in rows]
    assert keys == sorted(keys)
    assert len(rows) == 8


def test_run_parallel_matches_serial(tmp_path):
    kw = dict(sizes=[64, 200], arities=[2, 16], orderings=[Ordering.RANDOM, Ordering.REVERSED])
    serial = run(small_spec(tmp_path / "a", **kw))
    parallel = run(small_spec(tmp_path / "b", jobs=2, **kw))
    assert [r.hw_cycles for r in serial] == [r.hw_cycles for r in parallel]


def test_run_reports_capacity_errors_per_row(tmp_path):
    spec = small_spec(tmp_path, sizes=[64, 1000])
    rows, errors = run_with_errors(spec)
    assert [r.size for r in rows] == [64]
    assert len(errors) == 1 and errors[0].size == 1000
    assert "capacity" in (tmp_path / "errors.csv").read_text()


def test_run_reports_power_table_range_errors(tmp_path):
    spec = small_spec(tmp_path, sizes=[64, 96],
                      hw_power_model=PerSizeTablePower({64: 0.1, 80: 0.1}))
    rows, errors = run_with_errors(spec)
    assert [r.size for r in rows] == [64]
    assert [e.size for e in errors] == [96]


def test_spec_validation(tmp_path):
    with pytest.raises(ValueError):
        small_spec(tmp_path, sizes=[])
    with pytest.raises(ValueError):
        small_spec(tmp_path, repetitions=0)
    with pytest.raises(ValueError):
        small_spec(tmp_path, arities=[3])
    assert small_spec(tmp_path, orderings=["sorted"]).orderings == [Ordering.SORTED]


def test_default_sw_power_matches_published_fit():
    from heapbench.bench import DEFAULT_SW_POWER_W
    from heapbench.energy import fit_constant_power
    from heapbench.reference import rpi_time_energy_pairs

    assert DEFAULT_SW_POWER_W == pytest.approx(fit_constant_power(rpi_time_energy_pairs()),
                                               abs=1e-4)
    assert isinstance(ExperimentSpec(sizes=[1]).sw_power_model, ConstantPower)
