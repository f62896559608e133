from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heapbench.workload import (
    INT32_RANGE,
    Ordering,
    Workload,
    generate,
    paper_size_sweep,
    pcg64_raw,
)

GOLDEN = Path(__file__).parent / "data" / "pcg64_seed42.txt"


def read_golden():
    rows = [line.split() for line in GOLDEN.read_text().splitlines()
            if line and not line.startswith("#")]
    return [int(r) for r, _ in rows], [int(v) for _, v in rows]


def test_sorted_and_reversed_examples():
    assert generate(Workload(4, Ordering.SORTED)) == [0, 1, 2, 3]
    assert generate(Workload(4, Ordering.REVERSED)) == [3, 2, 1, 0]
    assert generate(Workload(0, Ordering.SORTED)) == []


def test_random_is_deterministic():
    w = Workload(1000, Ordering.RANDOM, seed=42)
    assert generate(w) == generate(w)
    assert generate(w) != generate(Workload(1000, Ordering.RANDOM, seed=43))


def test_golden_first_eight_outputs():
    raw, values = read_golden()
    assert [int(x) for x in pcg64_raw(42, 8)] == raw
    assert generate(Workload(8, Ordering.RANDOM, seed=42)) == values
    assert values == [(r >> 32) - 2**31 for r in raw]


def test_random_respects_value_range():
    xs = generate(Workload(5000, Ordering.RANDOM, seed=1, value_range=(-3, 3)))
    assert set(xs) == set(range(-3, 4))
    xs = generate(Workload(5000, Ordering.RANDOM, seed=1))
    assert all(INT32_RANGE[0] <= x <= INT32_RANGE[1] for x in xs)


def test_random_prefix_is_stable_across_sizes():
    assert generate(Workload(10, seed=9)) == generate(Workload(20, seed=9))[:10]


def test_workload_validation():
    with pytest.raises(ValueError):
        Workload(-1)
    with pytest.raises(ValueError):
        Workload(5, value_range=(3, 2))
    with pytest.raises(ValueError):
        Workload(5, Ordering.SORTED, value_range=(0, 3))
    with pytest.raises(ValueError):
        Workload(5, seed=-1)


def test_ordering_parse():
    assert Ordering.parse("Reversed") is Ordering.REVERSED
    with pytest.raises(ValueError):
        Ordering.parse("shuffled")


def test_paper_size_sweep():
    sizes = paper_size_sweep()
    assert len(sizes) == 7
    assert sizes[0] == 4096 and sizes[-1] == 16384
    assert all(b - a == 2048 for a, b in zip(sizes, sizes[1:]))


@given(n=st.integers(0, 3000))
def test_sorted_and_reversed_mirror_each_other(n):
    s = generate(Workload(n, Ordering.SORTED))
    r = generate(Workload(n, Ordering.REVERSED))
    assert s == r[::-1]
    assert s == list(range(n))
