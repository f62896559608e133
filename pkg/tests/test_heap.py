import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heapbench.bench import fit_scaling
from heapbench.errors import CapacityError, EmptyHeapError
from heapbench.heap import (
    HeapConfig,
    KHeap,
    child_indices,
    heapsort,
    heapsort_comparisons,
    parent_index,
)

from conftest import ARITIES


def tree_by_enumeration(k, nodes):
    """Parent of each node, found by handing out k children per node in BFS order."""
    parent = {}
    nxt = 1
    for p in range(nodes):
        for _ in range(k):
            if nxt >= nodes:
                return parent
            parent[nxt] = p
            nxt += 1
    return parent


@pytest.mark.parametrize("i, k, expected", [(1, 2, 0), (7, 4, 1)])
def test_parent_index_examples(i, k, expected):
    assert parent_index(i, k) == expected


def test_parent_index_matches_enumerated_ternary_tree():
    parent = tree_by_enumeration(3, 13)
    assert parent[12] == 3
    assert parent_index(12, 3) == 3
    for i in range(1, 13):
        assert parent_index(i, 3) == parent[i]


def test_parent_of_root_is_an_error():
    with pytest.raises(ValueError):
        parent_index(0, 2)


def test_child_indices_examples():
    assert child_indices(0, 2) == [1, 2]
    assert child_indices(2, 4) == [9, 10, 11, 12]
    parent = tree_by_enumeration(2, 20)
    assert [c for c, p in parent.items() if p == 3] == [7, 8]
    assert child_indices(3, 2) == [7, 8]


@pytest.mark.parametrize("k", ARITIES)
def test_children_and_parent_are_inverse(k):
    for i in range(50):
        assert all(parent_index(c, k) == i for c in child_indices(i, k))


def test_heap_config_invariants():
    with pytest.raises(ValueError):
        HeapConfig(arity=1, capacity=4)
    with pytest.raises(ValueError):
        HeapConfig(arity=2, capacity=-1)


def test_insert_examples():
    h = KHeap(HeapConfig(2, 4))
    h.insert(5)
    assert h.elements == [5]

    h = KHeap.from_elements([9, 4], arity=2, capacity=3)
    h.insert(7)
    assert h.elements == [9, 4, 7]

    h = KHeap.from_elements([9, 4], arity=2, capacity=3)
    h.insert(12)
    assert h.elements == [12, 4, 9]


def test_insert_over_capacity():
    h = KHeap(HeapConfig(2, 1))
    h.insert(1)
    with pytest.raises(CapacityError):
        h.insert(2)


def test_insert_rejects_values_outside_int64():
    h = KHeap(HeapConfig(2, 2))
    with pytest.raises(ValueError):
        h.insert(2**63)


def test_extract_max_examples():
    h = KHeap.from_elements([5])
    assert h.extract_max() == 5
    assert h.size == 0

    h = KHeap.from_elements([12, 4, 9], arity=2)
    assert h.elements == [12, 4, 9]
    assert h.extract_max() == 12
    assert h.elements == [9, 4]


def test_extract_from_empty():
    with pytest.raises(EmptyHeapError):
        KHeap(HeapConfig(2, 0)).extract_max()


def test_ties_take_first_maximal_child():
    # root 1 with children 7, 7, 3: the first 7 moves up
    h = KHeap(HeapConfig(3, 5))
    h._data = [9, 7, 7, 3, 1]
    assert h.extract_max() == 9
    assert h.elements == [7, 1, 7, 3]


def test_heapsort_examples():
    assert heapsort([], 2) == []
    assert heapsort([5, 1, 4, 2], 2) == [1, 2, 4, 5]
    r = random.Random(7)
    xs = [r.randint(-(2**31), 2**31 - 1) for _ in range(256)]
    assert heapsort(xs, 8) == sorted(xs)


@given(
    ops=st.lists(st.one_of(st.integers(-(2**63), 2**63 - 1), st.none()), max_size=200),
    k=st.sampled_from(ARITIES),
)
def test_heap_property_after_any_operation_sequence(ops, k):
    h = KHeap(HeapConfig(k, len(ops)))
    model = []
    for op in ops:
        if op is None:
            if model:
                assert h.extract_max() == max(model)
                model.remove(max(model))
        else:
            h.insert(op)
            model.append(op)
        assert h.is_valid()
        assert sorted(h.elements) == sorted(model)


@given(xs=st.lists(st.integers(-(2**31), 2**31 - 1), max_size=512))
def test_repeated_extraction_is_non_increasing(xs):
    h = KHeap.from_elements(xs, arity=4)
    out = [h.extract_max() for _ in range(len(xs))]
    assert all(a >= b for a, b in zip(out, out[1:]))


@given(
    xs=st.lists(st.integers(-(2**63), 2**63 - 1), max_size=512),
    k=st.sampled_from(ARITIES),
)
def test_heapsort_is_sorted_permutation(xs, k):
    assert heapsort(xs, k) == sorted(xs)


@given(xs=st.lists(st.integers(-50, 50), max_size=300))
def test_heapsort_output_is_arity_independent(xs):
    outs = {tuple(heapsort(xs, k)) for k in ARITIES}
    assert len(outs) == 1


def test_heapsort_does_not_mutate_input():
    xs = [3, 1, 2]
    heapsort(xs, 2)
    assert xs == [3, 1, 2]


@pytest.mark.parametrize("k", [2, 4, 16, 128])
def test_comparison_count_scales_as_n_log_k_n(k):
    r = random.Random(99)
    sizes = [2**e for e in range(10, 15)]
    counts = [heapsort_comparisons([r.getrandbits(32) for _ in range(n)], k) for n in sizes]
    _, r2 = fit_scaling(sizes, counts, k)
    assert r2 >= 0.99
