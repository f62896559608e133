"""k-ary max-heap and insertion-based heapsort.

The heap lives in a flat list with the root at index 0; node ``i`` has
children ``k*i + 1 .. k*i + k``.  Sorting inserts every element (n sift-ups)
and then extracts the maximum repeatedly, filling the output from the back,
so the result is ascending.
"""

from dataclasses import dataclass

from .errors import CapacityError, EmptyHeapError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class HeapConfig:
    arity: int = 2
    capacity: int = 0

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError(f"arity must be >= 2, got {self.arity}")
        if self.capacity < 0:
            raise ValueError(f"capacity must be >= 0, got {self.capacity}")


def parent_index(i, k):
    if i < 1:
        raise ValueError("the root (index 0) has no parent")
    return (i - 1) // k


def child_indices(i, k):
    """Indices of all k child slots of node ``i``; callers clip to the heap size."""
    if i < 0:
        raise ValueError(f"node index must be >= 0, got {i}")
    first = k * i + 1
    return list(range(first, first + k))


class KHeap:
    """Bounded k-ary max-heap of 64-bit signed integers.

    ``comparisons`` counts element comparisons made by sift-up and sift-down;
    it is what the complexity checks fit against ``n log_k n``.
    """

    def __init__(self, config):
        self.config = config
        self._data = []
        self.comparisons = 0

    @classmethod
    def from_elements(cls, elements, arity=2, capacity=None):
        """Build a heap by inserting ``elements`` one by one."""
        elements = list(elements)
        cap = len(elements) if capacity is None else capacity
        heap = cls(HeapConfig(arity, cap))
        for v in elements:
            heap.insert(v)
        return heap

    @property
    def size(self):
        return len(self._data)

    @property
    def elements(self):
        return list(self._data)

    def __len__(self):
        return len(self._data)

    def __repr__(self):
        return f"KHeap(k={self.config.arity}, elements={self._data!r})"

    def insert(self, v):
        if len(self._data) >= self.config.capacity:
            raise CapacityError(f"heap is full (capacity {self.config.capacity})")
        if not INT64_MIN <= v <= INT64_MAX:
            raise ValueError(f"{v} does not fit in a 64-bit signed integer")
        data = self._data
        k = self.config.arity
        i = len(data)
        data.append(v)
        while i > 0:
            p = (i - 1) // k
            self.comparisons += 1
            if data[p] >= v:
                break
            data[i] = data[p]
            i = p
        data[i] = v

    def extract_max(self):
        data = self._data
        if not data:
            raise EmptyHeapError("extract_max from an empty heap")
        top = data[0]
        last = data.pop()
        if data:
            self._sift_down(last)
        return top

    def _sift_down(self, v):
        data = self._data
        k = self.config.arity
        n = len(data)
        i = 0
        while True:
            first = k * i + 1
            if first >= n:
                break
            stop = min(first + k, n)
            # first maximal child wins ties
            best = first
            best_v = data[first]
            for c in range(first + 1, stop):
                if data[c] > best_v:
                    best = c
                    best_v = data[c]
            self.comparisons += stop - first
            if best_v <= v:
                break
            data[i] = best_v
            i = best
        data[i] = v

    def is_valid(self):
        """Full scan of the max-heap property."""
        data = self._data
        k = self.config.arity
        return all(data[(i - 1) // k] >= data[i] for i in range(1, len(data)))


def _sort_with_heap(values, k):
    heap = KHeap(HeapConfig(k, len(values)))
    for v in values:
        heap.insert(v)
    out = [0] * len(values)
    for pos in range(len(values) - 1, -1, -1):
        out[pos] = heap.extract_max()
    return out, heap.comparisons


def heapsort(values, k=2):
    """Return ``values`` in ascending order using a k-ary max-heap."""
    return _sort_with_heap(list(values), k)[0]


def heapsort_comparisons(values, k=2):
    """Number of element comparisons heapsort makes on ``values``."""
    return _sort_with_heap(list(values), k)[1]
