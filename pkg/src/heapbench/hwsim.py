"""Transaction-level, cycle-accurate model of the hardware heapsort unit.

The unit is a controlling state machine plus a heap module.  The state
machine loads every input element into the heap, then extracts the
maximum repeatedly and writes the results back.  The heap module keeps
sibling nodes in ``k`` memory banks so that all children of a node are read
in one access, and finds the largest child with a pairwise tournament of
``log2(k)`` rounds.

Costs are charged per heap-operation step from a :class:`CycleCostModel`.
Because the data path never depends on the costs, each run also records
event counts, and ``total_cycles`` is a linear function of those counts
(see :func:`cycles_from_counts`).  Calibration relies on that.
"""

import enum
from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np

from .errors import CapacityError, ConfigError

DEFAULT_CLOCK_HZ = 100_000_000
NEG_INF = float("-inf")


@dataclass(frozen=True)
class CycleCostModel:
    child_read_cycles: int = 1
    parent_compare_cycles: int = 1
    swap_cycles: int = 1
    sift_up_level_cycles: int = 1
    fsm_overhead_cycles_per_op: int = 1
    io_cycles_per_element: int = 1

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise ConfigError(f"{f.name} must be a non-negative integer, got {v!r}")
        if self.child_read_cycles < 1:
            raise ConfigError("child_read_cycles must be >= 1")
        if self.swap_cycles < 1:
            raise ConfigError("swap_cycles must be >= 1")
        if self.sift_up_level_cycles < 1:
            raise ConfigError("sift_up_level_cycles must be >= 1")

    def as_tuple(self):
        return tuple(getattr(self, f.name) for f in fields(self))


COST_FIELDS = tuple(f.name for f in fields(CycleCostModel))


def _is_power_of_two(k):
    return k >= 1 and k & (k - 1) == 0


@dataclass(frozen=True)
class HwConfig:
    arity: int = 2
    capacity: int = 16384
    clock_hz: float = DEFAULT_CLOCK_HZ
    cost_model: CycleCostModel = field(default_factory=CycleCostModel)

    def __post_init__(self):
        if not (2 <= self.arity <= 256 and _is_power_of_two(self.arity)):
            raise ConfigError(f"arity must be a power of two in [2, 256], got {self.arity}")
        if self.capacity < 0:
            raise ConfigError(f"capacity must be >= 0, got {self.capacity}")
        if not self.clock_hz > 0:
            raise ConfigError(f"clock_hz must be positive, got {self.clock_hz}")


class FsmPhase(enum.Enum):
    IDLE = "Idle"
    LOAD_INPUT = "LoadInput"
    INSERT_SIFT_UP = "InsertSiftUp"
    EXTRACT_ROOT = "ExtractRoot"
    SIFT_DOWN = "SiftDown"
    WRITE_BACK = "WriteBack"
    DONE = "Done"


# Idle -> LoadInput -> (InsertSiftUp)* -> (ExtractRoot -> SiftDown -> WriteBack)* -> Done
LEGAL_TRANSITIONS = {
    FsmPhase.IDLE: {FsmPhase.LOAD_INPUT},
    FsmPhase.LOAD_INPUT: {FsmPhase.INSERT_SIFT_UP, FsmPhase.EXTRACT_ROOT, FsmPhase.DONE},
    FsmPhase.INSERT_SIFT_UP: {FsmPhase.INSERT_SIFT_UP, FsmPhase.EXTRACT_ROOT, FsmPhase.DONE},
    FsmPhase.EXTRACT_ROOT: {FsmPhase.SIFT_DOWN},
    FsmPhase.SIFT_DOWN: {FsmPhase.WRITE_BACK},
    FsmPhase.WRITE_BACK: {FsmPhase.EXTRACT_ROOT, FsmPhase.DONE},
    FsmPhase.DONE: set(),
}


def is_legal_trace(trace):
    """Check a phase trace against the controller's transition table."""
    if not trace or trace[0] is not FsmPhase.IDLE or trace[-1] is not FsmPhase.DONE:
        return False
    return all(b in LEGAL_TRANSITIONS[a] for a, b in zip(trace, trace[1:]))


def bank_of(i, k):
    """Memory bank holding heap node ``i``.  Siblings land in distinct banks."""
    if i < 0:
        raise ValueError(f"node index must be >= 0, got {i}")
    return 0 if i == 0 else (i - 1) % k


def reduction_rounds(k):
    """Tournament rounds needed to pick the largest of ``k`` candidates."""
    if not (k >= 2 and _is_power_of_two(k)):
        raise ConfigError(f"reduction tree needs a power-of-two arity >= 2, got {k}")
    return k.bit_length() - 1


def sift_down_level_cycles(cfg, swap=True):
    c = cfg.cost_model
    cycles = c.child_read_cycles + reduction_rounds(cfg.arity) + c.parent_compare_cycles
    return cycles + c.swap_cycles if swap else cycles


def cycles_to_seconds(cycles, clock_hz):
    if not clock_hz > 0:
        raise ConfigError(f"clock frequency must be positive, got {clock_hz}")
    return cycles / clock_hz


class BankedHeapMemory:
    """Heap storage split over ``k`` banks.

    Node ``i >= 1`` lives in bank ``(i - 1) % k`` at row ``(i - 1) // k``, so
    the children of node ``p`` are exactly row ``p`` of every bank.  The
    root is kept in a separate register, reported as bank 0.
    """

    def __init__(self, k, capacity):
        self.k = k
        rows = max(1, -(-capacity // k))
        self.banks = [[None] * rows for _ in range(k)]
        self.root = None
        self.occupancy = 0

    def read(self, i):
        if i == 0:
            return self.root
        return self.banks[(i - 1) % self.k][(i - 1) // self.k]

    def write(self, i, v):
        if i == 0:
            self.root = v
        else:
            self.banks[(i - 1) % self.k][(i - 1) // self.k] = v

    def read_children(self, p):
        """One parallel access: the value of every child slot of ``p``.

        Slots at or beyond ``occupancy`` come back as -inf so the tournament
        always sees ``k`` candidates.
        """
        k = self.k
        first = k * p + 1
        count = min(k, self.occupancy - first)
        assert bank_of(first, k) == 0 and 0 < count <= k, "bank collision on child read"
        row = p
        values = [self.banks[b][row] for b in range(count)]
        if count < k:
            values.extend([NEG_INF] * (k - count))
        return values


def tournament(values):
    """Pairwise max reduction; returns (winner_slot, winner_value, rounds).

    The left candidate wins ties, which makes the winner the first maximal
    slot in child order.
    """
    cand = list(enumerate(values))
    rounds = 0
    while len(cand) > 1:
        nxt = []
        for j in range(0, len(cand), 2):
            a, b = cand[j], cand[j + 1]
            nxt.append(a if a[1] >= b[1] else b)
        cand = nxt
        rounds += 1
    slot, value = cand[0]
    return slot, value, rounds


@dataclass(frozen=True)
class SimResult:
    sorted_output: list
    total_cycles: int
    wall_time_s: float
    phase_cycles: dict
    config_echo: HwConfig
    event_counts: dict
    trace: tuple = ()


# Event counters recorded by simulate().  Each cost field multiplies one
# linear combination of them, see cycles_from_counts().
EVENTS = (
    "elements",             # n
    "sift_down_levels",     # child reads during sift-down
    "sift_down_swaps",
    "sift_up_compares",
    "sift_up_swaps",        # levels climbed during sift-up
    "root_moves",           # last leaf moved into the root on extract
)


def count_matrix(counts, arity):
    """Per-field multipliers and the fixed tournament term for one run."""
    n = counts["elements"]
    down = counts["sift_down_levels"]
    climbed = counts["sift_up_swaps"]
    per_field = {
        "child_read_cycles": down,
        "parent_compare_cycles": down + counts["sift_up_compares"],
        "swap_cycles": counts["sift_down_swaps"] + climbed + counts["root_moves"],
        "sift_up_level_cycles": climbed,
        "fsm_overhead_cycles_per_op": 2 * n + 2,
        "io_cycles_per_element": 2 * n,
    }
    fixed = down * reduction_rounds(arity)
    return [per_field[name] for name in COST_FIELDS], fixed


def cycles_from_counts(counts, arity, cost_model):
    mult, fixed = count_matrix(counts, arity)
    return fixed + sum(m * c for m, c in zip(mult, cost_model.as_tuple()))


class HeapSortUnit:
    """Stateful simulator for one run: controller, banked memory, cycle counters."""

    def __init__(self, cfg, record_trace=False):
        self.cfg = cfg
        self.k = cfg.arity
        self.rounds = reduction_rounds(cfg.arity)
        self.mem = BankedHeapMemory(cfg.arity, cfg.capacity)
        self.phase = FsmPhase.IDLE
        self.phase_cycles = {p: 0 for p in FsmPhase}
        self.events = dict.fromkeys(EVENTS, 0)
        self.record_trace = record_trace
        self.trace = [FsmPhase.IDLE] if record_trace else None

    def _enter(self, phase):
        if phase not in LEGAL_TRANSITIONS[self.phase]:
            raise AssertionError(f"illegal FSM transition {self.phase.value} -> {phase.value}")
        self.phase = phase
        if self.record_trace:
            self.trace.append(phase)

    def _charge(self, cycles):
        self.phase_cycles[self.phase] += cycles

    def insert(self, v):
        c = self.cfg.cost_model
        mem = self.mem
        k = self.k
        self._enter(FsmPhase.INSERT_SIFT_UP)
        self._charge(c.fsm_overhead_cycles_per_op)
        i = mem.occupancy
        mem.occupancy += 1
        mem.write(i, v)
        compares = swaps = 0
        while i > 0:
            p = (i - 1) // k
            pv = mem.read(p)
            compares += 1
            if pv >= v:
                break
            mem.write(i, pv)
            mem.write(p, v)
            swaps += 1
            i = p
        # each climbed level pays the level step plus the swap write-back
        self._charge(compares * c.parent_compare_cycles
                     + swaps * (c.sift_up_level_cycles + c.swap_cycles))
        self.events["sift_up_compares"] += compares
        self.events["sift_up_swaps"] += swaps

    def extract(self):
        c = self.cfg.cost_model
        mem = self.mem
        k = self.k

        self._enter(FsmPhase.EXTRACT_ROOT)
        top = mem.read(0)
        mem.occupancy -= 1
        n = mem.occupancy
        cost = c.fsm_overhead_cycles_per_op
        if n > 0:
            mem.write(0, mem.read(n))
            cost += c.swap_cycles
            self.events["root_moves"] += 1
        self._charge(cost)

        self._enter(FsmPhase.SIFT_DOWN)
        level_cost = c.child_read_cycles + self.rounds + c.parent_compare_cycles
        i = 0
        levels = swaps = 0
        if n > 0:
            v = mem.read(0)
            while k * i + 1 < n:
                slot, best, rounds = tournament(mem.read_children(i))
                assert rounds == self.rounds
                levels += 1
                if best <= v:
                    break
                child = k * i + 1 + slot
                mem.write(i, best)
                mem.write(child, v)
                swaps += 1
                i = child
        self._charge(levels * level_cost + swaps * c.swap_cycles)
        self.events["sift_down_levels"] += levels
        self.events["sift_down_swaps"] += swaps

        self._enter(FsmPhase.WRITE_BACK)
        self._charge(c.io_cycles_per_element)
        return top

    def run(self, values):
        c = self.cfg.cost_model
        n = len(values)
        self.events["elements"] = n
        self._enter(FsmPhase.LOAD_INPUT)
        self._charge(c.fsm_overhead_cycles_per_op + n * c.io_cycles_per_element)
        for v in values:
            self.insert(v)
        out = [0] * n
        for pos in range(n - 1, -1, -1):
            out[pos] = self.extract()
        self._enter(FsmPhase.DONE)
        self._charge(c.fsm_overhead_cycles_per_op)
        return out


def simulate(values, cfg, record_trace=False):
    """Sort ``values`` on the modelled unit and account every cycle."""
    values = list(values)
    if len(values) > cfg.capacity:
        raise CapacityError(f"{len(values)} elements exceed heap capacity {cfg.capacity}")
    unit = HeapSortUnit(cfg, record_trace=record_trace)
    out = unit.run(values)
    phase_cycles = {p: unit.phase_cycles[p] for p in FsmPhase}
    total = sum(phase_cycles.values())
    return SimResult(
        sorted_output=out,
        total_cycles=total,
        wall_time_s=cycles_to_seconds(total, cfg.clock_hz),
        phase_cycles=phase_cycles,
        config_echo=cfg,
        event_counts=dict(unit.events),
        trace=tuple(unit.trace) if record_trace else (),
    )


def _calibration_counts(reference, base_cfg, workload_seed):
    # imported here to keep hwsim free of a module-level dependency on workload
    from .workload import Ordering, Workload, generate

    rows = []
    for size, _ in reference:
        w = Workload(int(size), Ordering.RANDOM, seed=workload_seed)
        cfg = replace(base_cfg, capacity=max(base_cfg.capacity, int(size)))
        rows.append(simulate(generate(w), cfg).event_counts)
    return rows


def calibrate(reference, base_cfg, workload_seed=0, max_value=8, return_error=False):
    """Fit integer cost parameters to reference (size, seconds) pairs.

    Every cost field is searched over ``0 .. max_value`` (fields that must be
    positive start at 1).  The objective is the sum of squared relative
    errors of simulated wall time.  Among equally good models the one
    closest to ``base_cfg.cost_model`` in L1 distance wins, then the
    lexicographically smallest.

    Returns the fitted :class:`CycleCostModel`, or ``(model, max_rel_error)``
    when ``return_error`` is set.
    """
    reference = [(int(s), float(t)) for s, t in reference]
    if not reference:
        raise ValueError("calibration needs at least one reference point")
    if any(t <= 0 for _, t in reference):
        raise ValueError("reference times must be positive")

    counts = _calibration_counts(reference, base_cfg, workload_seed)
    mults, fixed = zip(*(count_matrix(c, base_cfg.arity) for c in counts))
    mults = np.array(mults, dtype=np.int64)            # (points, fields)
    fixed = np.array(fixed, dtype=np.int64)            # (points,)
    ref_t = np.array([t for _, t in reference])

    lows = {"child_read_cycles": 1, "swap_cycles": 1, "sift_up_level_cycles": 1}
    axes = [np.arange(lows.get(name, 0), max_value + 1) for name in COST_FIELDS]
    # ij indexing enumerates models in lexicographic order
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))

    cycles = grid @ mults.T + fixed                    # (models, points)
    rel = (cycles / base_cfg.clock_hz - ref_t) / ref_t
    loss = np.einsum("ij,ij->i", rel, rel)

    best = loss.min()
    tied = np.flatnonzero(loss == best)
    base = np.array(base_cfg.cost_model.as_tuple())
    dist = np.abs(grid[tied] - base).sum(axis=1)
    tied = tied[dist == dist.min()]
    winner = grid[tied[0]]
    model = CycleCostModel(**{name: int(v) for name, v in zip(COST_FIELDS, winner)})
    if return_error:
        return model, float(np.abs(rel[tied[0]]).max())
    return model


def cost_model_dict(model):
    return asdict(model)
