"""k-ary heapsort in software and on a modelled hardware heap, with energy accounting."""

from .energy import (
    AffineInArityPower,
    ConstantPower,
    EnergyEstimate,
    PerSizeTablePower,
    estimate_energy,
    fit_constant_power,
    improvement_ratios,
)
from .heap import HeapConfig, KHeap, child_indices, heapsort, parent_index
from .hwsim import (
    CycleCostModel,
    FsmPhase,
    HwConfig,
    SimResult,
    bank_of,
    calibrate,
    cycles_to_seconds,
    reduction_rounds,
    simulate,
    sift_down_level_cycles,
)
from .workload import Ordering, Workload, generate, paper_size_sweep

__version__ = "0.1.0"
