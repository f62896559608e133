#!/usr/bin/env python3
"""Hardware time and energy against heap arity at a fixed input size."""

import argparse
from pathlib import Path

from heapbench.bench import ResultRow, argmin_energy_arity, argmin_time_arity
from heapbench.config import load_power_model
from heapbench.energy import estimate_energy
from heapbench.hwsim import HwConfig, simulate
from heapbench.report import emit_report
from heapbench.workload import Ordering, Workload, generate

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=16384)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--power-model", type=Path, default=ROOT / "configs" / "demo_affine.power")
    ap.add_argument("--out", type=Path, default=ROOT / "results" / "k_sweep")
    args = ap.parse_args()

    power = load_power_model(args.power_model)
    nan = float("nan")
    all_rows = []
    for ordering in Ordering:
        xs = generate(Workload(args.size, ordering, seed=args.seed))
        rows = []
        print(f"\n{ordering.value}, n = {args.size}")
        print(f"{'k':>5} {'cycles':>10} {'time (ms)':>10} {'power (W)':>10} {'energy (mJ)':>12}")
        for k in (2, 4, 8, 16, 32, 64, 128):
            res = simulate(xs, HwConfig(arity=k, capacity=args.size))
            est = estimate_energy(power, res.wall_time_s, size=args.size, arity=k)
            print(f"{k:>5} {res.total_cycles:>10} {res.wall_time_s * 1e3:>10.3f} "
                  f"{est.power_w:>10.4f} {est.energy_j * 1e3:>12.4f}")
            rows.append(ResultRow(args.size, ordering.value, k, nan, nan, res.total_cycles,
                                  res.wall_time_s, nan, est.energy_j, nan, nan))
        print(f"fastest k = {argmin_time_arity(rows)}, "
              f"most energy-efficient k = {argmin_energy_arity(rows)}")
        all_rows.extend(rows)

    for path in emit_report(all_rows, "plotdata", args.out):
        print(path)


if __name__ == "__main__":
    main()
