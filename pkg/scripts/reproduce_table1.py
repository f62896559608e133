#!/usr/bin/env python3
"""Binary-heap software vs. hardware comparison over the published sizes.

Calibrates the cycle model to the published FPGA times, runs the sweep
(software timing on this host, hardware via the simulator), and prints the
result next to the published numbers.
"""

import argparse
from pathlib import Path

from heapbench.bench import ExperimentSpec, run
from heapbench.config import load_power_model
from heapbench.hwsim import HwConfig, calibrate
from heapbench.reference import fpga_time_reference, load_table1
from heapbench.report import markdown_table
from heapbench.workload import Ordering, paper_size_sweep

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--cooldown-ms", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=ROOT / "results" / "table1")
    args = ap.parse_args()

    base = HwConfig(arity=2, capacity=16384)
    model, err = calibrate(fpga_time_reference(), base, args.seed, return_error=True)
    print(f"calibrated {model}\nmax relative error vs published FPGA times: {err:.3%}\n")

    spec = ExperimentSpec(
        sizes=paper_size_sweep(), orderings=[Ordering.RANDOM], arities=[2],
        repetitions=args.reps, cooldown_ms=args.cooldown_ms, seed=args.seed,
        sw_power_model=load_power_model(ROOT / "configs" / "rpi_constant.power"),
        hw_power_model=load_power_model(ROOT / "configs" / "fpga_table1.power"),
        hw_config=HwConfig(arity=2, capacity=16384, cost_model=model),
        output_dir=args.out, formats=("csv", "markdown", "plotdata"),
    )
    rows = run(spec)
    print("this run (software column timed on this host):")
    print(markdown_table(rows))

    print("published:")
    print("| Size | SW time (ms) | HW time (ms) | SW energy (mJ) | HW energy (mJ) |")
    print("|---:|---:|---:|---:|---:|")
    for r in load_table1():
        print(f"| {r['size']} | {r['rpi_time_ms']} | {r['fpga_time_ms']} "
              f"| {r['rpi_energy_mj']} | {r['fpga_energy_mj']} |")
    print(f"\nwritten to {args.out}")


if __name__ == "__main__":
    main()
