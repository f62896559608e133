"""Command-line entry point: sort, simulate, sweep, calibrate, report.

Exit codes: 0 success, 1 usage error, 2 runtime or validation failure.
"""

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import config as cfgfile
from .bench import ExperimentSpec, run_with_errors
from .errors import CapacityError, ConfigError, RangeError, TimerError
from .heap import heapsort
from .hwsim import DEFAULT_CLOCK_HZ, FsmPhase, HwConfig, calibrate, simulate
from .report import FORMATS, emit_report, read_csv
from .workload import Ordering, Workload, generate

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        return [int(v) for v in cfgfile.split_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _order_list(text):
    try:
        return [Ordering.parse(v) for v in cfgfile.split_list(text)]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _add_workload_flags(p, multi=False):
    if multi:
        p.add_argument("--size", type=_int_list, help="comma-separated input sizes")
        p.add_argument("--order", type=_order_list, help="comma-separated: random,sorted,reversed")
        p.add_argument("--arity", type=_int_list, help="comma-separated heap arities")
    else:
        p.add_argument("--size", type=int, default=16)
        p.add_argument("--order", type=Ordering.parse, default=Ordering.RANDOM,
                       help="random, sorted or reversed")
        p.add_argument("--arity", type=int, default=2)
    p.add_argument("--seed", type=int, help="PCG64 seed for random inputs (default 0)")


def build_parser():
    parser = _Parser(prog="heapbench", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sort", help="heapsort one generated or given list")
    _add_workload_flags(p)
    p.add_argument("--values", help="comma-separated integers to sort instead of a workload")

    p = sub.add_parser("simulate", help="run the hardware model once")
    _add_workload_flags(p)
    p.add_argument("--clock-mhz", type=float)
    p.add_argument("--config", type=Path, help="key-value file with cost.* fields")

    p = sub.add_parser("sweep", help="run a full size x ordering x arity experiment")
    _add_workload_flags(p, multi=True)
    p.add_argument("--config", type=Path, help="experiment config file")
    p.add_argument("--reps", type=int)
    p.add_argument("--cooldown-ms", type=int)
    p.add_argument("--clock-mhz", type=float)
    p.add_argument("--power-model", type=Path, help="hardware-side power model file")
    p.add_argument("--sw-power-model", type=Path, help="software-side power model file")
    p.add_argument("--out", type=Path)
    p.add_argument("--format", action="append", choices=FORMATS,
                   help="output format; repeat for several (default csv and markdown)")
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("calibrate", help="fit the cycle cost model to reference times")
    p.add_argument("reference", type=Path,
                   help="CSV with a size column and one of time_s, hw_time_s, fpga_time_ms")
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--clock-mhz", type=float)
    p.add_argument("--config", type=Path, help="base cost model (cost.* keys)")
    p.add_argument("--out", type=Path, help="write the fitted model as a key-value file")

    p = sub.add_parser("report", help="re-render a results CSV")
    p.add_argument("csv", type=Path)
    p.add_argument("--format", choices=FORMATS, default="markdown")
    p.add_argument("--out", type=Path, help="output file or directory (markdown: stdout if omitted)")
    return parser


def _workload(args):
    seed = 0 if args.seed is None else args.seed
    return Workload(args.size, args.order, seed=seed)


def _clock_hz(mhz, default=DEFAULT_CLOCK_HZ):
    return default if mhz is None else mhz * 1e6


def cmd_sort(args):
    if args.values is not None:
        try:
            values = [int(v) for v in cfgfile.split_list(args.values)]
        except ValueError:
            raise UsageError(f"--values must be comma-separated integers, got {args.values!r}")
    else:
        values = generate(_workload(args))
    print(" ".join(map(str, heapsort(values, args.arity))))


def cmd_simulate(args):
    entries = cfgfile.load_kv(args.config) if args.config else {}
    values = generate(_workload(args))
    hw = HwConfig(arity=args.arity, capacity=len(values),
                  clock_hz=_clock_hz(args.clock_mhz),
                  cost_model=cfgfile.cost_model_from_kv(entries))
    res = simulate(values, hw)
    if res.sorted_output != sorted(values):
        raise AssertionError("simulator output is not sorted")
    print(f"size          {len(values)}")
    print(f"arity         {hw.arity}")
    print(f"clock_hz      {hw.clock_hz:g}")
    print(f"total_cycles  {res.total_cycles}")
    print(f"wall_time_s   {res.wall_time_s!r}")
    for phase in FsmPhase:
        print(f"  {phase.value:<14}{res.phase_cycles[phase]}")
    for name, n in res.event_counts.items():
        print(f"  {name:<18}{n}")


def spec_from_args(args):
    """Experiment spec from an optional config file, overridden by CLI flags."""
    base_dir = Path(".")
    entries = {}
    if args.config:
        entries = cfgfile.load_kv(args.config)
        base_dir = args.config.parent

    def rel(p):
        p = Path(p)
        return p if p.is_absolute() else base_dir / p

    kw = {}
    try:
        if "sizes" in entries:
            kw["sizes"] = [int(v) for v in cfgfile.split_list(entries["sizes"])]
        if "orderings" in entries:
            kw["orderings"] = [Ordering.parse(v) for v in cfgfile.split_list(entries["orderings"])]
        if "arities" in entries:
            kw["arities"] = [int(v) for v in cfgfile.split_list(entries["arities"])]
        for key in ("repetitions", "cooldown_ms", "seed", "jobs"):
            if key in entries:
                kw[key] = int(entries[key])
        if "output_dir" in entries:
            kw["output_dir"] = rel(entries["output_dir"])
        if "formats" in entries:
            kw["formats"] = tuple(cfgfile.split_list(entries["formats"]))
        clock_hz = float(entries["clock_mhz"]) * 1e6 if "clock_mhz" in entries else DEFAULT_CLOCK_HZ
    except ValueError as e:
        raise ConfigError(f"{args.config}: {e}") from None
    if "sw_power_model" in entries:
        kw["sw_power_model"] = cfgfile.load_power_model(rel(entries["sw_power_model"]))
    if "hw_power_model" in entries:
        kw["hw_power_model"] = cfgfile.load_power_model(rel(entries["hw_power_model"]))

    overrides = {
        "sizes": args.size, "orderings": args.order, "arities": args.arity,
        "repetitions": args.reps, "cooldown_ms": args.cooldown_ms, "seed": args.seed,
        "output_dir": args.out, "jobs": args.jobs,
        "formats": tuple(args.format) if args.format else None,
    }
    kw.update({k: v for k, v in overrides.items() if v is not None})
    if args.clock_mhz is not None:
        clock_hz = args.clock_mhz * 1e6
    if args.power_model:
        kw["hw_power_model"] = cfgfile.load_power_model(args.power_model)
    if args.sw_power_model:
        kw["sw_power_model"] = cfgfile.load_power_model(args.sw_power_model)
    if "sizes" not in kw:
        raise UsageError("no sizes given (--size or 'sizes' in the config file)")

    capacity = int(entries.get("capacity", max(kw["sizes"])))
    kw["hw_config"] = HwConfig(arity=2, capacity=capacity, clock_hz=clock_hz,
                               cost_model=cfgfile.cost_model_from_kv(entries))
    return ExperimentSpec(**kw)


def cmd_sweep(args):
    spec = spec_from_args(args)
    rows, errors = run_with_errors(spec)
    print(f"{len(rows)} rows written to {spec.output_dir}")
    for e in errors:
        print(f"error: n={e.size} {e.ordering} k={e.arity}: {e.message}", file=sys.stderr)
    return EXIT_RUNTIME if errors else EXIT_OK


def read_reference(path):
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        cols = reader.fieldnames or []
        for col, scale in (("time_s", 1.0), ("hw_time_s", 1.0), ("fpga_time_ms", 1e-3)):
            if col in cols:
                break
        else:
            raise ConfigError(f"{path}: no time_s, hw_time_s or fpga_time_ms column")
        if "size" not in cols:
            raise ConfigError(f"{path}: no size column")
        return [(int(r["size"]), float(r[col]) * scale) for r in reader]


def cmd_calibrate(args):
    ref = read_reference(args.reference)
    entries = cfgfile.load_kv(args.config) if args.config else {}
    base = HwConfig(arity=args.arity, capacity=max((s for s, _ in ref), default=0),
                    clock_hz=_clock_hz(args.clock_mhz),
                    cost_model=cfgfile.cost_model_from_kv(entries))
    model, max_err = calibrate(ref, base, args.seed, return_error=True)
    kv = cfgfile.cost_model_to_kv(model)
    sys.stdout.write(cfgfile.dump_kv(kv))
    print(f"# max relative error {max_err:.4%}")
    if args.out:
        args.out.write_text(cfgfile.dump_kv(kv))


def cmd_report(args):
    rows = read_csv(args.csv)
    if args.format == "markdown" and args.out is None:
        from .report import markdown_table
        sys.stdout.write(markdown_table(rows))
        return
    if args.out is None:
        raise UsageError(f"--out is required for format {args.format}")
    for path in emit_report(rows, args.format, args.out):
        print(path)


COMMANDS = {
    "sort": cmd_sort, "simulate": cmd_simulate, "sweep": cmd_sweep,
    "calibrate": cmd_calibrate, "report": cmd_report,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args) or EXIT_OK
    except UsageError as e:
        print(f"heapbench: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, CapacityError, RangeError, TimerError, ValueError,
            OSError, AssertionError) as e:
        print(f"heapbench: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
