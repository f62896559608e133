"""CSV, markdown and plot-data output for benchmark rows."""

import csv
from dataclasses import astuple, fields
from pathlib import Path

from .bench import ResultRow

CSV_HEADER = tuple(f.name for f in fields(ResultRow))
HW_COLUMNS = ("size", "ordering", "arity", "hw_cycles", "hw_time_s")
FORMATS = ("csv", "markdown", "plotdata")
_INT_COLUMNS = {"size", "arity", "hw_cycles"}


def _fmt(value):
    # repr gives the shortest string that round-trips a float exactly
    return repr(value) if isinstance(value, float) else str(value)


def write_csv(rows, path):
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([_fmt(v) for v in astuple(r)])
    return path


def read_csv(path):
    rows = []
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for rec in reader:
            kw = {}
            for name in CSV_HEADER:
                v = rec[name]
                if name == "ordering":
                    kw[name] = v
                elif name in _INT_COLUMNS:
                    kw[name] = int(v)
                else:
                    kw[name] = float(v)
            rows.append(ResultRow(**kw))
    return rows


def markdown_table(rows):
    lines = [
        "| Size | Ordering | k | SW time (ms) | HW time (ms) | SW energy (mJ) "
        "| HW energy (mJ) | Time impr. | Energy impr. |",
        "|---:|:---|---:|---:|---:|---:|---:|---:|---:|",
    ]
    for r in rows:
        lines.append(
            f"| {r.size} | {r.ordering} | {r.arity} | {r.sw_time_s * 1e3:.3f} "
            f"| {r.hw_time_s * 1e3:.3f} | {r.sw_energy_j * 1e3:.3f} "
            f"| {r.hw_energy_j * 1e3:.3f} | {r.time_ratio:.3f} | {r.energy_ratio:.3f} |"
        )
    return "\n".join(lines) + "\n"


def write_plotdata(rows, out_dir):
    """Two-column ``x y`` series files, energy in joules.

    * ``hw_energy_vs_arity_<ordering>[_n<size>].dat`` when rows span several arities
    * ``{hw,sw}_energy_vs_size_<ordering>_k<arity>.dat`` when rows span several sizes
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sizes = sorted({r.size for r in rows})
    arities = sorted({r.arity for r in rows})
    orderings = sorted({r.ordering for r in rows})
    written = []

    def dump(name, pairs):
        path = out_dir / name
        with path.open("w", newline="") as fh:
            fh.write("".join(f"{x} {_fmt(y)}\n" for x, y in sorted(pairs)))
        written.append(path)

    for o in orderings:
        if len(arities) > 1:
            for n in sizes:
                suffix = f"_n{n}" if len(sizes) > 1 else ""
                pairs = [(r.arity, r.hw_energy_j) for r in rows if r.ordering == o and r.size == n]
                if pairs:
                    dump(f"hw_energy_vs_arity_{o}{suffix}.dat", pairs)
        if len(sizes) > 1 or len(arities) == 1:
            for k in arities:
                sel = [r for r in rows if r.ordering == o and r.arity == k]
                if sel:
                    dump(f"hw_energy_vs_size_{o}_k{k}.dat", [(r.size, r.hw_energy_j) for r in sel])
                    dump(f"sw_energy_vs_size_{o}_k{k}.dat", [(r.size, r.sw_energy_j) for r in sel])
    return written


def emit_report(rows, fmt, out):
    """Write ``rows`` in one format.

    ``out`` is a directory (default file names ``results.csv`` and
    ``results.md``) or, for csv and markdown, an explicit file path with a
    suffix.  Returns the list of files written.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("nothing to report")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    out = Path(out)
    if fmt == "plotdata":
        return write_plotdata(rows, out)
    if out.suffix:
        out.parent.mkdir(parents=True, exist_ok=True)
        path = out
    else:
        out.mkdir(parents=True, exist_ok=True)
        path = out / ("results.csv" if fmt == "csv" else "results.md")
    if fmt == "csv":
        write_csv(rows, path)
    else:
        path.write_text(markdown_table(rows))
    return [path]


def write_errors(errors, path):
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("size", "ordering", "arity", "message"))
        for e in errors:
            w.writerow((e.size, e.ordering, e.arity, e.message))
    return path
