"""Published software/hardware measurements for the binary heap (k = 2).

Random input, sizes 4096 to 16384.  Times in ms and energies in mJ exactly
as printed; the improvement columns are software over hardware.
"""

import csv
import io
from importlib import resources

from .bench import ResultRow
from .energy import improvement_ratios

FPGA_CLOCK_HZ = 100_000_000


def load_table1():
    text = resources.files("heapbench").joinpath("data/table1.csv").read_text()
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append({k: (int(v) if k == "size" else float(v)) for k, v in rec.items()})
    return rows


def table1_result_rows():
    """The published table as ResultRows, with ratios recomputed from the raw columns."""
    out = []
    for r in load_table1():
        sw = (r["rpi_time_ms"] / 1e3, r["rpi_energy_mj"] / 1e3)
        hw = (r["fpga_time_ms"] / 1e3, r["fpga_energy_mj"] / 1e3)
        t_ratio, e_ratio = improvement_ratios(sw, hw)
        out.append(ResultRow(
            size=r["size"], ordering="random", arity=2,
            sw_time_s=sw[0], sw_time_stddev=0.0,
            hw_cycles=round(hw[0] * FPGA_CLOCK_HZ), hw_time_s=hw[0],
            sw_energy_j=sw[1], hw_energy_j=hw[1],
            time_ratio=t_ratio, energy_ratio=e_ratio,
        ))
    return out


def fpga_time_reference():
    """(size, seconds) pairs of the hardware time column, for calibration."""
    return [(r["size"], r["fpga_time_ms"] / 1e3) for r in load_table1()]


def rpi_time_energy_pairs():
    return [(r["rpi_time_ms"] / 1e3, r["rpi_energy_mj"] / 1e3) for r in load_table1()]
