"""Flat key-value configuration files.

Grammar, one entry per line::

    # comment (also after a value)
    key = value
    list_key = a, b, c

Keys are case-sensitive and may contain dots (``cost.swap_cycles``).
Blank lines are ignored; a repeated key is an error.

Power model files use ``model = constant | table | affine`` plus:

* constant: ``watts``
* table: one ``size.<n> = <watts>`` line per size
* affine: ``base_watts`` and ``watts_per_k``
"""

from pathlib import Path

from .energy import AffineInArityPower, ConstantPower, PerSizeTablePower
from .errors import ConfigError
from .hwsim import COST_FIELDS, CycleCostModel


def parse_kv(text, source="<string>"):
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        if key in entries:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def load_kv(path):
    path = Path(path)
    return parse_kv(path.read_text(), source=str(path))


def dump_kv(entries):
    return "".join(f"{k} = {v}\n" for k, v in entries.items())


def split_list(value):
    return [v.strip() for v in value.split(",") if v.strip()]


def power_model_from_kv(entries, source="<power model>"):
    kind = entries.get("model")
    try:
        if kind == "constant":
            return ConstantPower(float(entries["watts"]))
        if kind == "table":
            table = {int(k[5:]): float(v) for k, v in entries.items() if k.startswith("size.")}
            return PerSizeTablePower(table)
        if kind == "affine":
            return AffineInArityPower(float(entries["base_watts"]), float(entries["watts_per_k"]))
    except KeyError as e:
        raise ConfigError(f"{source}: missing key {e.args[0]!r} for model {kind!r}") from None
    except ValueError as e:
        raise ConfigError(f"{source}: {e}") from None
    raise ConfigError(f"{source}: unknown power model {kind!r} (constant, table, affine)")


def load_power_model(path):
    return power_model_from_kv(load_kv(path), source=str(path))


def power_model_to_kv(model):
    if isinstance(model, ConstantPower):
        return {"model": "constant", "watts": repr(model.watts)}
    if isinstance(model, PerSizeTablePower):
        out = {"model": "table"}
        out.update({f"size.{s}": repr(w) for s, w in model.table.items()})
        return out
    if isinstance(model, AffineInArityPower):
        return {"model": "affine", "base_watts": repr(model.base_watts),
                "watts_per_k": repr(model.watts_per_k)}
    raise TypeError(f"not a power model: {model!r}")


def cost_model_from_kv(entries, base=None):
    """Read ``cost.<field>`` keys, falling back to ``base`` (or the defaults)."""
    base = base or CycleCostModel()
    values = dict(zip(COST_FIELDS, base.as_tuple()))
    for key, value in entries.items():
        if not key.startswith("cost."):
            continue
        name = key[5:]
        if name not in values:
            raise ConfigError(f"unknown cost field {name!r}")
        try:
            values[name] = int(value)
        except ValueError:
            raise ConfigError(f"cost field {name} must be an integer, got {value!r}") from None
    return CycleCostModel(**values)


def cost_model_to_kv(model):
    return {f"cost.{name}": str(v) for name, v in zip(COST_FIELDS, model.as_tuple())}
