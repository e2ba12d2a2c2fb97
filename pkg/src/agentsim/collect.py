"""Declarative data collection into step-indexed tables.

Agent collectors (``adata``) come in four forms, mirroring the model-level
``mdata`` forms where they make sense:

* ``"mood"``                 -- raw property, one row per agent per step
* ``fn``                     -- raw function of the agent
* ``("mood", agg)``          -- aggregate over all agents, one value per step
* ``("mood", agg, pred)``    -- aggregate over agents passing ``pred``

Raw and aggregated entries cannot be mixed in one ``adata`` list (the row
shapes differ).  Aggregate columns are named ``<agg>_<source>`` plus
``_<filter>`` when filtered, e.g. ``sum_mood`` or ``sum_mood_right``.
"""

from __future__ import annotations

import csv
import io
import math

from .core import Model, step


class CollectorResolution(Exception):
    """A collector references a property no scheduled agent kind provides."""


# Built-in aggregators.  Any callable over a value list is accepted; these
# carry the names used in column headers and by the CLI.

def count(values):
    return len(values)


def mean(values):
    return sum(values) / len(values)


def minimum(values):
    return min(values)


def maximum(values):
    return max(values)


def std(values):
    """Sample standard deviation (n-1 denominator); undefined below n=2."""
    if len(values) < 2:
        raise ValueError("std needs at least two values")
    m = sum(values) / len(values)
    return math.sqrt(sum((v - m) ** 2 for v in values) / (len(values) - 1))


AGGREGATORS = {f.__name__: f for f in (sum, count, mean, minimum, maximum, std)}


class DataTable:
    """Ordered named columns of equal length, with a ``step`` column."""

    def __init__(self, columns=None):
        self.columns: dict[str, list] = {}
        if columns:
            for name, values in columns.items():
                self.columns[name] = list(values)

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    @property
    def nrows(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def column(self, name) -> list:
        return self.columns[name]

    def add_column(self, name, values=()):
        self.columns[name] = list(values)

    def append_row(self, row: dict):
        for name in self.columns:
            self.columns[name].append(row[name])

    def row(self, i) -> dict:
        return {name: values[i] for name, values in self.columns.items()}

    def rows(self):
        return (self.row(i) for i in range(self.nrows))

    def extend(self, other: "DataTable"):
        if self.names != other.names:
            raise ValueError(f"column mismatch: {self.names} vs {other.names}")
        for name in self.columns:
            self.columns[name].extend(other.columns[name])

    def __eq__(self, other):
        return isinstance(other, DataTable) and self.names == other.names \
            and all(self.columns[n] == other.columns[n] for n in self.columns)

    def __repr__(self):
        return f"DataTable({self.nrows} rows x {self.names})"


def _source_name(source) -> str:
    return source if isinstance(source, str) else source.__name__


def _column_name(entry) -> str:
    if isinstance(entry, tuple):
        if len(entry) == 2:
            source, agg = entry
            return f"{agg.__name__}_{_source_name(source)}"
        source, agg, pred = entry
        return f"{agg.__name__}_{_source_name(source)}_{pred.__name__}"
    return _source_name(entry)


def _getter(source):
    if isinstance(source, str):
        return lambda a: getattr(a, source)
    return source


def _resolve_agent_sources(model: Model, adata):
    """Fail fast when a named property is missing on some present agent kind."""
    names = [e[0] if isinstance(e, tuple) else e for e in (adata or [])]
    names = [n for n in names if isinstance(n, str)]
    if not names:
        return
    seen = {type(a) for a in model.agents.values()}
    for cls in seen:
        for name in names:
            if not any(name in k.__dict__.get("__slots__", ()) for k in cls.__mro__):
                raise CollectorResolution(
                    f"agent kind '{cls.kind}' has no property '{name}'")


def _resolve_model_sources(model: Model, mdata):
    for entry in mdata or []:
        if isinstance(entry, str) and entry not in model.properties:
            raise CollectorResolution(f"model has no property '{entry}'")


def _classify_adata(adata):
    raw = [e for e in adata if not isinstance(e, tuple)]
    agg = [e for e in adata if isinstance(e, tuple)]
    if raw and agg:
        raise CollectorResolution(
            "cannot mix raw and aggregated agent collectors in one run")
    return ("agg" if agg else "raw") if adata else "none"


def _apply_aggregate(agg, values):
    """Empty-set convention: sum/count give 0, everything else a missing cell."""
    try:
        return agg(values)
    except Exception:
        if not values:
            return None
        raise


def collect_agent_row_block(model: Model, adata) -> list[dict]:
    """Rows contributed by one collection instant.

    Raw collectors: one row per agent (ascending id) with ``step``, ``id``
    and one column per collector.  Aggregated collectors: a single row with
    ``step`` and one column per collector.
    """
    kind = _classify_adata(adata)
    s = model.step_count
    if kind == "raw":
        getters = [(_column_name(e), _getter(e)) for e in adata]
        return [
            {"step": s, "id": a.id, **{name: g(a) for name, g in getters}}
            for a in model.agents.values()
        ]
    if kind == "agg":
        row = {"step": s}
        agents = list(model.agents.values())
        for entry in adata:
            if len(entry) == 2:
                source, agg = entry
                pool = agents
            else:
                source, agg, pred = entry
                pool = [a for a in agents if pred(a)]
            get = _getter(source)
            row[_column_name(entry)] = _apply_aggregate(agg, [get(a) for a in pool])
        return [row]
    return []


def collect_model_row(model: Model, mdata) -> dict:
    row = {"step": model.step_count}
    for entry in mdata:
        get = entry if callable(entry) else None
        row[_column_name(entry)] = get(model) if get else model.properties[entry]
    return row


def run(model: Model, agent_step=None, model_step=None, n=1,
        adata=None, mdata=None, when: int = 1,
        model_step_first: bool = False) -> tuple[DataTable, DataTable]:
    """Evolve the model exactly like ``step`` while collecting data.

    Collects a step-0 snapshot first, then after every step whose resulting
    ``step_count`` is a multiple of ``when``.  Returns (agent table, model
    table); a table is empty when its collector list is.
    """
    if when < 1:
        raise ValueError("collection interval must be >= 1")
    _resolve_agent_sources(model, adata)
    _resolve_model_sources(model, mdata)
    kind = _classify_adata(adata or [])

    if kind == "raw":
        agent_cols = ["step", "id"] + [_column_name(e) for e in adata]
    elif kind == "agg":
        agent_cols = ["step"] + [_column_name(e) for e in adata]
    else:
        agent_cols = []
    agent_table = DataTable({c: [] for c in agent_cols})
    model_cols = ["step"] + [_column_name(e) for e in mdata] if mdata else []
    model_table = DataTable({c: [] for c in model_cols})

    def snapshot():
        if adata:
            for row in collect_agent_row_block(model, adata):
                agent_table.append_row(row)
        if mdata:
            model_table.append_row(collect_model_row(model, mdata))

    snapshot()
    if callable(n):
        s = 0
        while not n(model, s):
            step(model, agent_step, model_step, 1, model_step_first)
            s += 1
            if model.step_count % when == 0:
                snapshot()
    else:
        for _ in range(n):
            step(model, agent_step, model_step, 1, model_step_first)
            if model.step_count % when == 0:
                snapshot()
    return agent_table, model_table


# --- CSV ---

def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)  # shortest round-trip decimal
    if isinstance(value, str) and "\x00" in value:
        raise ValueError("CSV cells cannot contain NUL characters")
    return str(value)


def write_csv(table: DataTable, sink, provenance: str | None = None) -> None:
    """RFC-4180-style CSV: header row, CRLF, floats round-trip exactly.

    ``sink`` is a path or a text file object.  ``provenance``, when given,
    is embedded as a leading ``#`` comment line.
    """
    own = isinstance(sink, (str, bytes))
    fh = open(sink, "w", newline="", encoding="utf-8") if own else sink
    try:
        if provenance is not None:
            fh.write(f"# {provenance}\r\n")
        writer = csv.writer(fh)
        writer.writerow(table.names)
        names = table.names
        for i in range(table.nrows):
            writer.writerow([_format_cell(table.columns[n][i]) for n in names])
    finally:
        if own:
            fh.close()


def _parse_column(values: list[str]) -> list:
    present = [v for v in values if v != ""]

    def try_all(parse):
        out = []
        for v in values:
            if v == "":
                out.append(None)
            else:
                out.append(parse(v))
        return out

    if present and all(v in ("true", "false") for v in present):
        return try_all(lambda v: v == "true")
    try:
        for v in present:
            int(v)
        return try_all(int)
    except ValueError:
        pass
    try:
        for v in present:
            float(v)
        return try_all(float)
    except ValueError:
        pass
    return try_all(str)


def read_csv(source) -> DataTable:
    """Inverse of write_csv (types inferred; leading # comment lines skipped).

    Line splitting is left entirely to the csv parser: cells may contain
    form feeds and other exotic control characters.
    """
    own = isinstance(source, (str, bytes))
    fh = open(source, "r", newline="", encoding="utf-8") if own else source
    try:
        text = fh.read()
    finally:
        if own:
            fh.close()
    while text.startswith("# "):
        cut = text.find("\n")
        text = "" if cut == -1 else text[cut + 1:]
    rows = list(csv.reader(io.StringIO(text, newline="")))
    if not rows:
        return DataTable()
    header, data = rows[0], rows[1:]
    for i, row in enumerate(data):
        if len(row) != len(header):
            raise ValueError(f"row {i + 1} has {len(row)} fields, header has {len(header)}")
    table = DataTable()
    for j, name in enumerate(header):
        table.add_column(name, _parse_column([r[j] for r in data]))
    return table


def csv_bytes(table: DataTable, provenance: str | None = None) -> bytes:
    """The exact bytes write_csv would produce for this table."""
    buf = io.StringIO(newline="")
    write_csv(table, buf, provenance)
    return buf.getvalue().encode("utf-8")
