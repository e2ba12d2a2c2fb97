"""Timing harness for the bundled benchmark models.

Reports absolute wall time, steps per second, and the line count of each
model's definition file.  Line counting convention: source is read as-is,
docstrings and own-line comments are discarded, blank lines are discarded.
"""

from __future__ import annotations

import ast
import io
import time
import tokenize

from .core import step
from .models import get_model

# (model, params, steps); steps=None means run to the model's terminator.
BENCH_CONFIGS = [
    ("schelling", {}, 100),
    ("flocking", {}, 100),
    ("wolfsheep", {}, 500),
    ("forestfire", {}, None),
]

# Absolute single-thread wall-clock gates (seconds) for the pinned configs.
TIME_GATES = {
    "schelling": 0.050,
    "flocking": 0.200,
    "wolfsheep": 1.000,
    "forestfire": 0.100,
}


def count_loc(path: str) -> int:
    """Code lines in a Python file, excluding docstrings, comments, blanks."""
    with open(path, "r", encoding="utf-8") as fh:
        source = fh.read()
    doc_lines: set[int] = set()
    tree = ast.parse(source)
    for node in ast.walk(tree):
        if isinstance(node, (ast.Module, ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)):
            body = getattr(node, "body", [])
            if body and isinstance(body[0], ast.Expr) \
                    and isinstance(body[0].value, ast.Constant) \
                    and isinstance(body[0].value.value, str):
                doc_lines.update(range(body[0].lineno, body[0].end_lineno + 1))
    code_lines: set[int] = set()
    skip = {tokenize.COMMENT, tokenize.NL, tokenize.NEWLINE, tokenize.INDENT,
            tokenize.DEDENT, tokenize.ENCODING, tokenize.ENDMARKER}
    for tok in tokenize.generate_tokens(io.StringIO(source).readline):
        if tok.type in skip:
            continue
        code_lines.update(range(tok.start[0], tok.end[0] + 1))
    return len(code_lines - doc_lines)


def run_benchmark(name: str, params: dict | None = None, steps: int | None = None,
                  seed: int = 42) -> dict:
    """Time one model at its pinned config; returns the measurement record."""
    spec = get_model(name)
    model = spec.build(params, seed)
    n = steps if steps is not None else spec.default_steps
    t0 = time.perf_counter()
    if steps is None and spec.terminator is not None:
        step(model, spec.agent_step, spec.model_step, spec.terminator)
        n = model.step_count
    else:
        step(model, spec.agent_step, spec.model_step, n)
    elapsed = time.perf_counter() - t0
    return {
        "model": name,
        "steps": n,
        "seconds": elapsed,
        "steps_per_sec": n / elapsed if elapsed > 0 else float("inf"),
        "loc": count_loc(spec.source_file()),
        "gate_seconds": TIME_GATES.get(name),
    }


def run_all(seed: int = 42) -> list[dict]:
    return [run_benchmark(name, params, steps, seed)
            for name, params, steps in BENCH_CONFIGS]


def format_report(records: list[dict]) -> str:
    header = f"{'model':<12} {'steps':>6} {'wall s':>9} {'steps/s':>10} {'LOC':>5}"
    lines = [header, "-" * len(header)]
    for r in records:
        lines.append(f"{r['model']:<12} {r['steps']:>6} {r['seconds']:>9.4f} "
                     f"{r['steps_per_sec']:>10.1f} {r['loc']:>5}")
    return "\n".join(lines)
