"""Command-line entry point: run, scan, bench, optimize, serve, resume.

Exit codes: 0 success, 2 usage error, 3 model error, 4 I/O error.
Every CSV a command writes carries a provenance comment line; re-running
the command printed there reproduces the file byte for byte.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .collect import AGGREGATORS, run, write_csv
from .core import step
from .ensemble import ScanSpec, OptimizeSpec, default_workers, optimize, paramscan
from .models import get_model, model_names

USAGE_ERROR, MODEL_ERROR, IO_ERROR = 2, 3, 4


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def parse_value(text: str):
    """key=value override values: bool, int, float, comma tuple, or string."""
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    if "," in text:
        return tuple(parse_value(part) for part in text.split(","))
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_overrides(pairs) -> dict:
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise CliError(f"override '{pair}' is not key=value", USAGE_ERROR)
        key, _, value = pair.partition("=")
        out[key] = parse_value(value)
    return out


def parse_scan_values(text: str) -> list:
    """Scan value lists: 'a..b' inclusive int range or comma-separated values."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        return list(range(int(lo), int(hi) + 1))
    return [parse_value(v) for v in text.split(",")]


def parse_collector(name: str):
    """Built-in collector names: 'prop' raw, or '<agg>_<prop>' aggregated."""
    head, _, rest = name.partition("_")
    if rest and head in AGGREGATORS:
        return (rest, AGGREGATORS[head])
    return name


def _provenance(args_list) -> str:
    return f"agentsim {' '.join(args_list)} [v{__version__}]"


def _lookup_model(name: str):
    try:
        return get_model(name)
    except KeyError as exc:
        raise CliError(str(exc), USAGE_ERROR) from None


def _write(table, path, provenance):
    try:
        write_csv(table, path, provenance)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", IO_ERROR) from None


def cmd_run(args) -> int:
    spec = _lookup_model(args.model)
    overrides = parse_overrides(args.overrides)
    adata = [parse_collector(n) for n in args.adata] if args.adata else spec.adata
    mdata = [parse_collector(n) for n in args.mdata] if args.mdata else spec.mdata
    steps = args.steps if args.steps is not None else spec.default_steps
    try:
        model = spec.build(overrides, args.seed)
        n = spec.terminator if args.to_termination and spec.terminator else steps
        adf, mdf = run(model, spec.agent_step, spec.model_step, n,
                       adata=adata or None, mdata=mdata or None, when=args.when)
    except (ValueError, TypeError, KeyError) as exc:
        raise CliError(f"model error: {exc}", MODEL_ERROR) from None
    out = args.out or args.model
    prov_args = [a for a in args.provenance_args]
    wrote = []
    if adata:
        _write(adf, f"{out}_agents.csv", _provenance(prov_args))
        wrote.append(f"{out}_agents.csv")
    if mdata:
        _write(mdf, f"{out}_model.csv", _provenance(prov_args))
        wrote.append(f"{out}_model.csv")
    if args.checkpoint:
        from .persist import save_checkpoint

        try:
            save_checkpoint(model, args.checkpoint)
        except OSError as exc:
            raise CliError(f"cannot write {args.checkpoint}: {exc}", IO_ERROR) from None
        wrote.append(args.checkpoint)
    print(f"ran {args.model} for {model.step_count} steps "
          f"({model.n_agents} agents alive); wrote {', '.join(wrote) or 'nothing'}")
    return 0


def cmd_scan(args) -> int:
    spec = _lookup_model(args.model)
    parameters = {}
    for pair in args.ranges:
        if "=" not in pair:
            raise CliError(f"scan range '{pair}' is not name=values", USAGE_ERROR)
        name, _, values = pair.partition("=")
        parameters[name] = parse_scan_values(values)
    adata = [parse_collector(n) for n in args.adata] if args.adata else \
        [e for e in spec.adata if isinstance(e, tuple)]
    mdata = [parse_collector(n) for n in args.mdata] if args.mdata else spec.mdata
    if not adata and not mdata:
        raise CliError("scan needs --adata or --mdata collectors", USAGE_ERROR)
    steps = args.steps if args.steps is not None else spec.default_steps
    try:
        scan = ScanSpec(parameters=parameters, steps=steps, replicates=args.replicates,
                        base_seed=args.seed, adata=adata, mdata=mdata, when=args.when)
    except ValueError as exc:
        raise CliError(str(exc), USAGE_ERROR) from None
    try:
        table = paramscan(scan, spec.scan_factory(), spec.agent_step,
                          spec.model_step, workers=args.workers)
    except (ValueError, TypeError, KeyError, RuntimeError) as exc:
        raise CliError(f"model error: {exc}", MODEL_ERROR) from None
    out = args.out or f"{args.model}_scan.csv"
    _write(table, out, _provenance(args.provenance_args))
    print(f"scanned {len(scan.settings())} settings x {args.replicates} replicates; wrote {out}")
    return 0


def cmd_bench(args) -> int:
    from .bench import format_report, run_all

    records = run_all(seed=args.seed)
    print(format_report(records))
    failures = [r for r in records if r["gate_seconds"] is not None
                and r["seconds"] > args.slack * r["gate_seconds"]]
    for r in failures:
        print(f"GATE FAIL {r['model']}: {r['seconds']:.3f}s > "
              f"{args.slack:.0f}x{r['gate_seconds']:.3f}s")
    if failures and args.enforce:
        return MODEL_ERROR
    return 0


def cmd_optimize(args) -> int:
    spec = _lookup_model(args.model)
    if not spec.costs:
        raise CliError(f"model '{args.model}' defines no cost functions", USAGE_ERROR)
    cost_name = args.cost or next(iter(spec.costs))
    if cost_name not in spec.costs:
        raise CliError(f"unknown cost '{cost_name}'; available: "
                       f"{', '.join(spec.costs)}", USAGE_ERROR)
    bounds = {}
    for pair in args.params:
        if "=" not in pair or ":" not in pair.partition("=")[2]:
            raise CliError(f"param bound '{pair}' is not name=low:high", USAGE_ERROR)
        name, _, span = pair.partition("=")
        lo, _, hi = span.partition(":")
        bounds[name] = (float(lo), float(hi))
    try:
        opt = OptimizeSpec(bounds=bounds, cost=spec.costs[cost_name], budget=args.budget,
                           population=args.population, replicates=args.replicates,
                           seed=args.seed)
    except ValueError as exc:
        raise CliError(str(exc), USAGE_ERROR) from None
    best_params, best_cost, log = optimize(opt)
    if args.out:
        _write(log, args.out, _provenance(args.provenance_args))
    pretty = ", ".join(f"{k}={v:.4g}" for k, v in best_params.items())
    print(f"best cost {best_cost:.6g} at {pretty} "
          f"({log.column('evaluations')[-1]} evaluations)")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .serve import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_resume(args) -> int:
    from .persist import CorruptCheckpoint, UnsupportedVersion, load_checkpoint, save_checkpoint

    try:
        model = load_checkpoint(args.checkpoint)
    except FileNotFoundError as exc:
        raise CliError(str(exc), IO_ERROR) from None
    except (CorruptCheckpoint, UnsupportedVersion) as exc:
        raise CliError(f"bad checkpoint: {exc}", MODEL_ERROR) from None
    spec = _lookup_model(model.name)
    try:
        step(model, spec.agent_step, spec.model_step, args.steps)
    except (ValueError, TypeError, KeyError) as exc:
        raise CliError(f"model error: {exc}", MODEL_ERROR) from None
    out = args.out or args.checkpoint
    save_checkpoint(model, out)
    print(f"resumed {model.name} to step {model.step_count}; wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="agentsim",
                                     description="agent-based modelling engine")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, steps_default=None):
        p.add_argument("--steps", type=int, default=steps_default)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out")
        p.add_argument("--when", type=int, default=1)

    p = sub.add_parser("run", help="run a model and write collected CSVs")
    p.add_argument("model")
    p.add_argument("overrides", nargs="*", metavar="key=value")
    common(p)
    p.add_argument("--adata", nargs="*", metavar="COLLECTOR")
    p.add_argument("--mdata", nargs="*", metavar="COLLECTOR")
    p.add_argument("--to-termination", action="store_true")
    p.add_argument("--checkpoint", help="write a checkpoint after the run")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("scan", help="parameter scan with replicates")
    p.add_argument("model")
    p.add_argument("ranges", nargs="+", metavar="name=lo..hi|v1,v2")
    common(p)
    p.add_argument("--adata", nargs="*", metavar="COLLECTOR")
    p.add_argument("--mdata", nargs="*", metavar="COLLECTOR")
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--workers", type=int, default=default_workers())
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("bench", help="time the benchmark models at pinned configs")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--slack", type=float, default=3.0)
    p.add_argument("--enforce", action="store_true",
                   help="exit nonzero when a gate is missed")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("optimize", help="tune model parameters by differential evolution")
    p.add_argument("model")
    p.add_argument("params", nargs="+", metavar="name=low:high")
    p.add_argument("--cost")
    p.add_argument("--budget", type=int, default=400)
    p.add_argument("--population", type=int, default=12)
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("serve", help="start the interactive exploration server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("resume", help="load a checkpoint and continue")
    p.add_argument("checkpoint")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_resume)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code else 0
    args.provenance_args = argv
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
