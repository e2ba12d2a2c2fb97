"""Parameter scans, replicated ensembles, and evolutionary optimization.

Scans fan out over the Cartesian product of parameter value lists times a
replicate count.  Workers are share-nothing forked processes; results are
merged in canonical (setting-major, then replicate) order and per-run seeds
are mixed from (base seed, setting index, replicate index) only, so the
worker count is observationally irrelevant.
"""

from __future__ import annotations

import itertools
import multiprocessing
import os
from dataclasses import dataclass, field

from .collect import DataTable, run
from .rng import Rng, mix_seed


@dataclass
class ScanSpec:
    parameters: dict              # name -> list of values, declaration order kept
    steps: int = 100
    replicates: int = 1
    base_seed: int = 0
    adata: list = field(default_factory=list)   # aggregated collectors only
    mdata: list = field(default_factory=list)
    when: int = 1

    def __post_init__(self):
        if not self.parameters or any(len(v) == 0 for v in self.parameters.values()):
            raise ValueError("every scanned parameter needs at least one value")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if any(not isinstance(e, tuple) for e in self.adata):
            raise ValueError("scan adata must use aggregated (source, agg[, filter]) entries")

    def settings(self) -> list[dict]:
        names = list(self.parameters)
        combos = itertools.product(*(self.parameters[n] for n in names))
        return [dict(zip(names, values)) for values in combos]


def default_workers() -> int:
    env = os.environ.get("AGENTSIM_WORKERS")
    return max(1, int(env)) if env else 1


def _scan_one(task):
    """Run one (setting, replicate) cell; returns the tagged row columns."""
    spec, factory, agent_step, model_step, si, ri = task
    setting = spec.settings()[si]
    seed = mix_seed(spec.base_seed, si, ri)
    try:
        model = factory(setting, seed)
    except Exception as exc:
        raise RuntimeError(
            f"model factory failed for setting {si} {setting} "
            f"(replicate {ri}, seed {seed}): {exc}") from exc
    adf, mdf = run(model, agent_step, model_step, spec.steps,
                   adata=spec.adata or None, mdata=spec.mdata or None,
                   when=spec.when)
    columns: dict[str, list] = {}
    source = adf if spec.adata else mdf
    nrows = source.nrows
    columns["step"] = list(source.column("step"))
    if spec.adata:
        for name in adf.names:
            if name != "step":
                columns[name] = list(adf.column(name))
    if spec.mdata:
        for name in mdf.names:
            if name != "step":
                columns[name] = list(mdf.column(name))
    for pname in spec.parameters:
        columns[pname] = [setting[pname]] * nrows
    columns["replicate"] = [ri] * nrows
    columns["seed"] = [seed] * nrows
    return si, ri, columns


def paramscan(spec: ScanSpec, model_factory, agent_step=None, model_step=None,
              workers: int = 1) -> DataTable:
    """Scan the parameter grid; returns one merged step-indexed table.

    Row order is canonical: settings in declaration-order Cartesian product,
    replicates within a setting, steps within a replicate.
    """
    if not spec.adata and not spec.mdata:
        raise ValueError("a scan needs at least one collector")
    settings = spec.settings()
    tasks = [(spec, model_factory, agent_step, model_step, si, ri)
             for si in range(len(settings)) for ri in range(spec.replicates)]
    if workers <= 1 or len(tasks) == 1:
        results = [_scan_one(t) for t in tasks]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=min(workers, len(tasks))) as pool:
            results = pool.map(_scan_one, tasks)
    results.sort(key=lambda r: (r[0], r[1]))
    merged = DataTable({name: [] for name in results[0][2]})
    for _, _, columns in results:
        merged.extend(DataTable(columns))
    return merged


@dataclass
class OptimizeSpec:
    bounds: dict                  # name -> (low, high), declaration order kept
    cost: callable                # cost(params: dict, seed: int) -> float
    budget: int = 1000            # candidate evaluations (each may average replicates)
    population: int = 20
    f: float = 0.7
    cr: float = 0.9
    replicates: int = 1
    seed: int = 0

    def __post_init__(self):
        for name, (lo, hi) in self.bounds.items():
            if not lo < hi:
                raise ValueError(f"bounds for {name!r} must satisfy low < high")
        if not 0 < self.f < 2:
            raise ValueError("differential weight f must be in (0, 2)")
        if not 0 <= self.cr <= 1:
            raise ValueError("crossover rate cr must be in [0, 1]")
        if self.budget < self.population:
            raise ValueError("budget must cover at least the initial population")
        if self.population < 4:
            raise ValueError("differential evolution needs a population of >= 4")


def optimize(spec: OptimizeSpec):
    """Differential evolution, rand/1/bin, greedy selection, bound clamping.

    Non-finite costs are treated as +inf (candidate rejected).  Returns
    (best params, best cost, per-generation log table).
    """
    rng = Rng(spec.seed)
    names = list(spec.bounds)
    lows = [spec.bounds[n][0] for n in names]
    highs = [spec.bounds[n][1] for n in names]
    dim = len(names)

    evaluations = 0

    def evaluate(vector):
        nonlocal evaluations
        params = dict(zip(names, vector))
        total = 0.0
        for rep in range(spec.replicates):
            value = spec.cost(params, mix_seed(spec.seed, evaluations, rep))
            total += float(value)
        evaluations += 1
        mean = total / spec.replicates
        return mean if mean == mean and abs(mean) != float("inf") else float("inf")

    population = []
    costs = []
    for _ in range(spec.population):
        vec = [lo + rng.next_float() * (hi - lo) for lo, hi in zip(lows, highs)]
        population.append(vec)
        costs.append(evaluate(vec))

    log = DataTable({"generation": [], "evaluations": [], "best_cost": [],
                     **{f"best_{n}": [] for n in names}})

    def log_generation(gen):
        best = min(range(spec.population), key=lambda i: costs[i])
        row = {"generation": gen, "evaluations": evaluations, "best_cost": costs[best]}
        for j, n in enumerate(names):
            row[f"best_{n}"] = population[best][j]
        log.append_row(row)

    generation = 0
    log_generation(generation)
    while evaluations + spec.population <= spec.budget:
        generation += 1
        for target in range(spec.population):
            a, b, c = _distinct_indices(rng, spec.population, target)
            mutant = [population[a][j] + spec.f * (population[b][j] - population[c][j])
                      for j in range(dim)]
            forced = rng.next_below(dim)
            trial = []
            for j in range(dim):
                use_mutant = j == forced or rng.next_float() < spec.cr
                value = mutant[j] if use_mutant else population[target][j]
                trial.append(min(max(value, lows[j]), highs[j]))
            trial_cost = evaluate(trial)
            if trial_cost <= costs[target]:
                population[target] = trial
                costs[target] = trial_cost
        log_generation(generation)
    best = min(range(spec.population), key=lambda i: costs[i])
    return dict(zip(names, population[best])), costs[best], log


def _distinct_indices(rng, n, exclude):
    picked = []
    while len(picked) < 3:
        i = rng.next_below(n)
        if i != exclude and i not in picked:
            picked.append(i)
    return picked
