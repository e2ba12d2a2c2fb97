"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one line per criterion.
"""

import inspect
import math
import statistics
import time

import numpy as np
import pytest

from agentsim.bench import TIME_GATES, run_benchmark
from agentsim.collect import csv_bytes, maximum, run
from agentsim.core import step
from agentsim.ensemble import OptimizeSpec, ScanSpec, optimize, paramscan
from agentsim.models import get_model
from agentsim.models.forestfire import burnt_tree_fraction, done, make_forestfire
from agentsim.models.fishery import fishery_run
from agentsim.models.schelling import (happy_count, make_schelling,
                                       schelling_step, steps_to_90pct_happy, x)
from agentsim.ode import IntegratorConfig, OdeProblem, integrate_adaptive, integrate_euler
from agentsim.persist import load_checkpoint, save_checkpoint
from agentsim.rng import Rng
from agentsim.space import ContinuousSpace

from .oracles import brute_force_neighbors, logistic_closed_form

SLACK = 3.0  # CI slack factor for the absolute performance gates


def report(name: str):
    print(f"ACCEPTANCE PASS: {name}")


def test_schelling_monotone_happiness():
    t0 = time.perf_counter()
    for seed in range(10):
        model = make_schelling({}, seed)
        total = model.n_agents
        last = -1
        for _ in range(100):
            step(model, schelling_step)
            now = happy_count(model)
            assert now >= last, f"sum_mood decreased (seed {seed})"
            last = now
        assert last >= 0.95 * total, f"only {last}/{total} happy at step 100 (seed {seed})"
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"took {elapsed:.2f}s (budget 5s)"
    report(f"schelling monotone happiness, >=95% happy by step 100, {elapsed:.2f}s")


def test_run_table_shape_fixture():
    # Table shape matches the documented run (columns and steps 0..5); the
    # values are pinned under this artifact's seed 42 as a regression
    # fixture, since the documented values are seed-dependent.
    model = make_schelling({}, 42)
    adf, _ = run(model, schelling_step, None, 5, adata=[("mood", sum), (x, maximum)])
    assert adf.names == ["step", "sum_mood", "maximum_x"]
    assert adf.column("step") == [0, 1, 2, 3, 4, 5]
    assert adf.column("sum_mood") == [0, 223, 281, 299, 311, 314]
    assert adf.column("maximum_x") == [19, 19, 19, 19, 19, 19]
    report("run-table shape fixture (step/sum_mood/maximum_x, seed 42 pinned)")


def test_forest_fire_phase_transition():
    t0 = time.perf_counter()
    means = {}
    for density in (0.4, 0.8):
        fractions = []
        for seed in range(20):
            model = make_forestfire({"dims": (100, 100), "density": density}, seed)
            step(model, None, get_model("forestfire").model_step, done)
            fractions.append(burnt_tree_fraction(model))
        means[density] = sum(fractions) / len(fractions)
    assert means[0.4] < 0.15, f"subcritical mean {means[0.4]:.3f}"
    assert means[0.8] > 0.85, f"supercritical mean {means[0.8]:.3f}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"took {elapsed:.2f}s (budget 10s)"
    report(f"forest-fire phase transition ({means[0.4]:.3f} vs {means[0.8]:.3f}), "
           f"{elapsed:.2f}s")


def test_continuous_neighbor_oracle():
    t0 = time.perf_counter()
    rng = Rng(314159)
    for trial in range(1000):
        extent = (2.0 + rng.next_float() * 18.0, 2.0 + rng.next_float() * 18.0)
        spacing = 0.2 + rng.next_float() * 4.0
        periodic = rng.bernoulli(0.5)
        space = ContinuousSpace(extent, periodic=periodic, spacing=spacing)
        n = 1 + rng.next_below(200)
        positions = {}
        for aid in range(n):
            pos = space.random_position(rng)
            positions[aid] = pos
            space.register_agent(aid, pos)
        query = space.random_position(rng)
        r = rng.next_float() * max(extent) * 0.6
        got = set(space.neighbor_ids(query, r))
        want = brute_force_neighbors(positions, query, r, extent if periodic else None)
        assert got == want, f"trial {trial}: bucket search != brute force"
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"took {elapsed:.2f}s (budget 5s)"
    report(f"continuous neighbors == brute force on 1000 random configs, {elapsed:.2f}s")


def logistic_rhs(t, y, params):
    s = y[0]
    return [s * (1.0 - s / 120.0) - params.get("h", 0.0)]


def test_ode_accuracy_convergence_and_efficiency():
    # adaptive accuracy on the logistic problem
    traj = integrate_adaptive(OdeProblem(logistic_rhs, 0, 10, [10.0]),
                              IntegratorConfig(abs_tol=1e-8, rel_tol=1e-8))
    closed = logistic_closed_form(10, 10, 120)
    assert abs(traj.y_final[0] - closed) < 1e-6

    # Euler first-order convergence on y' = y
    def euler_err(dt):
        t = integrate_euler(OdeProblem(lambda t, y, p: [y[0]], 0, 1, [1.0]), dt)
        return abs(t.y_final[0] - math.e)

    ratio = euler_err(0.05) / euler_err(0.025)
    assert 1.8 <= ratio <= 2.2, f"convergence ratio {ratio:.3f}"

    # adaptive strictly cheaper than equal-accuracy Euler (evaluation counts)
    adaptive = integrate_adaptive(OdeProblem(logistic_rhs, 0, 10, [10.0]),
                                  IntegratorConfig(abs_tol=1e-6, rel_tol=1e-6))
    target = abs(adaptive.y_final[0] - closed)
    dt = 0.5
    while True:
        euler = integrate_euler(OdeProblem(logistic_rhs, 0, 10, [10.0]), dt)
        err = abs(euler.y_final[0] - closed)
        if err <= target or euler.nfev > adaptive.nfev:
            break
        dt /= 2
    assert euler.nfev > adaptive.nfev, \
        f"euler reached {err:.2e} with {euler.nfev} evals vs adaptive {adaptive.nfev}"

    # hybrid fishery: naive Euler(dt=1) vs adaptive trajectories diverge
    euler_traj = fishery_run({"mode": "euler_dt1"}, years=50)
    adaptive_traj = fishery_run({"mode": "adaptive"}, years=50)
    gap = float(np.mean(np.abs(np.array(euler_traj) - np.array(adaptive_traj))))
    assert gap > 5.0, f"mean euler-vs-adaptive gap {gap:.2f}"
    report(f"ode accuracy/convergence/efficiency (ratio {ratio:.2f}, "
           f"adaptive {adaptive.nfev} evals, fishery gap {gap:.1f})")


def test_checkpoint_trajectory_identity(tmp_path):
    from .test_persist import models_equal

    for name in ("schelling", "flocking", "wolfsheep", "forestfire", "fishery"):
        spec = get_model(name)
        straight = spec.build(seed=2025)
        step(straight, spec.agent_step, spec.model_step, 10)
        path = tmp_path / f"{name}.abmck"
        save_checkpoint(straight, str(path))
        resumed = load_checkpoint(str(path))
        step(straight, spec.agent_step, spec.model_step, 10)
        step(resumed, spec.agent_step, spec.model_step, 10)
        assert models_equal(straight, resumed), f"{name} diverged after restore"
    report("checkpoint trajectory identity across all 5 reference models")


def test_ensemble_byte_determinism():
    spec = get_model("schelling")
    scan = ScanSpec(parameters={"min_to_be_happy": list(range(9))},
                    steps=100, replicates=5, base_seed=99,
                    adata=[("mood", sum)], mdata=["min_to_be_happy"])
    serial = paramscan(scan, spec.scan_factory(), spec.agent_step, workers=1)
    parallel = paramscan(scan, spec.scan_factory(), spec.agent_step, workers=8)
    assert csv_bytes(serial) == csv_bytes(parallel)
    assert serial.nrows == 9 * 5 * 101
    report("paramscan workers {1,8} byte-identical merged CSV")


def sphere(params, seed):
    return sum(v * v for v in params.values())


def test_optimizer_sphere_and_schelling_tuning():
    for seed in range(10):
        spec = OptimizeSpec(bounds={"x": (-5, 5), "y": (-5, 5), "z": (-5, 5)},
                            cost=sphere, budget=4000, population=20, seed=seed)
        _, cost, _ = optimize(spec)
        assert cost < 1e-3, f"seed {seed}: sphere cost {cost:.2e}"

    replicate_seeds = [11, 22, 33]
    cache: dict[int, float] = {}

    def averaged(setting: int) -> float:
        # the tuned parameter is discrete, so cost values are memoizable
        if setting not in cache:
            params = {"min_to_be_happy": setting, "dims": (10, 10), "density": 0.7}
            cache[setting] = sum(steps_to_90pct_happy(params, s, cap=100)
                                 for s in replicate_seeds) / len(replicate_seeds)
        return cache[setting]

    exhaustive = {k: averaged(k) for k in range(9)}
    scan_minimum = min(exhaustive.values())
    argmin_set = {k for k, v in exhaustive.items() if v == scan_minimum}

    de = OptimizeSpec(bounds={"min_to_be_happy": (0.0, 8.999)},
                      cost=lambda p, s: averaged(int(p["min_to_be_happy"])),
                      budget=120, population=10, seed=17)
    best, best_cost, _ = optimize(de)
    assert int(best["min_to_be_happy"]) in argmin_set
    assert best_cost == scan_minimum
    report(f"optimizer: sphere < 1e-3 on 10/10 seeds; "
           f"schelling best {int(best['min_to_be_happy'])} in exhaustive argmin set "
           f"{sorted(argmin_set)}")


def test_performance_gates():
    lines = []
    for name, params, steps in (("schelling", {}, 100), ("flocking", {}, 100),
                                ("wolfsheep", {}, 500), ("forestfire", {}, None)):
        record = run_benchmark(name, params, steps)
        budget = SLACK * TIME_GATES[name]
        assert record["seconds"] < budget, \
            f"{name}: {record['seconds']:.3f}s over {budget:.3f}s gate"
        lines.append(f"{name} {record['seconds'] * 1000:.0f}ms")
    report("performance gates (3x slack): " + ", ".join(lines))


def test_space_contract_pluggability():
    from .ring_space import RingSpace
    from .test_space import SETUPS, test_space_contract_conformance

    for name in SETUPS:
        test_space_contract_conformance(name)
    ring_lines = len(inspect.getsource(RingSpace).splitlines())
    assert ring_lines <= 100, f"ring space is {ring_lines} lines"
    report(f"space contract battery on grid/continuous/graph/ring "
           f"(ring: {ring_lines} lines)")


# --- secondary component criteria (server side; the browser side re-runs
# --- these through the frontend's own test suite on the same fixture) ---

def test_secondary_session_replay_and_schema(tmp_path):
    import json
    import pathlib

    import jsonschema

    from agentsim.serve import headless_replay, load_protocol_schema
    from .test_serve import SCRIPT, run_scripted_session
    from fastapi.testclient import TestClient
    from agentsim.serve import create_app

    with TestClient(create_app()) as client:
        messages = run_scripted_session(client, seed=42)
    validator = jsonschema.Draft7Validator(load_protocol_schema())
    for message in messages:
        validator.validate(message)  # 100% of exchanged messages

    oracle = headless_replay("schelling", {}, 42, SCRIPT)
    live = [(m["label"], m["step"], m["value"]) for m in messages
            if m["type"] == "series"]
    want = [(p["label"], p["step"], p["value"]) for p in oracle["series"]]
    assert live == want
    markers = [m["step"] for m in messages if m["type"] == "reset_marker"]
    assert markers == oracle["reset_steps"] == [15, 23]

    # the checked-in frontend fixture must match a fresh recording
    fixture_path = pathlib.Path(__file__).resolve().parent.parent / \
        "frontend" / "fixtures" / "session_fixture.json"
    if fixture_path.exists():
        fixture = json.loads(fixture_path.read_text())
        assert fixture["messages"] == messages, "stale frontend fixture; regenerate"
        assert fixture["oracle"]["reset_steps"] == oracle["reset_steps"]
    report("scripted session == headless replay oracle; all messages schema-valid")
