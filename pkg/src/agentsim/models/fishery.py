"""Managed fishery: discrete yearly agents coupled to continuous stock growth.

The stock follows logistic growth toward a carrying capacity of 120 minus a
harvest rate equal to the summed competence of the active fishers.  An
agency closes fishing while the stock sits below a threshold and reopens at
or above it.  Each model step advances the stock one year, either by a
single forward-Euler step (the naive discretization) or by the adaptive
integrator with the harvest held constant over the year.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import Agent, Model
from ..ode import Integrator, IntegratorConfig
from ..schedule import Fastest
from ..space import GraphSpace
from .registry import ModelSpec, register

CARRY_CAPACITY = 120.0


@dataclass
class FisheryConfig:
    n_fishers: int = 7
    competences: tuple = (2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0)
    stock_threshold: float = 60.0
    s0: float = 60.0
    mode: str = "euler_dt1"  # "euler_dt1" | "adaptive"

    def __post_init__(self):
        if not 0 < self.s0 <= CARRY_CAPACITY:
            raise ValueError("initial stock must be in (0, carry capacity]")
        if len(self.competences) != self.n_fishers:
            raise ValueError("one competence per fisher required")
        if any(c < 0 for c in self.competences):
            raise ValueError("competences must be non-negative")
        if self.mode not in ("euler_dt1", "adaptive"):
            raise ValueError(f"unknown mode {self.mode!r}")


class Fisher(Agent):
    __slots__ = ("competence",)
    kind = "fisher"


def stock_rate(t, y, params):
    s = max(float(y[0]), 0.0)
    return [s * (1.0 - s / CARRY_CAPACITY) - params["h"]]


def make_fishery(params: dict, seed: int) -> Model:
    cfg = FisheryConfig(**params)
    space = GraphSpace(n_nodes=1)
    model = Model(space, properties={
        "stock": float(cfg.s0),
        "stock_threshold": float(cfg.stock_threshold),
        "mode": cfg.mode,
        "open": True,
    }, scheduler=Fastest(), seed=seed, name="fishery")
    for competence in cfg.competences:
        model.add_agent(Fisher, 0, competence=float(competence))
    return model


def fishery_model_step(model):
    s = model["stock"]
    open_now = s >= model["stock_threshold"]
    model["open"] = open_now
    h = sum(a.competence for a in model.agents.values()) if open_now else 0.0
    if model["mode"] == "euler_dt1":
        s = s + s * (1.0 - s / CARRY_CAPACITY) - h
    else:
        stepper = Integrator(stock_rate, t=0.0, y=[s], params={"h": h},
                             config=IntegratorConfig(method="rk45",
                                                     abs_tol=1e-10, rel_tol=1e-10))
        s = float(stepper.step_to(1.0)[0])
    model["stock"] = max(float(s), 0.0)


def fishery_run(params: dict | None = None, years: int = 50, seed: int = 0) -> list[float]:
    """Stock trajectory (year 0 through ``years``) for a config."""
    from ..core import step

    model = make_fishery({**SPEC.defaults, **(params or {})}, seed)
    trajectory = [model["stock"]]
    for _ in range(years):
        step(model, None, fishery_model_step, 1)
        trajectory.append(model["stock"])
    return trajectory


def stock(model) -> float:
    return model["stock"]


SPEC = register(ModelSpec(
    name="fishery",
    factory=make_fishery,
    agent_step=None,
    model_step=fishery_model_step,
    defaults={"n_fishers": 7, "competences": (2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0),
              "stock_threshold": 60.0, "s0": 60.0, "mode": "adaptive"},
    agent_types=(Fisher,),
    param_ranges={
        "stock_threshold": {"type": "float", "min": 0.0, "max": 120.0, "step": 5.0},
    },
    adata=[],
    mdata=["stock"],
    series=[("stock", stock)],
    color=lambda a: "#2a9d8f",
    marker=lambda a: "circle",
    size=lambda a: 6.0,
    default_steps=50,
))
