"""Segregation on a grid: agents move until enough neighbors match their group."""

from __future__ import annotations

from dataclasses import dataclass

from ..collect import maximum
from ..core import Agent, Model
from ..schedule import Fastest
from ..space import GridSpace
from .registry import ModelSpec, register


@dataclass
class SchellingConfig:
    dims: tuple = (20, 20)
    density: float = 0.8
    min_to_be_happy: int = 3

    def __post_init__(self):
        cells = 1
        for d in self.dims:
            cells *= d
        if not 0 < self.density <= 1 or self.density * cells < 1:
            raise ValueError("density must be in (0, 1] and yield at least one agent")
        if not 0 <= self.min_to_be_happy <= 8:
            raise ValueError("min_to_be_happy must be in [0, 8]")


class SchellingAgent(Agent):
    __slots__ = ("mood", "group")
    kind = "schelling"
    prop_defaults = {"mood": False}


def make_schelling(params: dict, seed: int) -> Model:
    cfg = SchellingConfig(**params)
    space = GridSpace(cfg.dims, periodic=False, metric="chebyshev")
    model = Model(space, properties={"min_to_be_happy": cfg.min_to_be_happy},
                  scheduler=Fastest(), seed=seed, name="schelling")
    n = int(round(cfg.density * space.capacity))
    for i in range(n):
        model.add_agent_single(SchellingAgent, mood=False, group=i % 2)
    return model


def schelling_step(agent, model):
    if agent.mood:
        return
    same = 0
    for other in model.nearby_agents(agent, 1):
        if other.group == agent.group:
            same += 1
    if same >= model["min_to_be_happy"]:
        agent.mood = True
    else:
        model.move_agent_single(agent)


def happy_count(model) -> int:
    return sum(1 for a in model.agents.values() if a.mood)


def mean_x(model) -> float:
    if not model.agents:
        return 0.0
    return sum(a.pos[0] for a in model.agents.values()) / len(model.agents)


def x(agent) -> int:
    return agent.pos[0]


def steps_to_90pct_happy(params: dict, seed: int, cap: int = 200) -> float:
    """Steps until 90% of agents are happy (capped); the tuning-demo cost."""
    from ..core import step

    model = make_schelling({**SPEC.defaults, **params}, seed)
    target = 0.9 * model.n_agents
    for s in range(cap):
        if happy_count(model) >= target:
            return float(s)
        step(model, schelling_step)
    return float(cap)


SPEC = register(ModelSpec(
    name="schelling",
    factory=make_schelling,
    agent_step=schelling_step,
    model_step=None,
    defaults={"dims": (20, 20), "density": 0.8, "min_to_be_happy": 3},
    agent_types=(SchellingAgent,),
    param_ranges={"min_to_be_happy": {"type": "int", "min": 0, "max": 8, "step": 1}},
    adata=[("mood", sum), (x, maximum)],
    mdata=[],
    series=[("happy", happy_count), ("avg. x", mean_x)],
    color=lambda a: "#0000ff" if a.group == 1 else "#ffa500",
    marker=lambda a: "circle" if a.group == 1 else "rect",
    size=lambda a: 4.0,
    default_steps=100,
    costs={"steps_to_90pct_happy": steps_to_90pct_happy},
))
