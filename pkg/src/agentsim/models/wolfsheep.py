"""Predator-prey on a periodic grid with regrowing grass."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Agent, Model
from ..schedule import Random
from ..space import GridSpace
from .registry import ModelSpec, register


@dataclass
class WolfSheepConfig:
    dims: tuple = (25, 25)
    n_sheep: int = 100
    n_wolves: int = 20
    sheep_reproduce: float = 0.05
    wolf_reproduce: float = 0.05
    sheep_gain: int = 5
    wolf_gain: int = 20
    grass_regrowth_time: int = 30

    def __post_init__(self):
        if not (0 <= self.sheep_reproduce <= 1 and 0 <= self.wolf_reproduce <= 1):
            raise ValueError("reproduction probabilities must be in [0, 1]")
        if self.grass_regrowth_time < 1:
            raise ValueError("grass_regrowth_time must be >= 1")


class Sheep(Agent):
    __slots__ = ("energy",)
    kind = "sheep"


class Wolf(Agent):
    __slots__ = ("energy",)
    kind = "wolf"


def make_wolfsheep(params: dict, seed: int) -> Model:
    cfg = WolfSheepConfig(**params)
    space = GridSpace(cfg.dims, periodic=True, metric="chebyshev")
    model = Model(space, properties={
        "sheep_reproduce": cfg.sheep_reproduce,
        "wolf_reproduce": cfg.wolf_reproduce,
        "sheep_gain": cfg.sheep_gain,
        "wolf_gain": cfg.wolf_gain,
        "grass_regrowth_time": cfg.grass_regrowth_time,
    }, scheduler=Random(), seed=seed, name="wolfsheep")
    rng = model.rng
    for _ in range(cfg.n_sheep):
        energy = float(rng.next_below(2 * cfg.sheep_gain) + 1)
        model.add_agent_random(Sheep, energy=energy)
    for _ in range(cfg.n_wolves):
        energy = float(rng.next_below(2 * cfg.wolf_gain) + 1)
        model.add_agent_random(Wolf, energy=energy)
    # Grass state lives in model properties; cells drawn row-major.
    grown = np.empty(cfg.dims, dtype=bool)
    countdown = np.full(cfg.dims, cfg.grass_regrowth_time, dtype=np.int64)
    for pos in space.all_positions():
        grown[pos] = rng.bernoulli(0.5)
        if not grown[pos]:
            countdown[pos] = rng.next_below(cfg.grass_regrowth_time) + 1
    model["fully_grown"] = grown
    model["countdown"] = countdown
    return model


def wolfsheep_step(agent, model):
    """Move one cell, pay one energy, eat, maybe reproduce, die if drained."""
    rng = model.rng
    targets = list(model.nearby_positions(agent.pos, 1))
    model.move_agent(agent, targets[rng.next_below(len(targets))])
    agent.energy -= 1.0
    if agent.kind == "sheep":
        grown = model["fully_grown"]
        if grown[agent.pos]:
            agent.energy += model["sheep_gain"]
            grown[agent.pos] = False
            model["countdown"][agent.pos] = model["grass_regrowth_time"]
        reproduce = model["sheep_reproduce"]
    else:
        prey = [i for i in model.space.ids_at(agent.pos)
                if i != agent.id and model.agents[i].kind == "sheep"]
        if prey:
            victim = prey[rng.next_below(len(prey))]
            model.kill_agent(victim)
            agent.energy += model["wolf_gain"]
        reproduce = model["wolf_reproduce"]
    if agent.energy <= 0:
        model.kill_agent(agent)
        return
    if rng.bernoulli(reproduce):
        agent.energy /= 2.0
        model.add_agent(type(agent), agent.pos, energy=agent.energy)


def wolfsheep_model_step(model):
    grown = model["fully_grown"]
    countdown = model["countdown"]
    bare = ~grown
    countdown[bare] -= 1
    ready = bare & (countdown <= 0)
    grown[ready] = True
    countdown[ready] = model["grass_regrowth_time"]


def sheep_count(model) -> int:
    return sum(1 for a in model.agents.values() if a.kind == "sheep")


def wolf_count(model) -> int:
    return sum(1 for a in model.agents.values() if a.kind == "wolf")


def grass_fraction(model) -> float:
    grown = model["fully_grown"]
    return float(grown.sum()) / grown.size


def _heat(model):
    grown = model["fully_grown"]
    return grown.shape, [1.0 if v else 0.0 for v in grown.ravel()]


SPEC = register(ModelSpec(
    name="wolfsheep",
    factory=make_wolfsheep,
    agent_step=wolfsheep_step,
    model_step=wolfsheep_model_step,
    defaults={"dims": (25, 25), "n_sheep": 100, "n_wolves": 20,
              "sheep_reproduce": 0.05, "wolf_reproduce": 0.05,
              "sheep_gain": 5, "wolf_gain": 20, "grass_regrowth_time": 30},
    agent_types=(Sheep, Wolf),
    scheduler_factory=Random,
    param_ranges={
        "sheep_reproduce": {"type": "float", "min": 0.0, "max": 1.0, "step": 0.01},
        "wolf_reproduce": {"type": "float", "min": 0.0, "max": 1.0, "step": 0.01},
        "grass_regrowth_time": {"type": "int", "min": 1, "max": 100, "step": 1},
    },
    adata=[],
    mdata=[],
    series=[("sheep", sheep_count), ("wolves", wolf_count),
            ("grass", grass_fraction)],
    color=lambda a: "#8d99ae" if a.kind == "wolf" else "#f4f1de",
    marker=lambda a: "triangle" if a.kind == "wolf" else "circle",
    size=lambda a: 5.0 if a.kind == "wolf" else 4.0,
    heat=_heat,
    default_steps=500,
))
