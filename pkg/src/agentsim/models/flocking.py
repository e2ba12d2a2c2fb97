"""Flocking in periodic continuous space: cohere, separate, match heading."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core import Agent, Model
from ..schedule import Fastest
from ..space import ContinuousSpace
from .registry import ModelSpec, register


@dataclass
class FlockingConfig:
    n_birds: int = 300
    extent: tuple = (100.0, 100.0)
    speed: float = 1.0
    visual_distance: float = 5.0
    separation: float = 2.0
    cohere_factor: float = 0.03
    match_factor: float = 0.05
    separate_factor: float = 0.25

    def __post_init__(self):
        values = (self.n_birds, self.speed, self.visual_distance, self.separation,
                  self.cohere_factor, self.match_factor, self.separate_factor)
        if any(v <= 0 for v in values) or any(e <= 0 for e in self.extent):
            raise ValueError("all flocking parameters must be positive")
        if self.separation >= self.visual_distance:
            raise ValueError("separation must be smaller than visual_distance")


class Bird(Agent):
    __slots__ = ("vx", "vy")
    kind = "bird"


def make_flocking(params: dict, seed: int) -> Model:
    cfg = FlockingConfig(**params)
    space = ContinuousSpace(cfg.extent, periodic=True, spacing=cfg.visual_distance)
    model = Model(space, properties={
        "speed": cfg.speed,
        "visual_distance": cfg.visual_distance,
        "separation": cfg.separation,
        "cohere_factor": cfg.cohere_factor,
        "match_factor": cfg.match_factor,
        "separate_factor": cfg.separate_factor,
    }, scheduler=Fastest(), seed=seed, name="flocking")
    for _ in range(cfg.n_birds):
        pos = space.random_position(model.rng)
        angle = model.rng.next_float() * 2 * math.pi
        model.add_agent(Bird, pos,
                        vx=math.cos(angle) * cfg.speed,
                        vy=math.sin(angle) * cfg.speed)
    return model


def flocking_step(agent, model):
    """One bird update.

    With neighbors within visual range the velocity gains three mean-field
    terms: toward the neighbor centroid (cohere), away from neighbors closer
    than the separation distance (separate), and toward the mean neighbor
    velocity (match).  The result is renormalized to the configured speed,
    then the bird advances one unit of time and wraps.
    """
    space = model.space
    props = model.properties
    pos = agent.pos
    visual = props["visual_distance"]
    vx, vy = agent.vx, agent.vy
    n = 0
    cx = cy = sx = sy = mx = my = 0.0
    sep2 = props["separation"] ** 2
    agents = model.agents
    own = agent.id
    for nid, dx, dy, d2 in space.neighbors_with_offsets(pos, visual):
        if nid == own:
            continue
        other = agents[nid]
        n += 1
        cx += dx
        cy += dy
        if d2 <= sep2:
            sx -= dx
            sy -= dy
        mx += other.vx
        my += other.vy
    if n:
        inv = 1.0 / n
        vx += (cx * inv) * props["cohere_factor"] + (sx * inv) * props["separate_factor"] \
            + (mx * inv) * props["match_factor"]
        vy += (cy * inv) * props["cohere_factor"] + (sy * inv) * props["separate_factor"] \
            + (my * inv) * props["match_factor"]
        norm = math.sqrt(vx * vx + vy * vy)
        if norm > 0:
            scale = props["speed"] / norm
            agent.vx = vx * scale
            agent.vy = vy * scale
    agent.pos = space.move(agent.id, (pos[0] + agent.vx, pos[1] + agent.vy))


def mean_speed(model) -> float:
    if not model.agents:
        return 0.0
    total = sum(math.hypot(a.vx, a.vy) for a in model.agents.values())
    return total / len(model.agents)


def heading_alignment(model) -> float:
    """Mean resultant length of heading vectors: 1 when fully aligned."""
    if not model.agents:
        return 0.0
    hx = hy = 0.0
    for a in model.agents.values():
        norm = math.hypot(a.vx, a.vy)
        if norm > 0:
            hx += a.vx / norm
            hy += a.vy / norm
    return math.hypot(hx, hy) / len(model.agents)


SPEC = register(ModelSpec(
    name="flocking",
    factory=make_flocking,
    agent_step=flocking_step,
    model_step=None,
    defaults={"n_birds": 300, "extent": (100.0, 100.0), "speed": 1.0,
              "visual_distance": 5.0, "separation": 2.0,
              "cohere_factor": 0.03, "match_factor": 0.05, "separate_factor": 0.25},
    agent_types=(Bird,),
    param_ranges={
        "cohere_factor": {"type": "float", "min": 0.01, "max": 0.2, "step": 0.01},
        "match_factor": {"type": "float", "min": 0.01, "max": 0.2, "step": 0.01},
        "separate_factor": {"type": "float", "min": 0.05, "max": 1.0, "step": 0.05},
    },
    adata=[],
    mdata=[],
    series=[("alignment", heading_alignment)],
    color=lambda a: "#118ab2",
    marker=lambda a: "triangle",
    size=lambda a: 3.0,
    default_steps=100,
))
