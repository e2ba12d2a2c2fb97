"""Fire percolation across a tree grid: a cellular automaton with no agents.

Cells are a model property array: 0 empty, 1 green, 2 burning, 3 burnt.
Each cell is green with probability ``density``; the leftmost column's green
cells start burning.  Per step every burning cell burns out and ignites
green cells in its four orthogonally adjacent cells; the run ends when
nothing burns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Model
from ..schedule import Fastest
from ..space import GridSpace
from .registry import ModelSpec, register

EMPTY, GREEN, BURNING, BURNT = 0, 1, 2, 3


@dataclass
class ForestFireConfig:
    dims: tuple = (100, 100)
    density: float = 0.7

    def __post_init__(self):
        if not 0 <= self.density <= 1:
            raise ValueError("density must be in [0, 1]")


def make_forestfire(params: dict, seed: int) -> Model:
    cfg = ForestFireConfig(**params)
    space = GridSpace(cfg.dims, periodic=False)
    model = Model(space, properties={"density": cfg.density},
                  scheduler=Fastest(), seed=seed, name="forestfire")
    cells = np.full(cfg.dims, EMPTY, dtype=np.int64)
    rng = model.rng
    for pos in space.all_positions():
        if rng.bernoulli(cfg.density):
            cells[pos] = GREEN
    cells[0, :][cells[0, :] == GREEN] = BURNING
    model["cells"] = cells
    return model


def forestfire_model_step(model):
    cells = model["cells"]
    burning = cells == BURNING
    if not burning.any():
        return
    cells[burning] = BURNT
    adjacent = np.zeros_like(burning)
    adjacent[1:, :] |= burning[:-1, :]
    adjacent[:-1, :] |= burning[1:, :]
    adjacent[:, 1:] |= burning[:, :-1]
    adjacent[:, :-1] |= burning[:, 1:]
    cells[(cells == GREEN) & adjacent] = BURNING


def is_burning(model) -> bool:
    return bool((model["cells"] == BURNING).any())


def done(model, s) -> bool:
    return not is_burning(model)


def burnt_tree_fraction(model) -> float:
    """Burnt (or still burning) cells as a fraction of all trees."""
    cells = model["cells"]
    trees = (cells != EMPTY).sum()
    if trees == 0:
        return 0.0
    return float(((cells == BURNT) | (cells == BURNING)).sum()) / float(trees)


def _heat(model):
    cells = model["cells"]
    return cells.shape, [float(v) for v in cells.ravel()]


SPEC = register(ModelSpec(
    name="forestfire",
    factory=make_forestfire,
    agent_step=None,
    model_step=forestfire_model_step,
    defaults={"dims": (100, 100), "density": 0.7},
    agent_types=(),
    param_ranges={"density": {"type": "float", "min": 0.0, "max": 1.0, "step": 0.05}},
    adata=[],
    mdata=[],
    series=[("burnt fraction", burnt_tree_fraction)],
    heat=_heat,
    terminator=done,
    default_steps=250,
))
