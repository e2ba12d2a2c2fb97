"""Registry of runnable models: config + init + step functions by name."""

from __future__ import annotations

import inspect
from dataclasses import dataclass, field

from ..schedule import Fastest


@dataclass
class ModelSpec:
    """Everything the CLI, server, and ensembles need to run a model by name."""

    name: str
    factory: callable            # factory(params: dict, seed: int) -> Model
    agent_step: callable | None
    model_step: callable | None
    defaults: dict
    agent_types: tuple = ()
    scheduler_factory: callable = Fastest
    param_ranges: dict = field(default_factory=dict)
    adata: list = field(default_factory=list)
    mdata: list = field(default_factory=list)
    series: list = field(default_factory=list)   # (label, fn(model) -> value)
    color: callable | None = None                # agent -> "#rrggbb"
    marker: callable | None = None               # agent -> circle|rect|triangle
    size: callable | None = None                 # agent -> point size
    heat: callable | None = None                 # model -> (dims, flat values)
    terminator: callable | None = None           # (model, s) -> bool
    default_steps: int = 100
    costs: dict = field(default_factory=dict)    # name -> fn(params, seed) -> float

    def source_file(self) -> str:
        return inspect.getsourcefile(self.factory)

    def build(self, params: dict | None = None, seed: int = 0):
        return self.factory({**self.defaults, **(params or {})}, seed)

    def scan_factory(self) -> "RegistryFactory":
        return RegistryFactory(self.name)


class RegistryFactory:
    """Picklable default-merging factory for a registered model."""

    def __init__(self, name: str):
        self.name = name

    def __call__(self, params: dict, seed: int):
        return get_model(self.name).build(params, seed)


_REGISTRY: dict[str, ModelSpec] = {}


def register(spec: ModelSpec) -> ModelSpec:
    if spec.name in _REGISTRY:
        raise ValueError(f"model '{spec.name}' already registered")
    _REGISTRY[spec.name] = spec
    return spec


def get_model(name: str) -> ModelSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown model '{name}'; available: {', '.join(model_names())}"
        ) from None


def model_names() -> list[str]:
    return sorted(_REGISTRY)
