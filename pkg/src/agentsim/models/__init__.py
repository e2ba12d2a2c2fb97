"""Bundled reference models, each registered under a stable name."""

from .registry import ModelSpec, get_model, model_names, register
from . import schelling, flocking, wolfsheep, forestfire, fishery  # noqa: F401

__all__ = ["ModelSpec", "get_model", "model_names", "register",
           "schelling", "flocking", "wolfsheep", "forestfire", "fishery"]
