"""Checkpoints: full model save/restore with bit-exact future evolution.

The format is a canonical JSON object tree (sorted keys, agents ordered by
id, floats in shortest round-trip decimal) written to ``.abmck`` files.
Values are tagged with a closed set of types: int / real / bool / str
scalars plus homogeneous N-dimensional grids of them (numpy arrays).
Restoring a checkpoint reproduces the registry, the space index, and the
rng state, so the restored model's future is identical to the original's.
"""

from __future__ import annotations

import json

import numpy as np

from .core import Model, prop_fields
from .rng import Rng
from .space import ContinuousSpace, GraphSpace, GridSpace

FORMAT_VERSION = 1
FILE_EXTENSION = ".abmck"


class UnsupportedVersion(Exception):
    """Checkpoint written by an incompatible format version."""


class CorruptCheckpoint(Exception):
    """Checkpoint violates the schema; the message carries the field path."""


def _tag_value(value, path):
    if isinstance(value, (bool, np.bool_)):
        return {"t": "bool", "v": bool(value)}
    if isinstance(value, (int, np.integer)):
        return {"t": "int", "v": int(value)}
    if isinstance(value, (float, np.floating)):
        return {"t": "real", "v": float(value)}
    if isinstance(value, str):
        return {"t": "str", "v": value}
    if isinstance(value, np.ndarray):
        kind = {"b": "bool", "i": "int", "u": "int", "f": "real"}.get(value.dtype.kind)
        if kind is None:
            raise CorruptCheckpoint(f"{path}: unsupported array dtype {value.dtype}")
        flat = value.ravel().tolist()
        return {"t": "grid", "dtype": kind, "dims": list(value.shape), "v": flat}
    if isinstance(value, tuple) and all(isinstance(v, (int, float)) for v in value):
        return {"t": "tuple", "v": [_tag_value(v, path) for v in value]}
    raise CorruptCheckpoint(f"{path}: value of type {type(value).__name__} "
                            "has no tagged-value form")


def _untag_value(tagged, path):
    if not isinstance(tagged, dict) or "t" not in tagged:
        raise CorruptCheckpoint(f"{path}: expected a tagged value")
    t = tagged["t"]
    if t == "bool":
        return bool(tagged["v"])
    if t == "int":
        return int(tagged["v"])
    if t == "real":
        return float(tagged["v"])
    if t == "str":
        return str(tagged["v"])
    if t == "tuple":
        return tuple(_untag_value(v, path) for v in tagged["v"])
    if t == "grid":
        dtype = {"bool": bool, "int": np.int64, "real": float}[tagged["dtype"]]
        arr = np.array(tagged["v"], dtype=dtype)
        return arr.reshape(tagged["dims"])
    raise CorruptCheckpoint(f"{path}: unknown tag {t!r}")


def _space_doc(space):
    if isinstance(space, GridSpace):
        return {"type": "grid", "dims": list(space.dims),
                "periodic": space.periodic, "metric": space.metric}
    if isinstance(space, ContinuousSpace):
        return {"type": "continuous", "extent": list(space.extent),
                "periodic": space.periodic, "spacing": space.spacing}
    if isinstance(space, GraphSpace):
        return {"type": "graph", "nodes": sorted(space.nodes),
                "edges": space.edges()}
    raise CorruptCheckpoint(f"space {type(space).__name__} is not checkpointable")


def _space_from_doc(doc):
    kind = doc.get("type")
    if kind == "grid":
        return GridSpace(tuple(doc["dims"]), periodic=doc["periodic"],
                         metric=doc["metric"])
    if kind == "continuous":
        return ContinuousSpace(tuple(doc["extent"]), periodic=doc["periodic"],
                               spacing=doc["spacing"])
    if kind == "graph":
        space = GraphSpace()
        for node in doc["nodes"]:
            space.add_node(node)
        for src, dst in doc["edges"]:
            space.add_edge(src, dst)
        return space
    raise CorruptCheckpoint(f"space.type: unknown space type {kind!r}")


def _pos_doc(pos):
    return list(pos) if isinstance(pos, tuple) else pos


def _pos_from_doc(doc, space):
    if isinstance(space, GridSpace):
        return tuple(int(c) for c in doc)
    if isinstance(space, ContinuousSpace):
        return tuple(float(c) for c in doc)
    return doc


def checkpoint_doc(model: Model) -> dict:
    """The checkpoint object tree for a quiescent model."""
    agents = []
    for aid in sorted(model.agents):
        agent = model.agents[aid]
        props = {name: _tag_value(getattr(agent, name), f"agents[{aid}].props.{name}")
                 for name in prop_fields(type(agent))}
        agents.append({"id": aid, "kind": agent.kind,
                       "pos": _pos_doc(agent.pos), "props": props})
    return {
        "format_version": FORMAT_VERSION,
        "model": model.name,
        "step_count": model.step_count,
        "next_id": model._next_id,
        "properties": {k: _tag_value(v, f"properties.{k}")
                       for k, v in model.properties.items()},
        "space": _space_doc(model.space),
        "agents": agents,
        "rng": list(model.rng.state_words()),
    }


def save_checkpoint(model: Model, sink) -> None:
    """Write the canonical checkpoint (path or text file object)."""
    text = json.dumps(checkpoint_doc(model), sort_keys=True, indent=2)
    if isinstance(sink, (str, bytes)):
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    else:
        sink.write(text)
        sink.write("\n")


def _require(doc, key, types, path):
    if key not in doc:
        raise CorruptCheckpoint(f"{path}.{key}: missing")
    if not isinstance(doc[key], types):
        raise CorruptCheckpoint(
            f"{path}.{key}: expected {getattr(types, '__name__', types)}, "
            f"got {type(doc[key]).__name__}")
    return doc[key]


def load_checkpoint(source, agent_types=None, scheduler=None) -> Model:
    """Rebuild a model whose subsequent evolution matches the original.

    ``agent_types`` maps kind tags to agent classes; when omitted, the model
    name is looked up in the bundled model registry.  ``scheduler`` likewise
    defaults to the registered model's scheduler (checkpoints do not store
    code).
    """
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.load(source)
    version = _require(doc, "format_version", int, "$")
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(f"format_version {version}; supported: {FORMAT_VERSION}")
    name = _require(doc, "model", str, "$")
    _require(doc, "agents", list, "$")
    _require(doc, "properties", dict, "$")
    _require(doc, "space", dict, "$")
    rng_words = _require(doc, "rng", list, "$")
    if len(rng_words) != 4 or not all(isinstance(w, int) for w in rng_words):
        raise CorruptCheckpoint("$.rng: expected four integer state words")

    if agent_types is None or scheduler is None:
        try:
            from .models import get_model
            spec = get_model(name)
        except KeyError:
            spec = None
        if agent_types is None:
            if spec is None and doc["agents"]:
                raise CorruptCheckpoint(
                    f"$.model: '{name}' is not a registered model; "
                    "pass agent_types explicitly")
            agent_types = {cls.kind: cls for cls in (spec.agent_types if spec else ())}
        if scheduler is None and spec is not None:
            scheduler = spec.scheduler_factory()

    space = _space_from_doc(doc["space"])
    model = Model(space, scheduler=scheduler, seed=0, name=name)
    model.properties = {k: _untag_value(v, f"properties.{k}")
                        for k, v in doc["properties"].items()}
    model.step_count = _require(doc, "step_count", int, "$")
    for i, entry in enumerate(doc["agents"]):
        path = f"agents[{i}]"
        aid = _require(entry, "id", int, path)
        kind = _require(entry, "kind", str, path)
        cls = agent_types.get(kind)
        if cls is None:
            raise CorruptCheckpoint(f"{path}.kind: no agent class for '{kind}'")
        if "pos" not in entry:
            raise CorruptCheckpoint(f"{path}.pos: missing")
        pos = _pos_from_doc(entry["pos"], space)
        props = {k: _untag_value(v, f"{path}.props.{k}")
                 for k, v in _require(entry, "props", dict, path).items()}
        agent = cls(aid, pos, **props)
        model.agents[aid] = agent
        space.register_agent(aid, pos)
    model._next_id = _require(doc, "next_id", int, "$")
    model.rng = Rng.from_words(rng_words)
    for cls in agent_types.values():
        model.agent_types.setdefault(cls.kind, cls)
    return model
