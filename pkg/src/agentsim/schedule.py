"""Activation-order policies, re-evaluated at the start of every step.

Every policy returns a list of ids that are alive at schedule time, each at
most once.  ``Fastest`` is ascending-id (insertion) order, the cheapest
well-defined order and the default.
"""

from __future__ import annotations


class Fastest:
    """Ascending-id order (ids are issued monotonically, so this is as-added)."""

    def order(self, model) -> list[int]:
        return list(model.agents)

    def describe(self) -> str:
        return "fastest"


class Random:
    """Fisher-Yates shuffle of the alive ids using the model rng."""

    def order(self, model) -> list[int]:
        ids = list(model.agents)
        model.rng.shuffle(ids)
        return ids

    def describe(self) -> str:
        return "random"


class ByProperty:
    """Stable sort by an agent field; ties keep ascending-id order."""

    def __init__(self, field: str, ascending: bool = True):
        self.field = field
        self.ascending = ascending

    def order(self, model) -> list[int]:
        field = self.field
        agents = model.agents
        return sorted(agents, key=lambda i: getattr(agents[i], field),
                      reverse=not self.ascending)

    def describe(self) -> str:
        direction = "ascending" if self.ascending else "descending"
        return f"by_property({self.field}, {direction})"


class ByType:
    """Kinds in the given order; ids within a kind shuffled iff requested.

    Kinds not listed are appended afterwards in first-seen order.
    """

    def __init__(self, kinds, shuffle_within: bool = False):
        self.kinds = tuple(kinds)
        self.shuffle_within = shuffle_within

    def order(self, model) -> list[int]:
        groups: dict[str, list[int]] = {k: [] for k in self.kinds}
        for aid, agent in model.agents.items():
            groups.setdefault(agent.kind, []).append(aid)
        out = []
        for kind, ids in groups.items():
            if self.shuffle_within:
                model.rng.shuffle(ids)
            out.extend(ids)
        return out

    def describe(self) -> str:
        return f"by_type({', '.join(self.kinds)})"


class Filtered:
    """A base policy's order with non-matching agents removed."""

    def __init__(self, predicate, base=None):
        self.predicate = predicate
        self.base = base if base is not None else Fastest()

    def order(self, model) -> list[int]:
        agents = model.agents
        predicate = self.predicate
        return [i for i in self.base.order(model) if predicate(agents[i])]

    def describe(self) -> str:
        return f"filtered({self.base.describe()})"


class Custom:
    """User function model -> id sequence; sanity-checked in debug mode."""

    def __init__(self, fn):
        self.fn = fn

    def order(self, model) -> list[int]:
        ids = list(self.fn(model))
        if __debug__:
            if len(set(ids)) != len(ids):
                raise ValueError("custom scheduler returned duplicate ids")
            dead = [i for i in ids if i not in model.agents]
            if dead:
                raise ValueError(f"custom scheduler returned dead ids {dead}")
        return ids

    def describe(self) -> str:
        return f"custom({getattr(self.fn, '__name__', 'fn')})"


def schedule(spec, model) -> list[int]:
    """Produce this step's activation order from a scheduler policy."""
    return spec.order(model)
