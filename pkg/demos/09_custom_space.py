"""Plugging in a new space type by writing five methods.

Any object with register_agent / unregister_agent / update_position /
neighbor_ids / random_position joins the engine like the built-in spaces.
Here: a one-dimensional ring where distance is hop count either way
around.  Agents diffuse and count their neighbors.
"""

from agentsim import Agent, create_model, step
from agentsim.space import Space


class RingSpace(Space):
    """n positions on a circle; neighbors within min(|i-j|, n-|i-j|) <= r."""

    def __init__(self, n):
        self.n = n
        self.slots = {}

    def register_agent(self, agent_id, pos):
        self.slots.setdefault(pos, set()).add(agent_id)

    def unregister_agent(self, agent_id, pos):
        self.slots[pos].discard(agent_id)

    def update_position(self, agent_id, old, new):
        self.unregister_agent(agent_id, old)
        self.register_agent(agent_id, new)

    def neighbor_ids(self, pos, r):
        out = []
        for delta in range(-int(r), int(r) + 1):
            out.extend(sorted(self.slots.get((pos + delta) % self.n, ())))
        return out

    def random_position(self, rng):
        return rng.next_below(self.n)

    def valid_position(self, pos):
        return 0 <= pos < self.n

    def describe(self):
        return f"RingSpace with {self.n} positions"


class Drifter(Agent):
    __slots__ = ("crowding",)
    kind = "drifter"
    prop_defaults = {"crowding": 0}


def drift(agent, model):
    direction = 1 if model.rng.bernoulli(0.5) else -1
    model.move_agent(agent, (agent.pos + direction) % model.space.n)
    agent.crowding = sum(1 for _ in model.nearby_agents(agent, 2))


model = create_model(RingSpace(24), seed=5, name="ring-drift")
for _ in range(12):
    model.add_agent_random(Drifter)
print(model.summary())

step(model, drift, n=30)
occupancy = {pos: len(ids) for pos, ids in sorted(model.space.slots.items()) if ids}
print("occupancy:", occupancy)
print("mean crowding within 2 hops:",
      sum(a.crowding for a in model.agents.values()) / model.n_agents)
