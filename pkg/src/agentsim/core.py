"""Model container and agent lifecycle.

A ``Model`` owns all currently alive agents, the space they live in,
model-level properties, a scheduler, and a private deterministic rng.
Ids are issued once and never reused; the agent registry and the space's
position index stay in bijection through every add/move/kill.
"""

from __future__ import annotations

from .rng import Rng
from .schedule import Fastest, schedule
from .space import NoEmptyPosition, Space


class UnknownAgent(KeyError):
    """Raised when an operation names an id that is not alive."""


class DegenerateWeights(ValueError):
    """Raised by weighted sampling when no agent has positive weight."""


class Agent:
    """Base agent: an ``id``, a ``pos``, and subclass-declared fields.

    Subclasses declare their model-specific fields via ``__slots__`` and may
    give defaults in ``prop_defaults``; the ``kind`` tag distinguishes agent
    types in mixed models and in checkpoints.
    """

    __slots__ = ("id", "pos")
    kind = "agent"
    prop_defaults: dict = {}

    def __init__(self, id, pos, **props):
        self.id = id
        self.pos = pos
        for name, value in self.prop_defaults.items():
            setattr(self, name, value)
        for name, value in props.items():
            setattr(self, name, value)

    def __repr__(self):
        props = ", ".join(f"{k}={getattr(self, k)!r}" for k in prop_fields(type(self)))
        extra = f", {props}" if props else ""
        return f"{type(self).__name__}(id={self.id}, pos={self.pos}{extra})"


def prop_fields(agent_cls) -> list[str]:
    """Declared property names of an agent class, base-to-derived order."""
    out = []
    for klass in reversed(agent_cls.__mro__):
        for name in klass.__dict__.get("__slots__", ()):
            if name not in ("id", "pos"):
                out.append(name)
    return out


def agent_props(agent) -> dict:
    """Snapshot of an agent's declared properties."""
    return {name: getattr(agent, name) for name in prop_fields(type(agent))}


class Model:
    """Container of alive agents + space + properties + scheduler + rng."""

    def __init__(self, space: Space, properties=None, scheduler=None, seed: int = 0,
                 name: str = "model"):
        self.name = name
        self.space = space
        self.properties = dict(properties or {})
        self.scheduler = scheduler if scheduler is not None else Fastest()
        self.rng = Rng(seed)
        self.step_count = 0
        self.agents: dict[int, Agent] = {}
        self.agent_types: dict[str, type] = {}
        self._next_id = 1

    # -- properties --

    def __getitem__(self, key):
        return self.properties[key]

    def __setitem__(self, key, value):
        self.properties[key] = value

    @property
    def n_agents(self) -> int:
        return len(self.agents)

    # -- lifecycle --

    def add_agent(self, agent_cls, pos, **props) -> Agent:
        """Create an agent of ``agent_cls`` at ``pos``."""
        if not self.space.valid_position(pos):
            raise ValueError(f"invalid position {pos!r} for {self.space.describe()}")
        agent = agent_cls(self._next_id, pos, **props)
        self._next_id += 1
        self.agents[agent.id] = agent
        self.agent_types.setdefault(agent_cls.kind, agent_cls)
        self.space.register_agent(agent.id, pos)
        return agent

    def add_agent_random(self, agent_cls, **props) -> Agent:
        """Create an agent at a position drawn by the space."""
        return self.add_agent(agent_cls, self.space.random_position(self.rng), **props)

    def add_agent_single(self, agent_cls, **props) -> Agent:
        """Create an agent at a uniformly random empty position.

        Raises NoEmptyPosition when the space is full.
        """
        return self.add_agent(agent_cls, self.space.random_empty(self.rng), **props)

    def fill_space(self, agent_cls, props_fn=None, **props) -> int:
        """One agent per currently empty position (canonical order); returns count."""
        count = 0
        for pos in list(self.space.empty_positions()):
            kwargs = props_fn(pos) if props_fn is not None else props
            self.add_agent(agent_cls, pos, **kwargs)
            count += 1
        return count

    def move_agent(self, agent: Agent, pos) -> None:
        if agent.id not in self.agents:
            raise UnknownAgent(agent.id)
        if not self.space.valid_position(pos):
            raise ValueError(f"invalid position {pos!r} for {self.space.describe()}")
        self.space.update_position(agent.id, agent.pos, pos)
        agent.pos = pos

    def move_agent_single(self, agent: Agent) -> bool:
        """Move to a uniformly random empty position; False when none exists."""
        try:
            pos = self.space.random_empty(self.rng)
        except NoEmptyPosition:
            return False
        self.move_agent(agent, pos)
        return True

    def kill_agent(self, agent_or_id) -> None:
        aid = agent_or_id.id if isinstance(agent_or_id, Agent) else agent_or_id
        agent = self.agents.pop(aid, None)
        if agent is None:
            raise UnknownAgent(aid)
        self.space.unregister_agent(aid, agent.pos)

    def kill_all(self) -> None:
        for agent in list(self.agents.values()):
            self.kill_agent(agent)

    def kill_by(self, predicate) -> int:
        doomed = [a for a in self.agents.values() if predicate(a)]
        for agent in doomed:
            self.kill_agent(agent)
        return len(doomed)

    def sample_agents(self, n: int, weight) -> None:
        """Replace the population by n draws with replacement, proportional to weight.

        Clones receive fresh ids and sit at their source agent's position.
        """
        if n < 0:
            raise ValueError("sample size must be non-negative")
        pool = list(self.agents.values())  # ascending id
        weights = [float(weight(a)) for a in pool]
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        total = sum(weights)
        if not pool or total <= 0:
            raise DegenerateWeights("no agent has positive weight")
        cumulative = []
        acc = 0.0
        for w in weights:
            acc += w
            cumulative.append(acc)
        chosen = []
        for _ in range(n):
            u = self.rng.next_float() * total
            lo, hi = 0, len(cumulative) - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if u < cumulative[mid]:
                    hi = mid
                else:
                    lo = mid + 1
            chosen.append(pool[lo])
        blueprints = [(type(a), a.pos, agent_props(a)) for a in chosen]
        self.kill_all()
        for cls, pos, props in blueprints:
            self.add_agent(cls, pos, **props)

    # -- neighbor queries --

    def nearby_ids(self, origin, r=1):
        """Ids within range r of an agent or position; an agent origin is excluded."""
        if r < 0:
            raise ValueError("range must be non-negative")
        if isinstance(origin, Agent):
            own = origin.id
            return (i for i in self.space.neighbor_ids(origin.pos, r) if i != own)
        return iter(self.space.neighbor_ids(origin, r))

    def nearby_agents(self, agent: Agent, r=1):
        """Agents within range r of ``agent``, the agent itself excluded."""
        agents = self.agents
        return (agents[i] for i in self.nearby_ids(agent, r))

    def nearby_positions(self, pos, r=1):
        """Positions within range r of pos, origin excluded (discrete spaces)."""
        if r < 0:
            raise ValueError("range must be non-negative")
        return self.space.neighbor_positions(pos, r)

    # -- presentation --

    def summary(self) -> str:
        lines = [f"Model '{self.name}' with {self.n_agents} agents"]
        lines.append(f"  space: {self.space.describe()}")
        lines.append(f"  scheduler: {self.scheduler.describe()}")
        lines.append(f"  properties: {_summarize_properties(self.properties)}")
        return "\n".join(lines)

    def __repr__(self):
        return self.summary()


def _summarize_properties(properties: dict) -> str:
    shown = {}
    for key in properties:
        value = properties[key]
        shown[key] = value if isinstance(value, (int, float, bool, str)) else type(value).__name__
    return repr(shown)


def step(model: Model, agent_step=None, model_step=None, n=1,
         model_step_first: bool = False) -> None:
    """Advance the model.

    ``n`` is either a step count or a predicate ``n(model, s)`` (with s the
    number of steps taken so far); evolution continues until it returns True.
    Each step schedules the currently alive ids, runs ``agent_step`` on each
    agent still alive when its turn comes, and runs ``model_step`` once
    (after the agents unless ``model_step_first``).  Agents added during a
    step are not activated until the next one.
    """
    if callable(n):
        s = 0
        while not n(model, s):
            _single_step(model, agent_step, model_step, model_step_first)
            s += 1
    else:
        if n < 0:
            raise ValueError("step count must be non-negative")
        for _ in range(n):
            _single_step(model, agent_step, model_step, model_step_first)


def _single_step(model, agent_step, model_step, model_step_first):
    order = schedule(model.scheduler, model)
    if model_step_first and model_step is not None:
        model_step(model)
    if agent_step is not None:
        agents = model.agents
        get = agents.get
        for aid in order:
            agent = get(aid)
            if agent is not None:
                agent_step(agent, model)
    if not model_step_first and model_step is not None:
        model_step(model)
    model.step_count += 1


def create_model(space, properties=None, scheduler=None, seed: int = 0,
                 name: str = "model") -> Model:
    """Construct an empty model (step_count 0, no agents)."""
    return Model(space, properties=properties, scheduler=scheduler, seed=seed, name=name)
