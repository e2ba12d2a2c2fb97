"""Interactive exploration session server.

One live model per session.  A browser (or any client) creates a session
over HTTP, then drives it over a WebSocket: step, play/pause at a given
speed, move parameter sliders, reset.  The server evaluates the visual
mapping (color/marker/size, optional heat layer) and the collected series
itself, so clients stay model-agnostic.  Series continue across resets;
each reset adds a marker at the current series step.

Every message in either direction validates against
``schemas/protocol.schema.json``.
"""

from __future__ import annotations

import asyncio
import json
from collections import deque
from importlib import resources

import numpy as np
from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect

from .core import step as core_step
from .models import get_model, model_names
from .rng import Rng


def load_protocol_schema() -> dict:
    ref = resources.files("agentsim").joinpath("schemas/protocol.schema.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def _jsonable(value):
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value


class Mailbox:
    """Per-subscriber buffer: series and acks lossless, snapshots latest-wins."""

    def __init__(self):
        self._items = deque()
        self._snapshot = None
        self._wakeup = asyncio.Event()

    def put(self, message: dict):
        if message["type"] == "snapshot":
            self._snapshot = message
        else:
            self._items.append(message)
        self._wakeup.set()

    async def get(self) -> dict:
        while True:
            if self._items:
                return self._items.popleft()
            if self._snapshot is not None:
                snap, self._snapshot = self._snapshot, None
                return snap
            self._wakeup.clear()
            await self._wakeup.wait()


def _check_param(ranges: dict, name: str, value):
    if name not in ranges:
        return {"type": "error", "code": "unknown_param",
                "message": f"'{name}' is not an adjustable parameter"}
    spec = ranges[name]
    if "values" in spec:
        if value not in spec["values"]:
            return {"type": "error", "code": "param_out_of_range",
                    "message": f"{name}={value!r} not in declared values"}
        return None
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        return {"type": "error", "code": "bad_value",
                "message": f"{name} expects a number"}
    if value < spec["min"] or value > spec["max"]:
        return {"type": "error", "code": "param_out_of_range",
                "message": f"{name}={value} outside [{spec['min']}, {spec['max']}]"}
    return None


class Session:
    """A live model plus its collected series and play state."""

    def __init__(self, session_id: str, model_name: str, params: dict, seed: int):
        self.id = session_id
        self.spec = get_model(model_name)
        self.params = {**self.spec.defaults, **params}
        self.rng = Rng(seed)
        self.model = self.spec.build(self.params, self.rng.next_u64())
        self.series_step = 0
        self.series_log: list[dict] = []
        self.reset_steps: list[int] = []
        self.playing = False
        self.sps = 2.0
        self.lock = asyncio.Lock()
        self.subscribers: list[Mailbox] = []
        self._play_task: asyncio.Task | None = None

    # -- broadcasting --

    def broadcast(self, message: dict):
        for box in self.subscribers:
            box.put(message)

    # -- model views --

    def _bounds(self):
        space = self.model.space
        if hasattr(space, "dims"):
            return [float(space.dims[0]), float(space.dims[1] if len(space.dims) > 1 else 1)]
        if hasattr(space, "extent"):
            return [float(space.extent[0]), float(space.extent[1] if len(space.extent) > 1 else 1)]
        return [float(max(len(space.nodes), 1)), 1.0]

    def _agent_xy(self, agent):
        pos = agent.pos
        if isinstance(pos, tuple):
            x = float(pos[0])
            y = float(pos[1]) if len(pos) > 1 else 0.5
            return x, y
        return float(pos) + 0.5, 0.5  # graph node index

    def snapshot_message(self) -> dict:
        spec = self.spec
        agents = []
        for agent in self.model.agents.values():
            x, y = self._agent_xy(agent)
            agents.append({
                "id": agent.id,
                "x": x,
                "y": y,
                "color": spec.color(agent) if spec.color else "#444444",
                "marker": spec.marker(agent) if spec.marker else "circle",
                "size": float(spec.size(agent)) if spec.size else 4.0,
            })
        message = {"type": "snapshot", "step": self.series_step,
                   "bounds": self._bounds(), "agents": agents}
        if spec.heat is not None:
            dims, values = spec.heat(self.model)
            message["heat"] = {"dims": [int(d) for d in dims],
                               "values": [float(v) for v in values]}
        return message

    # -- operations (call under the session lock) --

    def step_block(self, n: int):
        for _ in range(n):
            core_step(self.model, self.spec.agent_step, self.spec.model_step, 1)
            self.series_step += 1
            for label, fn in self.spec.series:
                value = _jsonable(fn(self.model))
                point = {"type": "series", "label": label,
                         "step": self.series_step, "value": value}
                self.series_log.append(point)
                self.broadcast(point)
            self.broadcast(self.snapshot_message())

    def set_param(self, name: str, value):
        error = _check_param(self.spec.param_ranges, name, value)
        if error is not None:
            return [error]
        if self.spec.param_ranges[name].get("type") == "int":
            value = int(value)
        self.params[name] = value
        self.model[name] = value
        return [{"type": "param_ack", "name": name, "value": value}]

    def reset(self, requester: Mailbox | None = None):
        self.reset_steps.append(self.series_step)
        self.model = self.spec.build(self.params, self.rng.next_u64())
        marker = {"type": "reset_marker", "step": self.series_step}
        self.broadcast(marker)
        self.broadcast(self.snapshot_message())
        replies = [{"type": "ack", "op": "reset"}]
        if requester not in self.subscribers:
            replies.append(marker)  # unsubscribed clients still get the marker
        return replies

    def subscribe(self, box: Mailbox):
        self.subscribers.append(box)
        backlog = [{"type": "ack", "op": "subscribe"}]
        backlog.extend(self.series_log)
        backlog.extend({"type": "reset_marker", "step": s} for s in self.reset_steps)
        backlog.append(self.snapshot_message())
        return backlog

    def unsubscribe(self, box: Mailbox):
        if box in self.subscribers:
            self.subscribers.remove(box)
        if not self.subscribers:
            self.playing = False

    def clear_series(self):
        self.series_log.clear()
        self.reset_steps.clear()
        return [{"type": "ack", "op": "clear_series"}]

    async def play_loop(self):
        try:
            while self.playing:
                async with self.lock:
                    if not self.playing:
                        break
                    self.step_block(1)
                await asyncio.sleep(1.0 / self.sps)
        finally:
            self._play_task = None

    def start_playing(self, sps: float):
        self.sps = float(sps)
        self.playing = True
        if self._play_task is None or self._play_task.done():
            self._play_task = asyncio.get_running_loop().create_task(self.play_loop())
        return [{"type": "ack", "op": "play"}]


async def handle_message(session: Session, box: Mailbox, message: dict) -> list[dict]:
    """Dispatch one validated client message; returns direct replies."""
    kind = message["type"]
    async with session.lock:
        if kind == "step":
            session.step_block(message["n"])
            return [{"type": "ack", "op": "step"}]
        if kind == "set_param":
            return session.set_param(message["name"], message["value"])
        if kind == "reset":
            return session.reset(box)
        if kind == "subscribe":
            return session.subscribe(box)
        if kind == "clear_series":
            return session.clear_series()
        if kind == "pause":
            session.playing = False
            return [{"type": "ack", "op": "pause"}]
    if kind == "play":
        return session.start_playing(message["sps"])
    return [{"type": "error", "code": "bad_message",
             "message": f"server cannot handle '{kind}'"}]


CLIENT_MESSAGES = {"create", "step", "play", "pause", "set_param", "reset",
                   "subscribe", "clear_series"}


def create_app() -> FastAPI:
    import jsonschema

    app = FastAPI(title="agentsim exploration server")
    schema = load_protocol_schema()
    validator = jsonschema.Draft7Validator(schema)
    sessions: dict[str, Session] = {}
    counter = {"n": 0}
    app.state.sessions = sessions

    def validate(message) -> str | None:
        errors = sorted(validator.iter_errors(message), key=str)
        if errors:
            return errors[0].message
        return None

    @app.get("/models")
    def list_models():
        out = []
        for name in model_names():
            spec = get_model(name)
            out.append({
                "name": name,
                "defaults": {k: _jsonable(v) for k, v in spec.defaults.items()},
                "param_ranges": spec.param_ranges,
                "labels": [label for label, _ in spec.series],
            })
        return {"type": "models", "models": out}

    @app.post("/sessions")
    def create_session(message: dict):
        problem = validate(message)
        if problem is not None or message.get("type") != "create":
            raise HTTPException(status_code=422, detail=problem or "expected a create message")
        try:
            spec = get_model(message["model"])
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        config = dict(message.get("config") or {})
        seed = int(config.pop("seed", 0))
        counter["n"] += 1
        sid = f"s{counter['n']}"
        try:
            session = Session(sid, message["model"], config, seed)
        except (ValueError, TypeError) as exc:
            raise HTTPException(status_code=422, detail=f"bad config: {exc}") from None
        sessions[sid] = session
        return {
            "type": "session_created",
            "session_id": sid,
            "model": session.spec.name,
            "params": {k: _jsonable(v) for k, v in session.params.items()},
            "param_ranges": session.spec.param_ranges,
            "labels": [label for label, _ in spec.series],
            "step": session.series_step,
        }

    @app.websocket("/sessions/{sid}")
    async def session_socket(websocket: WebSocket, sid: str):
        session = sessions.get(sid)
        await websocket.accept()
        box = Mailbox()
        if session is None:
            await websocket.send_json({"type": "error", "code": "unknown_session",
                                       "message": f"no session '{sid}'"})
            await websocket.close()
            return

        async def pump():
            while True:
                await websocket.send_json(await box.get())

        sender = asyncio.get_running_loop().create_task(pump())
        try:
            while True:
                try:
                    message = await websocket.receive_json()
                except json.JSONDecodeError:
                    box.put({"type": "error", "code": "bad_message",
                             "message": "frame is not valid JSON"})
                    continue
                problem = validate(message) if isinstance(message, dict) else "not an object"
                if problem is not None or message.get("type") not in CLIENT_MESSAGES:
                    box.put({"type": "error", "code": "bad_message",
                             "message": problem or "not a client message"})
                    continue
                for reply in await handle_message(session, box, message):
                    box.put(reply)
        except WebSocketDisconnect:
            pass
        finally:
            sender.cancel()
            session.unsubscribe(box)

    return app


def headless_replay(model_name: str, params: dict, seed: int, script) -> dict:
    """Replay oracle: the series a scripted session must produce.

    ``script`` is a list of events: ("step", n), ("set_param", name, value),
    ("reset",).  Mirrors the documented session semantics (model seed and
    each reset seed drawn from the session rng) without any session or
    transport machinery.
    """
    spec = get_model(model_name)
    rng = Rng(seed)
    current = {**spec.defaults, **params}
    model = spec.build(current, rng.next_u64())
    series = []
    resets = []
    t = 0
    for event in script:
        if event[0] == "step":
            for _ in range(event[1]):
                core_step(model, spec.agent_step, spec.model_step, 1)
                t += 1
                for label, fn in spec.series:
                    series.append({"label": label, "step": t,
                                   "value": _jsonable(fn(model))})
        elif event[0] == "set_param":
            _, name, value = event
            current[name] = value
            model[name] = value
        elif event[0] == "reset":
            resets.append(t)
            model = spec.build(current, rng.next_u64())
        else:
            raise ValueError(f"unknown script event {event!r}")
    return {"series": series, "reset_steps": resets}
