"""The interactive exploration server, driven headlessly.

`agentsim serve` starts the HTTP/WebSocket server; the browser UI under
frontend/ connects to it for live canvases, sliders, and timeseries with
reset markers.  This demo drives the same protocol from Python instead:
create a session, step it, move a parameter slider, reset twice, and show
that the collected series match the headless replay oracle exactly.
"""

from fastapi.testclient import TestClient

from agentsim.serve import create_app, headless_replay

script = [("step", 10), ("set_param", "min_to_be_happy", 6), ("step", 5),
          ("reset",), ("step", 8)]

with TestClient(create_app()) as client:
    created = client.post("/sessions", json={
        "type": "create", "model": "schelling", "config": {"seed": 42},
    }).json()
    sid = created["session_id"]
    print(f"session {sid}: params {created['params']}")

    series = []
    markers = []
    with client.websocket_connect(f"/sessions/{sid}") as ws:
        ws.send_json({"type": "subscribe"})
        while ws.receive_json()["type"] != "snapshot":
            pass  # drain the subscribe reply (ack + state backlog + snapshot)
        for event in script:
            if event[0] == "step":
                ws.send_json({"type": "step", "n": event[1]})
            elif event[0] == "set_param":
                ws.send_json({"type": "set_param", "name": event[1], "value": event[2]})
            else:
                ws.send_json({"type": "reset"})
            while True:
                message = ws.receive_json()
                if message["type"] == "series":
                    series.append((message["label"], message["step"], message["value"]))
                elif message["type"] == "reset_marker":
                    markers.append(message["step"])
                if message["type"] in ("ack", "param_ack"):
                    break

oracle = headless_replay("schelling", {}, 42, script)
want = [(p["label"], p["step"], p["value"]) for p in oracle["series"]]
print(f"collected {len(series)} series points over {len(markers)} reset(s)")
print("matches headless replay oracle:", series == want and markers == oracle["reset_steps"])
print()
print("for the real thing:  agentsim serve --port 8000")
print("then open frontend/index.html (see frontend/README.md)")
