"""Record the scripted exploration session into the frontend test fixture.

Drives the real server through the documented script (play steps, move the
happiness slider 3 -> 6 -> 8, two resets), captures every message a
subscribed client receives, and stores them with the headless replay
oracle's series for the frontend test suite to replay.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

from fastapi.testclient import TestClient

from agentsim.serve import create_app, headless_replay
from test_serve import SCRIPT, run_scripted_session


def main() -> None:
    with TestClient(create_app()) as client:
        messages = run_scripted_session(client, seed=42)
    oracle = headless_replay("schelling", {}, 42, SCRIPT)
    fixture = {
        "script": [list(event) for event in SCRIPT],
        "seed": 42,
        "messages": messages,
        "oracle": oracle,
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "frontend" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    path = out / "session_fixture.json"
    path.write_text(json.dumps(fixture, indent=1) + "\n", encoding="utf-8")
    series = sum(1 for m in messages if m["type"] == "series")
    print(f"wrote {path} ({len(messages)} messages, {series} series points)")


if __name__ == "__main__":
    main()
