/**
 * The secondary acceptance path: feed the messages a real scripted session
 * produced (play/step, slider 3 -> 6 -> 8, two resets) through the UI's
 * message handling, and require the rendered state to match the headless
 * replay oracle exactly - including the two red reset rules.
 */

import { describe, expect, it } from "vitest";

import fixture from "../fixtures/session_fixture.json";
import { chartLayout, renderSeries, RESET_RULE_COLOR } from "../src/charts.js";
import { ClientMessage } from "../src/protocol.js";
import { UiSessionView } from "../src/view.js";
import { FakeContext } from "./fake_canvas.js";

function replayedView(): UiSessionView {
  const sent: ClientMessage[] = [];
  const view = new UiSessionView((m) => sent.push(m));
  for (const message of fixture.messages) {
    view.handleMessage(message);
  }
  return view;
}

describe("scripted session replay through the UI", () => {
  it("reconstructs exactly the oracle's series", () => {
    const view = replayedView();
    const oracle = fixture.oracle.series;
    const labels = [...new Set(oracle.map((p) => p.label))];
    expect(view.series.labels().sort()).toEqual([...labels].sort());
    for (const label of labels) {
      const got = view.series.points(label).map((p) => [p.step, p.value]);
      const want = oracle.filter((p) => p.label === label)
        .map((p) => [p.step, p.value]);
      expect(got).toEqual(want);
    }
  });

  it("records both reset markers at the oracle's steps", () => {
    const view = replayedView();
    expect(view.series.resetSteps).toEqual(fixture.oracle.reset_steps);
    expect(view.series.resetSteps).toEqual([15, 23]);
  });

  it("keeps the latest snapshot (latest-wins)", () => {
    const view = replayedView();
    const snapshots = fixture.messages.filter((m) => m.type === "snapshot");
    expect(view.snapshot).toEqual(snapshots[snapshots.length - 1]);
  });

  it("draws two red vertical rules at the reset steps", () => {
    const view = replayedView();
    const ctx = new FakeContext();
    const width = 360;
    const height = 140;
    const points = view.series.points("happy");
    renderSeries("happy", points, view.series.resetSteps, ctx, width, height);

    const redStrokes = ctx.byOp("stroke")
      .filter((o) => o.strokeStyle === RESET_RULE_COLOR);
    expect(redStrokes.length).toBe(2);
    const layout = chartLayout(points, width, height);
    const xs = redStrokes.map((o) => (o.args[0] as [number, number])[0]);
    expect(xs[0]).toBeCloseTo(layout.stepToX(15), 6);
    expect(xs[1]).toBeCloseTo(layout.stepToX(23), 6);
    for (const op of redStrokes) {
      const [start, end] = op.args as [[number, number], [number, number]];
      expect(start[0]).toBeCloseTo(end[0], 6);  // vertical
      expect(end[1]).toBeGreaterThan(start[1]);
    }
  });

  it("applies param acks to the slider state", () => {
    const view = replayedView();
    expect(view.params["min_to_be_happy"]).toBe(8);  // last set_param in script
  });
});
