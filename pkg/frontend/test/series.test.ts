import { describe, expect, it } from "vitest";

import { renderSeries } from "../src/charts.js";
import { SeriesStore } from "../src/series.js";
import { FakeContext } from "./fake_canvas.js";

describe("series store", () => {
  it("keeps points per label in arrival order", () => {
    const store = new SeriesStore();
    store.addPoint("a", 1, 10);
    store.addPoint("b", 1, 99);
    store.addPoint("a", 2, 20);
    expect(store.points("a")).toEqual([{ step: 1, value: 10 }, { step: 2, value: 20 }]);
    expect(store.labels()).toEqual(["a", "b"]);
  });

  it("caps buffers at the configured capacity", () => {
    const store = new SeriesStore(10);
    for (let s = 0; s < 25; s++) store.addPoint("x", s, s);
    const points = store.points("x");
    expect(points.length).toBe(10);
    expect(points[0]!.step).toBe(15);
    expect(points[9]!.step).toBe(24);
  });

  it("clear drops points and markers", () => {
    const store = new SeriesStore();
    store.addPoint("x", 1, 1);
    store.addReset(1);
    store.clear();
    expect(store.labels()).toEqual([]);
    expect(store.resetSteps).toEqual([]);
  });
});

describe("series chart edge cases", () => {
  it("renders empty data as axes only, no crash", () => {
    const ctx = new FakeContext();
    renderSeries("empty", [], [], ctx, 200, 100);
    expect(ctx.byOp("stroke").length).toBe(1);  // just the axes
  });

  it("breaks the polyline at missing values", () => {
    const ctx = new FakeContext();
    renderSeries("gappy", [
      { step: 1, value: 1 }, { step: 2, value: null }, { step: 3, value: 2 },
    ], [], ctx, 200, 100);
    const moves = ctx.byOp("moveTo");
    // one for the axes, two for the split polyline segments
    expect(moves.length).toBe(3);
  });

  it("skips reset rules outside the visible step window", () => {
    const ctx = new FakeContext();
    renderSeries("w", [{ step: 10, value: 1 }, { step: 20, value: 2 }], [5, 15, 25],
                 ctx, 200, 100);
    const red = ctx.byOp("stroke").filter((o) => o.strokeStyle === "#ff0000");
    expect(red.length).toBe(1);
  });
});
