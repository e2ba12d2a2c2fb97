/**
 * Browser bootstrap: pick a model, create a session over HTTP, open the
 * WebSocket, and wire the canvas, the series panels, and the controls.
 * Rendering is throttled to animation frames with latest-wins snapshots;
 * series panels redraw from the (lossless) buffers.
 */

import { bindControls, ControlElement } from "./controls.js";
import { renderAgents } from "./renderer.js";
import { renderSeries } from "./charts.js";
import { SessionCreated } from "./protocol.js";
import { UiSessionView } from "./view.js";

const SERVER = (window as { AGENTSIM_SERVER?: string }).AGENTSIM_SERVER ??
  `${location.protocol}//${location.host}`;

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function start(): Promise<void> {
  const modelSelect = element<HTMLSelectElement>("model");
  const listing = await (await fetch(`${SERVER}/models`)).json();
  for (const model of listing.models) {
    const option = document.createElement("option");
    option.value = model.name;
    option.textContent = model.name;
    modelSelect.appendChild(option);
  }

  element<HTMLButtonElement>("create").addEventListener("click", async () => {
    const created: SessionCreated = await (await fetch(`${SERVER}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ type: "create", model: modelSelect.value,
                             config: { seed: Date.now() % 2 ** 32 } }),
    })).json();
    openSession(created);
  });
}

function openSession(created: SessionCreated): void {
  const wsUrl = SERVER.replace(/^http/, "ws") + `/sessions/${created.session_id}`;
  const socket = new WebSocket(wsUrl);
  const view = new UiSessionView((message) => socket.send(JSON.stringify(message)));
  view.adoptSession(created);

  const canvas = element<HTMLCanvasElement>("world");
  const worldCtx = canvas.getContext("2d")!;
  const panels = element<HTMLDivElement>("panels");
  panels.textContent = "";
  const charts = new Map<string, CanvasRenderingContext2D>();
  for (const label of view.labels) {
    const chart = document.createElement("canvas");
    chart.width = 360;
    chart.height = 140;
    panels.appendChild(chart);
    charts.set(label, chart.getContext("2d")!);
  }

  const banner = element<HTMLDivElement>("banner");
  let dirty = false;
  const paint = () => {
    dirty = false;
    if (view.snapshot) {
      renderAgents(view.snapshot, worldCtx, canvas.width, canvas.height);
    }
    for (const [label, ctx] of charts) {
      renderSeries(label, view.series.points(label), view.series.resetSteps,
                   ctx, 360, 140);
    }
    banner.textContent = view.banner ?? "";
    banner.style.display = view.banner ? "block" : "none";
  };
  view.onChange = () => {
    if (!dirty) {
      dirty = true;
      requestAnimationFrame(paint);
    }
  };

  const sliders: Record<string, ControlElement> = {};
  const sliderBox = element<HTMLDivElement>("sliders");
  sliderBox.textContent = "";
  for (const [name, range] of Object.entries(view.paramRanges)) {
    const label = document.createElement("label");
    label.textContent = name;
    const input = document.createElement("input");
    input.type = "range";
    if (range.values) {
      input.min = "0";
      input.max = String(range.values.length - 1);
      input.step = "1";
    } else {
      input.min = String(range.min ?? 0);
      input.max = String(range.max ?? 1);
      input.step = String(range.step ?? 1);
    }
    input.value = String(view.params[name] ?? input.min);
    label.appendChild(input);
    sliderBox.appendChild(label);
    sliders[name] = input;
  }

  bindControls(view, {
    play: element<HTMLButtonElement>("play"),
    pause: element<HTMLButtonElement>("pause"),
    stepOnce: element<HTMLButtonElement>("step"),
    reset: element<HTMLButtonElement>("reset"),
    speed: element<HTMLInputElement>("speed"),
    params: sliders,
  });

  socket.addEventListener("open", () => view.opened());
  socket.addEventListener("close", () => view.dropped());
  socket.addEventListener("message", (event) =>
    view.handleMessage(JSON.parse(event.data as string)));
}

start().catch((err) => {
  element<HTMLDivElement>("banner").textContent = String(err);
});
