/**
 * Run controls and parameter sliders, wired so that every user action maps
 * to exactly one wire message.  Slider drags are debounced before becoming
 * set_param messages; the speed slider's zero position maps to pause.
 * All controls disable while the connection is down.
 */

import { ParamRange } from "./protocol.js";
import { UiSessionView } from "./view.js";

/** The structural slice of the DOM elements the controls need. */
export interface ControlElement {
  disabled: boolean;
  value: string;
  addEventListener(event: string, handler: (ev?: unknown) => void): void;
}

export interface ControlSet {
  play: ControlElement;
  pause: ControlElement;
  stepOnce: ControlElement;
  reset: ControlElement;
  speed: ControlElement;                     // range input, 0..N steps/sec
  params: Record<string, ControlElement>;    // one slider per parameter
}

export function debounce<A extends unknown[]>(fn: (...args: A) => void,
                                              ms: number): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | null = null;
  return (...args: A) => {
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, ms);
  };
}

function coerce(range: ParamRange, raw: string): number {
  const value = Number(raw);
  return range.type === "int" ? Math.round(value) : value;
}

export const PARAM_DEBOUNCE_MS = 150;

export function bindControls(view: UiSessionView, controls: ControlSet): void {
  controls.play.addEventListener("click", () => {
    view.send({ type: "play", sps: Math.max(0.5, Number(controls.speed.value)) });
  });
  controls.pause.addEventListener("click", () => view.send({ type: "pause" }));
  controls.stepOnce.addEventListener("click", () => view.send({ type: "step", n: 1 }));
  controls.reset.addEventListener("click", () => view.send({ type: "reset" }));

  controls.speed.addEventListener("change", () => {
    const sps = Number(controls.speed.value);
    if (sps <= 0) {
      view.send({ type: "pause" });
    } else if (view.playing) {
      view.send({ type: "play", sps });
    }
    view.stepsPerSecond = Math.max(sps, 0);
  });

  for (const [name, slider] of Object.entries(controls.params)) {
    const range = view.paramRanges[name];
    if (!range) continue;
    const push = debounce((raw: string) => {
      view.send({ type: "set_param", name, value: coerce(range, raw) });
    }, PARAM_DEBOUNCE_MS);
    slider.addEventListener("input", () => push(slider.value));
  }

  const refresh = () => {
    const down = view.connection !== "open";
    controls.play.disabled = down;
    controls.pause.disabled = down;
    controls.stepOnce.disabled = down;
    controls.reset.disabled = down;
    controls.speed.disabled = down;
    for (const slider of Object.values(controls.params)) slider.disabled = down;
  };
  const previous = view.onChange;
  view.onChange = () => {
    previous();
    refresh();
  };
  refresh();
}
