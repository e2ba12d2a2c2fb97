/**
 * Session view-model: everything the widgets render, fed by server
 * messages.  Holds no model semantics of its own - reloading the page and
 * resubscribing rebuilds identical state from the server's history replay.
 */

import { checkInbound, ClientMessage, outbound, ParamRange, ServerMessage,
         SessionCreated, Snapshot } from "./protocol.js";
import { SeriesStore } from "./series.js";

export type ConnectionState = "connecting" | "open" | "closed";

export class UiSessionView {
  connection: ConnectionState = "connecting";
  snapshot: Snapshot | null = null;
  series = new SeriesStore();
  params: Record<string, unknown> = {};
  paramRanges: Record<string, ParamRange> = {};
  labels: string[] = [];
  playing = false;
  stepsPerSecond = 2;
  banner: string | null = null;
  private sender: (message: ClientMessage) => void;
  onChange: () => void = () => undefined;

  constructor(sender: (message: ClientMessage) => void) {
    this.sender = sender;
  }

  adoptSession(created: SessionCreated): void {
    this.params = { ...created.params };
    this.paramRanges = created.param_ranges;
    this.labels = created.labels;
  }

  /** Validate and send; invalid outbound messages throw (never sent). */
  send(message: ClientMessage): void {
    this.sender(outbound(message));
  }

  opened(): void {
    this.connection = "open";
    this.send({ type: "subscribe" });
    this.onChange();
  }

  dropped(): void {
    this.connection = "closed";
    this.playing = false;
    this.banner = "connection lost";
    this.onChange();
  }

  handleMessage(raw: unknown): void {
    const problems = checkInbound(raw);
    if (problems.length > 0) {
      this.banner = `malformed server message: ${problems[0]}`;
      this.onChange();
      return;
    }
    const message = raw as ServerMessage | SessionCreated;
    switch (message.type) {
      case "snapshot":
        this.snapshot = message;
        break;
      case "series":
        this.series.addPoint(message.label, message.step, message.value);
        break;
      case "reset_marker":
        this.series.addReset(message.step);
        break;
      case "param_ack":
        this.params[message.name] = message.value;
        this.banner = null;
        break;
      case "ack":
        if (message.op === "play") this.playing = true;
        if (message.op === "pause") this.playing = false;
        if (message.op === "clear_series") this.series.clear();
        break;
      case "error":
        this.banner = `${message.code}: ${message.message}`;
        break;
      case "session_created":
        this.adoptSession(message);
        break;
    }
    this.onChange();
  }
}
