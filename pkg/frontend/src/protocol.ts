/**
 * Wire protocol types plus validation against the shared schema.
 *
 * Every outbound message passes through `outbound()` (throws on shape
 * violations, so protocol drift fails loudly in development and tests);
 * inbound messages are checked with `checkInbound` before dispatch.
 */

import schemaJson from "./schema.generated.js";
import { Schema, validationErrors } from "./validator.js";

export const protocolSchema = schemaJson as unknown as Schema;

export type Marker = "circle" | "rect" | "triangle";

export interface SnapshotAgent {
  id: number;
  x: number;
  y: number;
  color: string;
  marker: Marker;
  size: number;
}

export interface Snapshot {
  type: "snapshot";
  step: number;
  bounds: [number, number];
  agents: SnapshotAgent[];
  heat?: { dims: [number, number]; values: number[] };
}

export interface SeriesPoint {
  type: "series";
  label: string;
  step: number;
  value: number | null;
}

export interface ResetMarker {
  type: "reset_marker";
  step: number;
}

export interface ParamAck {
  type: "param_ack";
  name: string;
  value: number | boolean | string;
}

export interface Ack {
  type: "ack";
  op: string;
}

export interface ErrorMessage {
  type: "error";
  code: string;
  message: string;
}

export type ServerMessage =
  | Snapshot
  | SeriesPoint
  | ResetMarker
  | ParamAck
  | Ack
  | ErrorMessage;

export interface ParamRange {
  type?: "int" | "float";
  min?: number;
  max?: number;
  step?: number;
  values?: (number | boolean | string)[];
}

export interface SessionCreated {
  type: "session_created";
  session_id: string;
  model: string;
  params: Record<string, unknown>;
  param_ranges: Record<string, ParamRange>;
  labels: string[];
  step: number;
}

export type ClientMessage =
  | { type: "create"; model: string; config?: Record<string, unknown> }
  | { type: "step"; n: number }
  | { type: "play"; sps: number }
  | { type: "pause" }
  | { type: "set_param"; name: string; value: number | boolean | string }
  | { type: "reset" }
  | { type: "subscribe" }
  | { type: "clear_series" };

/** Validate an outbound message; returns it for chaining, throws on violation. */
export function outbound<M extends ClientMessage>(message: M): M {
  const errors = validationErrors(protocolSchema, message);
  if (errors.length > 0) {
    throw new Error(`refusing to send invalid message: ${errors.join("; ")}`);
  }
  return message;
}

/** Validation errors for an inbound frame (empty list when well-formed). */
export function checkInbound(message: unknown): string[] {
  return validationErrors(protocolSchema, message);
}
