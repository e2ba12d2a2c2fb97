/**
 * Per-label series storage: bounded ring buffers plus reset markers.
 *
 * The buffers hold what the charts draw; the server is the source of truth
 * (resubscribing replays history), so capping memory client-side is safe.
 */

export interface Point {
  step: number;
  value: number | null;
}

export class SeriesStore {
  readonly capacity: number;
  private buffers = new Map<string, Point[]>();
  resetSteps: number[] = [];

  constructor(capacity = 5000) {
    this.capacity = capacity;
  }

  addPoint(label: string, step: number, value: number | null): void {
    let buffer = this.buffers.get(label);
    if (!buffer) {
      buffer = [];
      this.buffers.set(label, buffer);
    }
    buffer.push({ step, value });
    if (buffer.length > this.capacity) {
      buffer.splice(0, buffer.length - this.capacity);
    }
  }

  addReset(step: number): void {
    this.resetSteps.push(step);
  }

  labels(): string[] {
    return [...this.buffers.keys()];
  }

  points(label: string): Point[] {
    return this.buffers.get(label) ?? [];
  }

  clear(): void {
    this.buffers.clear();
    this.resetSteps = [];
  }
}
