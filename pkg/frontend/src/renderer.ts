/**
 * Immediate-mode agent canvas: optional heat grid beneath, then one marker
 * per agent at its server-assigned color/shape/size.  Positions are scaled
 * from model bounds to the viewport; no DOM nodes per agent.
 */

import { Draw2D } from "./canvas.js";
import { Snapshot } from "./protocol.js";

export const BACKGROUND = "#10141a";

function heatColor(v: number): string {
  const clamped = Math.max(0, Math.min(1, v));
  const g = Math.round(60 + 140 * clamped);
  return `rgb(24,${g},52)`;
}

export function renderAgents(snapshot: Snapshot, ctx: Draw2D,
                             width: number, height: number): void {
  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, width, height);

  const [bx, by] = snapshot.bounds;
  const sx = width / bx;
  const sy = height / by;

  if (snapshot.heat) {
    const [nx, ny] = snapshot.heat.dims;
    const values = snapshot.heat.values;
    let top = -Infinity;
    for (const v of values) top = Math.max(top, v);
    const scale = top > 0 ? 1 / top : 1;
    const cw = width / nx;
    const ch = height / ny;
    for (let i = 0; i < nx; i++) {
      for (let j = 0; j < ny; j++) {
        const v = values[i * ny + j] ?? 0;
        ctx.fillStyle = heatColor(v * scale);
        ctx.fillRect(i * cw, j * ch, cw + 0.5, ch + 0.5);
      }
    }
  }

  for (const agent of snapshot.agents) {
    const px = (agent.x + 0.5) * sx;
    const py = (agent.y + 0.5) * sy;
    const r = Math.max(1.5, agent.size);
    ctx.fillStyle = agent.color;
    if (agent.marker === "rect") {
      ctx.fillRect(px - r, py - r, 2 * r, 2 * r);
    } else if (agent.marker === "triangle") {
      ctx.beginPath();
      ctx.moveTo(px, py - r);
      ctx.lineTo(px - r, py + r);
      ctx.lineTo(px + r, py + r);
      ctx.closePath();
      ctx.fill();
    } else {
      ctx.beginPath();
      ctx.arc(px, py, r, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
}
