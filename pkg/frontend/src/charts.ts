/**
 * One timeseries panel per label: axes, the data polyline, and a vertical
 * red rule at every reset step (series continue across resets; the rules
 * mark where the model was rebuilt).
 */

import { Draw2D } from "./canvas.js";
import { Point } from "./series.js";

export const RESET_RULE_COLOR = "#ff0000";
const AXIS_COLOR = "#8899aa";
const LINE_COLOR = "#3fa7d6";
const MARGIN = { left: 40, right: 8, top: 16, bottom: 20 };

export interface ChartLayout {
  stepToX(step: number): number;
  plotTop: number;
  plotBottom: number;
}

export function chartLayout(points: Point[], width: number, height: number): ChartLayout {
  let lo = Infinity;
  let hi = -Infinity;
  for (const p of points) {
    lo = Math.min(lo, p.step);
    hi = Math.max(hi, p.step);
  }
  if (!Number.isFinite(lo)) {
    lo = 0;
    hi = 1;
  }
  if (hi === lo) hi = lo + 1;
  const plotWidth = width - MARGIN.left - MARGIN.right;
  return {
    stepToX: (step) => MARGIN.left + ((step - lo) / (hi - lo)) * plotWidth,
    plotTop: MARGIN.top,
    plotBottom: height - MARGIN.bottom,
  };
}

export function renderSeries(label: string, points: Point[], resetSteps: number[],
                             ctx: Draw2D, width: number, height: number): void {
  ctx.fillStyle = "#0c0f14";
  ctx.fillRect(0, 0, width, height);
  const layout = chartLayout(points, width, height);

  ctx.strokeStyle = AXIS_COLOR;
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(MARGIN.left, layout.plotTop);
  ctx.lineTo(MARGIN.left, layout.plotBottom);
  ctx.lineTo(width - MARGIN.right, layout.plotBottom);
  ctx.stroke();

  ctx.fillStyle = AXIS_COLOR;
  ctx.font = "11px sans-serif";
  ctx.fillText(label, MARGIN.left + 4, layout.plotTop - 4);

  const values = points.filter((p) => p.value !== null).map((p) => p.value as number);
  if (values.length > 0) {
    let vlo = Math.min(...values);
    let vhi = Math.max(...values);
    if (vhi === vlo) {
      vhi += 1;
      vlo -= 1;
    }
    const valueToY = (v: number) =>
      layout.plotBottom -
      ((v - vlo) / (vhi - vlo)) * (layout.plotBottom - layout.plotTop);
    ctx.strokeStyle = LINE_COLOR;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    let drawing = false;
    for (const p of points) {
      if (p.value === null) {
        drawing = false;  // missing samples break the line
        continue;
      }
      const x = layout.stepToX(p.step);
      const y = valueToY(p.value);
      if (drawing) {
        ctx.lineTo(x, y);
      } else {
        ctx.moveTo(x, y);
        drawing = true;
      }
    }
    ctx.stroke();
    ctx.fillText(String(vhi), 2, layout.plotTop + 8);
    ctx.fillText(String(vlo), 2, layout.plotBottom);
  }

  const first = points.length > 0 ? points[0]!.step : 0;
  const last = points.length > 0 ? points[points.length - 1]!.step : 0;
  for (const step of resetSteps) {
    if (points.length > 0 && (step < first || step > last)) continue;
    ctx.strokeStyle = RESET_RULE_COLOR;
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(layout.stepToX(step), layout.plotTop);
    ctx.lineTo(layout.stepToX(step), layout.plotBottom);
    ctx.stroke();
  }
}
