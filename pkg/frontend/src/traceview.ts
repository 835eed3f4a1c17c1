/** Turning battle trace events into drawable primitives.
 *
 * Pure: the views feed event batches in and draw the returned ops, so
 * the interpretation is testable without a canvas.
 */

import type { TraceEvent } from "./types.js";

export type DrawOp =
  | { kind: "path"; entityId: number; points: { x: number; y: number }[] }
  | { kind: "burst"; x: number; y: number }
  | { kind: "teleport"; x: number; y: number; caster: number }
  | { kind: "puff"; color: string }
  | { kind: "damage"; x: number; y: number; amount: number };

const FIZZLE_GRAY = "#888888";

export function traceToDrawOps(events: TraceEvent[]): DrawOp[] {
  const paths = new Map<number, { x: number; y: number }[]>();
  const ops: DrawOp[] = [];
  const positions = new Map<number, { x: number; y: number }>();

  for (const event of events) {
    const p = event.payload as Record<string, number | string>;
    switch (event.event_kind) {
      case "spawn":
      case "move": {
        const point = { x: Number(p.x), y: Number(p.y) };
        positions.set(event.entity_id, point);
        let path = paths.get(event.entity_id);
        if (!path) {
          path = [];
          paths.set(event.entity_id, path);
        }
        path.push(point);
        break;
      }
      case "impact":
        ops.push({ kind: "burst", x: Number(p.x), y: Number(p.y) });
        break;
      case "teleport":
        ops.push({ kind: "teleport", x: Number(p.x), y: Number(p.y), caster: Number(p.caster) });
        break;
      case "damage": {
        const at = positions.get(event.entity_id) ?? { x: 0, y: 0 };
        ops.push({ kind: "damage", x: at.x, y: at.y, amount: Number(p.amount) });
        break;
      }
      case "fizzle":
        ops.push({ kind: "puff", color: FIZZLE_GRAY });
        break;
      default:
        break;
    }
  }
  for (const [entityId, points] of paths) {
    if (points.length > 0) ops.push({ kind: "path", entityId, points });
  }
  return ops;
}

/** A fizzled cast renders as a gray puff even without trace events. */
export function fizzlePuff(): DrawOp {
  return { kind: "puff", color: FIZZLE_GRAY };
}

export function drawOps(ctx: CanvasRenderingContext2D, ops: DrawOp[], scale: number, height: number): void {
  const tx = (x: number) => x * scale;
  const ty = (y: number) => (height - y) * scale; // world y grows upward
  for (const op of ops) {
    switch (op.kind) {
      case "path": {
        if (op.points.length < 2) break;
        ctx.strokeStyle = "#E0D7FF";
        ctx.beginPath();
        ctx.moveTo(tx(op.points[0].x), ty(op.points[0].y));
        for (const point of op.points.slice(1)) ctx.lineTo(tx(point.x), ty(point.y));
        ctx.stroke();
        break;
      }
      case "burst":
        ctx.fillStyle = "#FF8844";
        ctx.beginPath();
        ctx.arc(tx(op.x), ty(op.y), 6, 0, Math.PI * 2);
        ctx.fill();
        break;
      case "teleport":
        ctx.strokeStyle = "#66FFEE";
        ctx.beginPath();
        ctx.arc(tx(op.x), ty(op.y), 9, 0, Math.PI * 2);
        ctx.stroke();
        break;
      case "puff":
        ctx.fillStyle = op.color;
        ctx.beginPath();
        ctx.arc(40, 40, 14, 0, Math.PI * 2);
        ctx.fill();
        break;
      case "damage":
        ctx.fillStyle = "#FF4444";
        ctx.fillText(op.amount.toFixed(1), tx(op.x), ty(op.y) - 8);
        break;
    }
  }
}
