/** Immediate-mode rendering of run-length frames.
 *
 * The invariant the tests pin down: every painted cell's color is
 * exactly palette[material]; the alpha channel modulates opacity only.
 */

import type { Frame } from "./types.js";

export interface PixelSurface {
  readonly width: number;
  readonly height: number;
  fillRect(x: number, y: number, w: number, h: number, color: string, alpha: number): void;
  clear(): void;
}

export interface CellPaint {
  color: string;
  alpha: number;
}

/** Headless surface recording per-cell paints; used by tests and by the
 * integration harness to assert frame fidelity without a DOM. */
export class MemorySurface implements PixelSurface {
  readonly cells: (CellPaint | null)[];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.cells = new Array(width * height).fill(null);
  }

  clear(): void {
    this.cells.fill(null);
  }

  fillRect(x: number, y: number, w: number, h: number, color: string, alpha: number): void {
    for (let dy = 0; dy < h; dy++) {
      for (let dx = 0; dx < w; dx++) {
        const px = x + dx;
        const py = y + dy;
        if (px >= 0 && px < this.width && py >= 0 && py < this.height) {
          this.cells[py * this.width + px] = { color, alpha };
        }
      }
    }
  }

  cellAt(x: number, y: number): CellPaint | null {
    return this.cells[y * this.width + x];
  }
}

/** Browser surface over a 2D canvas context, one cell = cellSize px. */
export class CanvasSurface implements PixelSurface {
  constructor(
    private readonly ctx: CanvasRenderingContext2D,
    readonly width: number,
    readonly height: number,
    private readonly cellSize: number,
  ) {}

  clear(): void {
    this.ctx.clearRect(0, 0, this.width * this.cellSize, this.height * this.cellSize);
  }

  fillRect(x: number, y: number, w: number, h: number, color: string, alpha: number): void {
    this.ctx.globalAlpha = alpha / 255;
    this.ctx.fillStyle = color;
    this.ctx.fillRect(x * this.cellSize, y * this.cellSize, w * this.cellSize, h * this.cellSize);
    this.ctx.globalAlpha = 1;
  }
}

export function renderFrame(frame: Frame, surface: PixelSurface): void {
  surface.clear();
  for (let y = 0; y < frame.rows.length; y++) {
    let x = 0;
    for (const [count, material, alpha] of frame.rows[y]) {
      const color = frame.palette[material];
      if (color === undefined) {
        throw new Error(`frame references material ${material} missing from palette`);
      }
      surface.fillRect(x, y, count, 1, color, alpha);
      x += count;
    }
  }
}

/** Every painted cell must carry exactly the palette color of its
 * material. Returns the number of cells checked. */
export function assertFrameFidelity(frame: Frame, surface: MemorySurface): number {
  let checked = 0;
  for (let y = 0; y < frame.rows.length; y++) {
    let x = 0;
    for (const [count, material] of frame.rows[y]) {
      for (let i = 0; i < count; i++) {
        const cell = surface.cellAt(x + i, y);
        if (cell === null) throw new Error(`cell (${x + i},${y}) was never painted`);
        if (cell.color !== frame.palette[material]) {
          throw new Error(
            `cell (${x + i},${y}) painted ${cell.color}, palette says ${frame.palette[material]}`,
          );
        }
        checked++;
      }
      x += count;
    }
  }
  return checked;
}
