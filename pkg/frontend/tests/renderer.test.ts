import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { MemorySurface, assertFrameFidelity, renderFrame } from "../src/renderer.js";
import type { Frame } from "../src/types.js";

const recorded: Frame[] = JSON.parse(
  readFileSync(new URL("./fixtures/recorded_frames.json", import.meta.url), "utf-8"),
);

describe("renderFrame", () => {
  it("paints every cell with exactly the palette color (recorded frames)", () => {
    for (const frame of recorded) {
      const surface = new MemorySurface(frame.width, frame.height);
      renderFrame(frame, surface);
      const checked = assertFrameFidelity(frame, surface);
      expect(checked).toBe(frame.width * frame.height);
    }
  });

  it("applies run lengths in order", () => {
    const frame: Frame = {
      width: 4,
      height: 2,
      palette: { air: "#000000", sand: "#C2B280" },
      rows: [
        [
          [2, "air", 255],
          [2, "sand", 255],
        ],
        [[4, "air", 10]],
      ],
    };
    const surface = new MemorySurface(4, 2);
    renderFrame(frame, surface);
    expect(surface.cellAt(0, 0)?.color).toBe("#000000");
    expect(surface.cellAt(2, 0)?.color).toBe("#C2B280");
    expect(surface.cellAt(3, 0)?.color).toBe("#C2B280");
    expect(surface.cellAt(1, 1)?.alpha).toBe(10);
  });

  it("rejects frames referencing unknown materials", () => {
    const frame: Frame = {
      width: 1,
      height: 1,
      palette: { air: "#000000" },
      rows: [[[1, "plasma", 255]]],
    };
    expect(() => renderFrame(frame, new MemorySurface(1, 1))).toThrow(/plasma/);
  });

  it("re-renders clear previous content", () => {
    const surface = new MemorySurface(2, 1);
    const frameA: Frame = { width: 2, height: 1, palette: { x: "#111111" }, rows: [[[2, "x", 255]]] };
    const frameB: Frame = { width: 2, height: 1, palette: { y: "#222222" }, rows: [[[2, "y", 255]]] };
    renderFrame(frameA, surface);
    renderFrame(frameB, surface);
    expect(surface.cellAt(0, 0)?.color).toBe("#222222");
  });
});
